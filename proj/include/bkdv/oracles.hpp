#pragma once

#include <string>
#include <vector>

namespace bkdv {

/// A reference value computed two independent ways.
struct OracleRecord {
    std::string name;
    std::string inputs;
    std::string method_a;
    double value_a = 0.0;
    std::string method_b;
    double value_b = 0.0;
    std::string resolution;
    double tolerance = 0.0;    ///< allowed |value_a - value_b|
    bool agree() const noexcept;
};

/// High-resolution references: soliton integrals, δ and δ', H(Q₁), λ₁ of the Hessian,
/// the p=2 reduced-equation coefficients, the line-versus-Fourier table for ∂_α⁻¹,
/// and refined-step PDE/ODE reruns. Slow by design.
std::vector<OracleRecord> run_all_oracles(int threads = 1);

/// Flat '|'-separated table with a header line.
std::string format_records(const std::vector<OracleRecord>& records);

}  // namespace bkdv
