#pragma once

#include <functional>
#include <map>
#include <string>

#include "bkdv/grid.hpp"

namespace bkdv {

/// Periodic antiderivative vanishing at x = -L/2. Requires |∫f| <= 1e-10 ||f||_1.
GridFunction apply_K(const GridFunction& f);

/// Antiderivative x -> ∫_{-L/2}^x f for arbitrary mean (not periodic when ∫f != 0).
GridFunction line_antiderivative(const GridFunction& f);

/// (∂_x + α)^{-1} as the Fourier multiplier 1/(ik + α).
GridFunction apply_reg_inverse(const GridFunction& f, double alpha);

/// Direct evaluation of ∫_{-L/2}^x φ(y) e^{α(y-x)} dy at the grid points by
/// Gauss-Legendre quadrature on each cell. Used as an independent reference.
GridFunction reg_inverse_line(const std::function<double(double)>& phi, const Grid& grid, double alpha);

/// Outcome of the six-clause check for (∂_x + α)^{-1}.
struct InverseClauseReport {
    bool clause[6] = {false, false, false, false, false, false};
    /// Measured quantities, keyed by short names ("c3_constant", "c6_remainder", ...).
    std::map<std::string, double> values;

    bool all_pass() const noexcept;
    /// Flat "key = value" block, one entry per line.
    std::string to_text() const;
};

struct InverseClauseOptions {
    double commutation_tol = 1e-9;
    /// Floor added to the remainder-doubling test of clause 6.
    double remainder_floor = 1e-6;
    /// Largest allowed |φ| on the outer tenth of the box, relative to max|φ|.
    double tail_tol = 1e-10;
};

/// Evaluates every clause for the pair (φ, ψ). Throws InputError when the fields are
/// not negligible near the box edge or when αL < 8.
InverseClauseReport check_inverse_clauses(const GridFunction& phi, const GridFunction& psi, double alpha,
                            const InverseClauseOptions& opts = {});

}  // namespace bkdv
