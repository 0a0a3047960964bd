#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bkdv/config.hpp"
#include "bkdv/effective.hpp"
#include "bkdv/modulation.hpp"

namespace bkdv {

/// One named pass/fail line of a report.
struct CheckLine {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string format_checks(const std::vector<CheckLine>& checks);

struct VerifyReport {
    std::vector<CheckLine> checks;
    double seconds = 0.0;
    bool all_pass() const noexcept;
    std::string to_text() const;
};

enum class Suite { stability, regularized_inverse, symplectic_matrix, spectrum, coercivity, remainders, decomposition };

/// One property suite at the configured speed grid and alpha sweep.
std::vector<CheckLine> run_suite(Suite suite, const ExperimentConfig& cfg, int threads = 1);

/// Property suites for the regularized inverse, the symplectic matrix, the Hessian spectrum,
/// constrained coercivity, the nonlinear remainders and the decomposition. A failing
/// stability or admissibility gate is reported as a failed line, not thrown.
VerifyReport cmd_verify(const ExperimentConfig& cfg, int threads = 1);

/// Smooth noise: random Fourier coefficients up to |k| <= kmax under a Gaussian envelope of
/// the given width, scaled to the requested H¹ norm. Depends only on (grid, seed, kmax, width).
GridFunction band_limited_noise(const Grid& g, std::uint64_t seed, double kmax, double width, double h1_norm);

struct ConservationRow {
    double t = 0.0, hamiltonian = 0.0, momentum = 0.0, mass = 0.0, lyapunov = 0.0;
    double residual = 0.0;   ///< largest relative rate-identity residual at this sample (NaN at the ends)
};

struct ComparisonReport {
    double alpha = 0.0;
    double epsilon_scale = 0.0;    ///< (ε_a ε_x)^s, NaN without an exponent
    double window = 0.0;           ///< T₁ actually integrated
    bool tube_exit = false;
    double exit_time = 0.0;        ///< T₀ when the run left the tube or the interval
    std::string exit_reason;
    double max_da = 0.0, max_dc = 0.0;
    double sup_xi = 0.0, sup_xig = 0.0, sup_xib = 0.0;
    int max_iterations = 0;        ///< Newton iterations after the first snapshot
    double mass_drift = 0.0, hamiltonian_drift = 0.0, momentum_drift = 0.0;
    double rate_residual = 0.0;    ///< worst of the three relative rate residuals
    double seconds = 0.0;
    std::vector<CheckLine> checks;
    bool pass() const noexcept;
    std::string to_text() const;
};

struct CompareResult {
    ComparisonReport report;
    std::vector<ModulationState> track;
    EffectiveRun effective;
    std::vector<ConservationRow> conservation;
};

/// Evolves the PDE, tracks (a, c, ξ), integrates the effective ODE from the extracted
/// (a₀, c₀) and judges the configured tolerances. Writes modulation.csv, effective.csv,
/// conservation.csv and summary.txt into out_dir unless it is empty.
CompareResult cmd_compare(const ExperimentConfig& cfg, const std::string& out_dir);

/// Runs cmd_compare for each value of one axis (alpha, s, N, eps_a, eps_x, eps_t, c0) in
/// per-run subdirectories and writes sweep.csv. Failures are recorded, not propagated.
/// Returns the number of failed runs.
int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis, const std::vector<double>& values,
              const std::string& out_dir, int threads = 1);

/// x, Q, ζ^tr, ζ^n, ∂_α⁻¹ζ^n at (c0, a0) as profile.csv.
void profile_dump(const ExperimentConfig& cfg, const std::string& out_dir);

/// Shortest round-trip decimal form; the CSV writers use it so files are byte-reproducible.
std::string format_number(double v);

}  // namespace bkdv
