#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "bkdv/hessian.hpp"
#include "bkdv/soliton.hpp"

namespace bkdv {

/// Compact speed interval I.
struct SpeedInterval {
    double lo = 0.5;
    double hi = 2.0;
    bool contains(double c) const noexcept { return c >= lo && c <= hi; }
};

/// inf over I of δ'(c), sampled at `points` equally spaced speeds.
double infimum_delta_prime(const SolitonFamily& fam, const SpeedInterval& I, int points = 9);

struct OmegaMatrix {
    Eigen::Matrix2d matrix;           ///< [[0, -⟨ζ^n,Q⟩], [⟨Q,∂_x∂_α⁻¹ζ^n⟩, ⟨ζ^n,∂_α⁻¹ζ^n⟩]]
    double determinant = 0.0;
    Eigen::Matrix2d inverse;
    Eigen::Matrix2d leading_inverse;  ///< δ'^{-2} [[½(∫ζ^n)², δ'], [-δ', 0]]
    double leading_error = 0.0;       ///< spectral norm of inverse - leading_inverse
    double determinant_floor = 0.0;   ///< ½ (inf_I δ')²
};

/// Throws AdmissibilityError when det Ω falls below ½(inf_I δ')².
OmegaMatrix omega_matrix(const SolitonFamily& fam, const SolitonParams& p, const SpeedInterval& I = {});

/// Orthogonality conditions F(a, c) = (⟨Q - u, -Q⟩, ⟨Q - u, ∂_α⁻¹ζ^n⟩).
Eigen::Vector2d modulation_residual(const GridFunction& u, const SolitonFamily& fam, double alpha, double a, double c);
/// ∂F/∂(a, c), equal to Ω plus the terms that vanish when u = Q_{ca}.
Eigen::Matrix2d modulation_jacobian(const GridFunction& u, const SolitonFamily& fam, double alpha, double a, double c);

struct ModulationState {
    double t = 0.0;
    double a = 0.0;
    double c = 0.0;
    GridFunction xi;
    GridFunction xi_b;
    GridFunction xi_g;
    double xi_h1 = 0.0, xib_h1 = 0.0, xig_h1 = 0.0;
    double res1 = 0.0, res2 = 0.0;    ///< |⟨ξ, g_i⟩| / ||g_i|| for g = (Q, ∂_α⁻¹ζ^n)
    int iterations = 0;
    double sigma = 0.0;               ///< constrained Hessian minimum at (c, a); 0 when the split is skipped
    std::optional<GridFunction> eta;  ///< minimizer used for the split
};

struct DecomposeOptions {
    double tol = 1e-12;               ///< on max(res1, res2)
    int max_iter = 50;
    /// H¹ radius of the admissible tube; NaN selects 0.1 α^{1/2}.
    double tube_radius = std::numeric_limits<double>::quiet_NaN();
    SpeedInterval interval{};
    bool compute_split = true;
    std::optional<GridFunction> eta_guess;
};

/// Initial (a, c): location of max|u| refined by a parabola, speed from the peak height.
std::pair<double, double> peak_guess(const GridFunction& u, const SolitonFamily& fam);

/// Damped Newton solve of the orthogonality conditions. Throws TubeExitError on
/// non-convergence or when ||ξ||_{H¹} exceeds the tube radius, IntervalExitError when c leaves I.
ModulationState decompose(const GridFunction& u, const SolitonFamily& fam, double alpha,
                          std::optional<std::pair<double, double>> guess = std::nullopt,
                          const DecomposeOptions& opts = {});

enum class TrackExit { none, tube, interval };

struct TrackResult {
    std::vector<ModulationState> states;   ///< decomposed prefix of the series
    TrackExit exit = TrackExit::none;
    double exit_time = 0.0;                ///< first time that failed to decompose
    std::string exit_reason;
};

/// As track, but stops at the first failure and returns the prefix.
TrackResult track_until_exit(const std::vector<double>& times, const std::vector<GridFunction>& states,
                             const SolitonFamily& fam, double alpha, const DecomposeOptions& opts = {});

/// Sequential decomposition along a trajectory, warm-started by linear extrapolation of (a, c),
/// with a lifted continuously across the periodic seam. Errors carry the failing time.
std::vector<ModulationState> track(const std::vector<double>& times, const std::vector<GridFunction>& states,
                                   const SolitonFamily& fam, double alpha, const DecomposeOptions& opts = {});

}  // namespace bkdv
