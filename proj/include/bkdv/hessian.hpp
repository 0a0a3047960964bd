#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bkdv/eigensolvers.hpp"
#include "bkdv/soliton.hpp"

namespace bkdv {

/// L_Q v = -v'' + (c - f'(Q)) v.
GridFunction apply_hessian(const GridFunction& v, const GridFunction& q, double c, const Nonlinearity& nl);
GridFunction apply_hessian(const GridFunction& v, const SolitonFamily& fam, const SolitonParams& p);

/// L_Q on blocks of Euclidean column vectors.
BlockOperator hessian_block(const GridFunction& q, double c, const Nonlinearity& nl);
/// (-∂² + c)^{-1} on blocks.
BlockOperator shifted_laplacian_inverse(const Grid& g, double c);

enum class EigenMethod { automatic, dense, iterative };

struct SpectralReport {
    std::vector<double> eigenvalues;          ///< ascending
    std::vector<GridFunction> eigenvectors;   ///< unit L² norm
    std::vector<bool> localized;              ///< mass fraction within L/4 of the centre >= 0.9
    int negative_count = 0;
    double nullspace_residual = 0.0;          ///< ||L_Q ζ^tr||₂ / ||ζ^tr||₂
    double zero_mode_cosine = 0.0;            ///< |cos| between the near-zero eigenvector and ζ^tr
    double essential_onset = 0.0;             ///< first non-localized eigenvalue (NaN if none)
    double min_gap = 0.0;                     ///< smallest gap among localized eigenvalues
    double max_residual = 0.0;
};

struct SpectrumOptions {
    EigenMethod method = EigenMethod::automatic;
    double tol = 1e-9;
    /// |λ| below this counts as the zero mode.
    double zero_tol = 1e-6;
};

/// Lowest k (<= 10) eigenpairs of L_Q at (c, a).
SpectralReport spectrum(const SolitonFamily& fam, double c, double a, int k, const SpectrumOptions& opts = {});

struct CoercivityResult {
    CoercivityResult(GridFunction profile, GridFunction reg)
        : eta(GridFunction::zeros(profile.grid())), eta_perp(eta), q(std::move(profile)), reg_scaling(std::move(reg)) {}

    double sigma = 0.0;           ///< lowest constrained eigenvalue
    double second = 0.0;          ///< next constrained eigenvalue
    GridFunction eta;             ///< minimizer, ||η||₂ = 1, sign fixed by γ > 0
    double gamma = 0.0;           ///< η = γ ζ^tr + η_⊥ with η_⊥ ⊥ ζ^tr
    GridFunction eta_perp;
    double beta = 0.0, beta1 = 0.0, beta2 = 0.0;  ///< L_Q η = β η + β₁ Q + β₂ ∂_α⁻¹ζ^n
    double euler_lagrange_residual = 0.0;         ///< L² norm of the residual of that equation
    double constraint_residual = 0.0;             ///< max |⟨η, g⟩| / ||g|| over the two constraints
    double potential_bound = 0.0;                 ///< K = max(0, sup (f'(Q) - c))
    double good_constant = 0.0;                   ///< C₃ = λ₂ / (λ₂ + K + 1)
    double bad_constant = 0.0;                    ///< σ / ||η||²_{H¹}
    GridFunction q;                               ///< Q_{ca}
    GridFunction reg_scaling;                     ///< ∂_α⁻¹ ζ^n
};

struct CoercivityOptions {
    EigenMethod method = EigenMethod::automatic;
    double tol = 1e-10;
    /// Starting guess for η (for example the minimizer at a nearby parameter).
    std::optional<GridFunction> initial;
};

/// Minimizes ⟨L_Q ξ, ξ⟩ over unit ξ orthogonal to Q_{ca} and ∂_α⁻¹ζ^n.
/// Throws StabilityError if σ <= 0 and AdmissibilityError if σ reaches c.
CoercivityResult coercivity(const SolitonFamily& fam, const SolitonParams& p, const CoercivityOptions& opts = {});

/// ξ_b = ⟨ξ,η⟩η and ξ_g = ξ - ξ_b.
std::pair<GridFunction, GridFunction> anisotropic_split(const GridFunction& xi, const GridFunction& eta);

/// Projection of ξ onto the orthogonal complement of {Q, ∂_α⁻¹ζ^n}.
GridFunction project_admissible(const GridFunction& xi, const CoercivityResult& r);

/// Trial function λ₁ζ^tr + λ₂∂_α⁻¹ζ^n + λ₃Q with unit norm orthogonal to Q and ∂_α⁻¹ζ^n.
struct TrialBound {
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
    double rayleigh = 0.0;   ///< ⟨L_Q ξ, ξ⟩ for the normalized trial function
};
TrialBound trial_function_bound(const SolitonFamily& fam, const SolitonParams& p);

}  // namespace bkdv
