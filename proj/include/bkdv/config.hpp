#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bkdv/bottom.hpp"
#include "bkdv/effective.hpp"
#include "bkdv/modulation.hpp"
#include "bkdv/nonlinearity.hpp"
#include "bkdv/pde_solver.hpp"

namespace bkdv {

struct BottomConfig {
    std::string family = "zero";   ///< zero | constant | static-bump | moving-ramp
    double eps_a = 0.0, eps_x = 0.0, eps_t = 0.0;
    double value = 0.0;            ///< level of the constant family
};

struct ModulationConfig {
    std::optional<double> alpha;   ///< explicit α; otherwise α = (ε_a ε_x)^s
    std::optional<double> s;
    double tube_radius = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-12;
    SpeedInterval interval{};
};

struct InitialConfig {
    double c0 = 1.0;
    double a0 = 0.0;
    double perturbation_h1 = 0.0;  ///< H¹ norm of the added noise
    double perturbation_kmax = 2.0;  ///< band limit of the noise (angular wavenumber)
    double perturbation_width = 10.0;  ///< Gaussian envelope width of the noise
};

/// Pinned tolerances for compare; unset entries are reported but not judged.
struct CompareConfig {
    double window_constant = 10.0;   ///< T₁ = window_constant / (ε_t + ε_x + (ε_a ε_x)^s), capped by t_end
    std::optional<double> xi_bound;  ///< K with sup ||ξ||_{H¹} <= K (ε_a ε_x)^s
    std::optional<double> param_bound;  ///< K_ac with max |Δa|, |Δc| <= K_ac (ε_a ε_x)^{2s} T
    std::optional<double> good_bound;   ///< K_g with sup ||ξ_g|| / sup ||ξ|| <= K_g (ε_a ε_x)^{s/2}
    std::optional<double> a_tolerance;  ///< absolute bound on max |a_PDE - a_eff|
    std::optional<double> c_tolerance;
    EffectiveForm form = EffectiveForm::corrected;
    double effective_dt = 1e-2;
    bool split = true;                  ///< compute the anisotropic split at every snapshot
};

struct VerifyConfig {
    std::vector<double> alphas{0.1, 0.05, 0.025};
    int c_points = 9;
    double L = 400.0;                  ///< grid for the α-dependent suites
    std::size_t N = 4096;
    double spectral_L = 80.0;          ///< grid for the Hessian spectrum
    std::size_t spectral_N = 512;
    std::size_t oracle_N = 2048;       ///< dense reference for λ₁
    std::vector<double> sigma_band{1.5, 6.5};  ///< [C₁, C₂] for σ/α
    double eta_perp_bound = 3.0;       ///< bound on ||η_⊥||_{H¹} α^{-1/2}
    double omega_constant = 4.0;       ///< K in ||Ω⁻¹ - leading|| <= K α
    int random_trials = 100;
    std::vector<int> remainder_powers{3, 4};
};

struct ExperimentConfig {
    std::string nonlinearity = "power:2";
    double L = 80.0;
    std::size_t N = 512;
    SolverConfig solver{};
    BottomConfig bottom{};
    ModulationConfig modulation{};
    InitialConfig initial{};
    CompareConfig compare{};
    VerifyConfig verify{};
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    Nonlinearity make_nonlinearity() const;
    Grid make_grid() const;
    BottomProfile make_bottom() const;
    /// Explicit α, or (ε_a ε_x)^s with 0 < s < ½.
    double alpha() const;
    /// (ε_a ε_x)^s, or NaN when no exponent is configured.
    double epsilon_scale() const;
};

/// Parses YAML text; unknown keys and type mismatches throw InputError naming the key path.
ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);
/// Canonical YAML for the fully resolved configuration.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace bkdv
