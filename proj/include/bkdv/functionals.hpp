#pragma once

#include <string>
#include <vector>

#include "bkdv/bottom.hpp"
#include "bkdv/grid.hpp"
#include "bkdv/nonlinearity.hpp"

namespace bkdv {

/// ∫ ½u_x² - F(u) + ½ b(t,x) u².
double hamiltonian(const GridFunction& u, const BottomProfile& b, double t, const Nonlinearity& nl);
/// ½||u||².
double momentum(const GridFunction& u);
/// ∫u.
double mass(const GridFunction& u);
/// ½∫ b u².
double potential_momentum(const GridFunction& u, const BottomProfile& b, double t);

/// ∫ ½u_x² + ½c u² - F(u).
double lagrangian(const GridFunction& u, double c, const Nonlinearity& nl);
/// L² gradient -u'' + cu - f(u).
GridFunction lagrangian_gradient(const GridFunction& u, double c, const Nonlinearity& nl);

/// ⟨(-∂² + c - f'(Q))ξ, ξ⟩ evaluated in weak form.
double hessian_form(const GridFunction& xi, const GridFunction& q, double c, const Nonlinearity& nl);

struct Remainders {
    double n;            ///< -∫ F(Q+ξ) - F(Q) - f(Q)ξ - ½f'(Q)ξ²
    GridFunction dn;     ///< -(f(Q+ξ) - f(Q) - f'(Q)ξ)
};
/// Cubic and quadratic Taylor remainders. Values are returned for any ξ; the bounds
/// they satisfy are only meaningful for ||ξ||_{H¹} <= 1.
Remainders remainders(const GridFunction& xi, const GridFunction& q, const Nonlinearity& nl);

struct LyapunovValue {
    double value;       ///< Λ(Q+ξ) - Λ(Q) + b_x(t,a) ⟨(x-a)Q, ξ⟩
    double quadratic;   ///< ½⟨L_Q ξ, ξ⟩ + N(ξ) + b_x(t,a) ⟨(x-a)Q, ξ⟩
};
LyapunovValue lyapunov(const GridFunction& q, const GridFunction& xi, double c, double a,
                       const BottomProfile& b, double t, const Nonlinearity& nl);

/// Diagnostics for a (t, u) series sampled at a uniform stride.
struct RateReport {
    double mass_drift = 0.0;         ///< max |∫u(t) - ∫u(0)|
    double hamiltonian_drift = 0.0;  ///< max |H_b(t) - H_b(0)|
    double momentum_drift = 0.0;     ///< max |P(t) - P(0)|
    /// max over interior samples of |d/dt X - rate(X)|, divided by max |rate(X)|
    /// (or by max |X| when the rate vanishes identically).
    double hamiltonian_rate = 0.0;
    double momentum_rate = 0.0;
    double potential_rate = 0.0;
    double hamiltonian_rate_abs = 0.0;
    double momentum_rate_abs = 0.0;
    double potential_rate_abs = 0.0;
    /// Largest of the three relative residuals at each sample; NaN where no stencil fits.
    std::vector<double> per_sample;
    std::string to_text() const;
};

/// Compares centered time differences of H_b, P and ½∫bu² against their exact rates.
/// Needs at least 3 equally spaced snapshots; uses 5-point stencils when 5 or more exist.
RateReport rate_identities(const std::vector<double>& times, const std::vector<GridFunction>& states,
                           const BottomProfile& b, const Nonlinearity& nl);

/// Exact rates at one instant.
double hamiltonian_rate(const GridFunction& u, const BottomProfile& b, double t);
double momentum_rate(const GridFunction& u, const BottomProfile& b, double t);
double potential_momentum_rate(const GridFunction& u, const BottomProfile& b, double t, const Nonlinearity& nl);

}  // namespace bkdv
