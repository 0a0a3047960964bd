#pragma once

#include <vector>

#include "bkdv/grid.hpp"
#include "bkdv/nonlinearity.hpp"

namespace bkdv {

/// A point (c, a) of the soliton manifold together with the regularization α.
struct SolitonParams {
    double c = 1.0;
    double a = 0.0;
    double alpha = 0.1;
};

/// Solitary waves -Q'' + cQ - f(Q) = 0 on a fixed grid, with their c-derivatives.
/// Power nonlinearities use closed forms; other polynomials go through a renormalized
/// fixed-point iteration and centered differences in c.
class SolitonFamily {
public:
    SolitonFamily(Nonlinearity nl, Grid grid);

    const Nonlinearity& nonlinearity() const noexcept { return nl_; }
    const Grid& grid() const noexcept { return grid_; }

    GridFunction profile(double c, double a) const;
    /// ζ^tr = -∂_x Q (spectral derivative).
    GridFunction translation_tangent(double c, double a) const;
    /// ζ^n = ∂_c Q.
    GridFunction scaling_tangent(double c, double a) const;
    /// ∂_c² Q.
    GridFunction scaling_tangent_dc(double c, double a) const;

    double delta(double c) const;
    double delta_prime(double c) const;
    /// ∫ ζ^n over the line.
    double integral_scaling_tangent(double c) const;
    /// Peak amplitude Q_c(a).
    double peak(double c) const;
    /// Speed whose profile peaks at the given height.
    double speed_from_peak(double height) const;
    /// |Q_c| at distance L/2 from the centre, relative to the peak.
    double tail_ratio(double c) const;

    /// Max-norm residual of -Q'' + cQ - f(Q) on the grid.
    double residual(const GridFunction& q, double c) const;

private:
    GridFunction centred_numeric(double c) const;
    GridFunction closed_form(double c, double a, int order) const;

    Nonlinearity nl_;
    Grid grid_;
};

/// Closed-form constants of the power soliton q = A sech^{2/(p-1)}((p-1)s/2) at c = 1.
struct PowerConstants {
    double amplitude;      ///< A = ((p+1)/2)^{1/(p-1)}
    double width_rate;     ///< κ = (p-1)/2
    double l2_squared;     ///< ||q||²
    double integral;       ///< ∫q
};
PowerConstants power_constants(int p);

/// (δ(c), δ'(c)). Throws StabilityError when δ'(c) <= 0.
std::pair<double, double> delta_and_derivative(double c, const Nonlinearity& nl, const Grid& grid);

struct GeneralProfileOptions {
    double tol = 1e-10;
    int max_iter = 500;
};

/// Even positive solution centred at x = 0 for any admissible polynomial f.
/// Throws InputError when the existence conditions fail and ConvergenceError on stagnation.
GridFunction construct_general(double c, const Nonlinearity& nl, const Grid& grid,
                               const GeneralProfileOptions& opts = {});

}  // namespace bkdv
