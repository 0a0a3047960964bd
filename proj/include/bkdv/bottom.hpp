#pragma once

#include <string>

#include "bkdv/grid.hpp"

namespace bkdv {

enum class BottomFamily { zero, constant, static_bump, moving_ramp };

/// b(t,x) with exact derivatives and declared scales (ε_a, ε_x, ε_t).
///   static_bump:  ε_a exp(-(ε_x x)²/2)
///   moving_ramp:  ε_a tanh(ε_x (x - v t)),  v = ε_t/ε_x
class BottomProfile {
public:
    static BottomProfile zero();
    static BottomProfile constant(double value);
    static BottomProfile static_bump(double eps_a, double eps_x);
    static BottomProfile moving_ramp(double eps_a, double eps_x, double eps_t);

    BottomFamily family() const noexcept { return family_; }
    std::string name() const;
    double eps_a() const noexcept { return eps_a_; }
    double eps_x() const noexcept { return eps_x_; }
    double eps_t() const noexcept { return eps_t_; }
    bool is_static() const noexcept { return family_ != BottomFamily::moving_ramp || eps_t_ == 0.0; }

    double b(double t, double x) const noexcept;
    double b_x(double t, double x) const noexcept;
    double b_xx(double t, double x) const noexcept;
    double b_t(double t, double x) const noexcept;
    double b_xt(double t, double x) const noexcept;

    GridFunction sample(const Grid& g, double t) const;
    GridFunction sample_x(const Grid& g, double t) const;
    GridFunction sample_xx(const Grid& g, double t) const;
    GridFunction sample_t(const Grid& g, double t) const;

    /// Largest |∂_t^n ∂_x^m b| / (ε_a ε_t^n ε_x^m) over n + m <= 2, n <= 1, sampled on
    /// the grid points at `times` equally spaced instants in [0, t_end]. Values <= 1 conform.
    double scale_ratio(const Grid& g, double t_end, int times = 11) const;

private:
    BottomProfile(BottomFamily f, double ea, double ex, double et);
    BottomFamily family_;
    double eps_a_, eps_x_, eps_t_;
};

}  // namespace bkdv
