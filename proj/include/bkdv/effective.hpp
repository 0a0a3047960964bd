#pragma once

#include <vector>

#include "bkdv/bottom.hpp"
#include "bkdv/modulation.hpp"
#include "bkdv/soliton.hpp"

namespace bkdv {

/// leading: (ȧ, ċ) = (c - b(t,a), 0).
/// corrected: adds b_x(t,a) δ(c)/δ'(c)² (-½(∫ζ^n)², δ'(c)).
enum class EffectiveForm { leading, corrected };

struct EffectiveState {
    double t = 0.0;
    double a = 0.0;
    double c = 1.0;
};

/// Right-hand side (ȧ, ċ). The bottom is evaluated at a wrapped into the periodic box.
/// Throws StabilityError when δ'(c) <= 0.
std::pair<double, double> effective_rhs(const EffectiveState& s, const BottomProfile& b, const SolitonFamily& fam,
                                        EffectiveForm form);

struct EffectiveRun {
    std::vector<EffectiveState> states;
    bool interval_exit = false;
    double exit_time = 0.0;
};

struct EffectiveOptions {
    double dt = 1e-2;
    int output_stride = 1;   ///< steps between stored states
    EffectiveForm form = EffectiveForm::corrected;
    SpeedInterval interval{};
};

/// Classical RK4 from s0 to t_end. Stops (with interval_exit set) at the first step whose
/// speed leaves the interval. Rejects dt > 1e-2 min(1, 1/(ε_a ε_x)).
EffectiveRun integrate_effective(const EffectiveState& s0, const BottomProfile& b, const SolitonFamily& fam,
                                 double t_end, const EffectiveOptions& opts = {});

}  // namespace bkdv
