#include "bkdv/effective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

std::pair<double, double> effective_rhs(const EffectiveState& s, const BottomProfile& b, const SolitonFamily& fam,
                                        EffectiveForm form) {
    if (!(s.c > 0.0)) throw InputError("effective speed must be positive");
    const double x = fam.grid().wrap(s.a);
    double adot = s.c - b.b(s.t, x);
    double cdot = 0.0;
    if (form == EffectiveForm::corrected) {
        const double bx = b.b_x(s.t, x);
        const double dp = fam.delta_prime(s.c);
        if (!(dp > 0.0)) {
            std::ostringstream os;
            os << "delta'(" << s.c << ") = " << dp << " <= 0: the solitary wave is unstable";
            throw StabilityError(os.str());
        }
        if (bx != 0.0) {
            const double w = bx * fam.delta(s.c) / (dp * dp);
            const double iz = fam.integral_scaling_tangent(s.c);
            adot += -0.5 * iz * iz * w;
            cdot += dp * w;
        }
    }
    return {adot, cdot};
}

EffectiveRun integrate_effective(const EffectiveState& s0, const BottomProfile& b, const SolitonFamily& fam,
                                 double t_end, const EffectiveOptions& opts) {
    if (!(opts.dt > 0.0)) throw InputError("effective dt must be positive");
    if (opts.output_stride < 1) throw InputError("effective output_stride must be at least 1");
    const double scale = b.eps_a() * b.eps_x();
    const double dt_max = 1e-2 * std::min(1.0, scale > 0.0 ? 1.0 / scale : 1.0);
    if (opts.dt > dt_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "effective dt " << opts.dt << " exceeds " << dt_max;
        throw InputError(os.str());
    }
    if (!opts.interval.contains(s0.c)) throw InputError("initial speed lies outside the interval");
    EffectiveRun run;
    run.states.push_back(s0);
    const auto steps = static_cast<long long>(std::llround((t_end - s0.t) / opts.dt));
    EffectiveState s = s0;
    auto f = [&](double t, double a, double c) { return effective_rhs({t, a, c}, b, fam, opts.form); };
    for (long long k = 1; k <= steps; ++k) {
        const double h = opts.dt;
        const auto k1 = f(s.t, s.a, s.c);
        const auto k2 = f(s.t + 0.5 * h, s.a + 0.5 * h * k1.first, s.c + 0.5 * h * k1.second);
        const auto k3 = f(s.t + 0.5 * h, s.a + 0.5 * h * k2.first, s.c + 0.5 * h * k2.second);
        const auto k4 = f(s.t + h, s.a + h * k3.first, s.c + h * k3.second);
        s.a += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        s.c += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
        s.t = s0.t + static_cast<double>(k) * h;
        if (!opts.interval.contains(s.c)) {
            run.interval_exit = true;
            run.exit_time = s.t;
            run.states.push_back(s);
            return run;
        }
        if (k % opts.output_stride == 0 || k == steps) run.states.push_back(s);
    }
    return run;
}

}  // namespace bkdv
