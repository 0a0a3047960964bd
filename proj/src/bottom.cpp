#include "bkdv/bottom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

void require_scale(double v, const char* what, bool allow_zero) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 || (!allow_zero && v == 0.0)) {
        std::ostringstream os;
        os << what << " must lie in " << (allow_zero ? "[0, 1]" : "(0, 1]") << ", got " << v;
        throw InputError(os.str());
    }
}

}  // namespace

BottomProfile::BottomProfile(BottomFamily f, double ea, double ex, double et)
    : family_(f), eps_a_(ea), eps_x_(ex), eps_t_(et) {}

BottomProfile BottomProfile::zero() { return {BottomFamily::zero, 0.0, 0.0, 0.0}; }

BottomProfile BottomProfile::constant(double value) {
    if (!std::isfinite(value)) throw InputError("constant bottom must be finite");
    // The sign is carried by eps_a; derivatives vanish.
    return {BottomFamily::constant, value, 0.0, 0.0};
}

BottomProfile BottomProfile::static_bump(double eps_a, double eps_x) {
    require_scale(eps_a, "eps_a", false);
    require_scale(eps_x, "eps_x", false);
    return {BottomFamily::static_bump, eps_a, eps_x, 0.0};
}

BottomProfile BottomProfile::moving_ramp(double eps_a, double eps_x, double eps_t) {
    require_scale(eps_a, "eps_a", false);
    require_scale(eps_x, "eps_x", false);
    require_scale(eps_t, "eps_t", true);
    return {BottomFamily::moving_ramp, eps_a, eps_x, eps_t};
}

std::string BottomProfile::name() const {
    switch (family_) {
        case BottomFamily::zero: return "zero";
        case BottomFamily::constant: return "constant";
        case BottomFamily::static_bump: return "static-bump";
        case BottomFamily::moving_ramp: return "moving-ramp";
    }
    return "unknown";
}

double BottomProfile::b(double t, double x) const noexcept {
    switch (family_) {
        case BottomFamily::zero: return 0.0;
        case BottomFamily::constant: return eps_a_;
        case BottomFamily::static_bump: {
            const double z = eps_x_ * x;
            return eps_a_ * std::exp(-0.5 * z * z);
        }
        case BottomFamily::moving_ramp: return eps_a_ * std::tanh(eps_x_ * x - eps_t_ * t);
    }
    return 0.0;
}

double BottomProfile::b_x(double t, double x) const noexcept {
    switch (family_) {
        case BottomFamily::static_bump: {
            const double z = eps_x_ * x;
            return -eps_a_ * eps_x_ * z * std::exp(-0.5 * z * z);
        }
        case BottomFamily::moving_ramp: {
            const double s = 1.0 / std::cosh(eps_x_ * x - eps_t_ * t);
            return eps_a_ * eps_x_ * s * s;
        }
        default: return 0.0;
    }
}

double BottomProfile::b_xx(double t, double x) const noexcept {
    switch (family_) {
        case BottomFamily::static_bump: {
            const double z = eps_x_ * x;
            return eps_a_ * eps_x_ * eps_x_ * (z * z - 1.0) * std::exp(-0.5 * z * z);
        }
        case BottomFamily::moving_ramp: {
            const double arg = eps_x_ * x - eps_t_ * t;
            const double s = 1.0 / std::cosh(arg);
            return -2.0 * eps_a_ * eps_x_ * eps_x_ * s * s * std::tanh(arg);
        }
        default: return 0.0;
    }
}

double BottomProfile::b_t(double t, double x) const noexcept {
    if (family_ != BottomFamily::moving_ramp) return 0.0;
    const double s = 1.0 / std::cosh(eps_x_ * x - eps_t_ * t);
    return -eps_a_ * eps_t_ * s * s;
}

double BottomProfile::b_xt(double t, double x) const noexcept {
    if (family_ != BottomFamily::moving_ramp) return 0.0;
    const double arg = eps_x_ * x - eps_t_ * t;
    const double s = 1.0 / std::cosh(arg);
    return 2.0 * eps_a_ * eps_x_ * eps_t_ * s * s * std::tanh(arg);
}

GridFunction BottomProfile::sample(const Grid& g, double t) const {
    return GridFunction::sample(g, [&](double x) { return b(t, x); });
}
GridFunction BottomProfile::sample_x(const Grid& g, double t) const {
    return GridFunction::sample(g, [&](double x) { return b_x(t, x); });
}
GridFunction BottomProfile::sample_xx(const Grid& g, double t) const {
    return GridFunction::sample(g, [&](double x) { return b_xx(t, x); });
}
GridFunction BottomProfile::sample_t(const Grid& g, double t) const {
    return GridFunction::sample(g, [&](double x) { return b_t(t, x); });
}

double BottomProfile::scale_ratio(const Grid& g, double t_end, int times) const {
    if (family_ == BottomFamily::zero || family_ == BottomFamily::constant) return eps_a_ == 0.0 ? 0.0 : 1.0;
    double worst = 0.0;
    auto ratio = [&](double v, double s) {
        if (v == 0.0) return 0.0;
        return s > 0.0 ? std::abs(v) / s : INFINITY;
    };
    for (int i = 0; i < std::max(times, 1); ++i) {
        const double t = times > 1 ? t_end * i / (times - 1.0) : 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double x = g.x(j);
            worst = std::max({worst, ratio(b(t, x), eps_a_), ratio(b_x(t, x), eps_a_ * eps_x_),
                              ratio(b_xx(t, x), eps_a_ * eps_x_ * eps_x_), ratio(b_t(t, x), eps_a_ * eps_t_),
                              ratio(b_xt(t, x), eps_a_ * eps_t_ * eps_x_)});
        }
    }
    return worst;
}

}  // namespace bkdv
