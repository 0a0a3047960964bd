#include "bkdv/soliton.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

void require_speed(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("soliton speed must be positive");
}

// ∫ sech^β(κs) ds over the line.
double sech_power_integral(double beta, double kappa) {
    return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(0.5 * beta) - std::lgamma(0.5 * (beta + 1.0))) / kappa;
}

// G(u) = F(u) - c u²/2; the soliton peak is its first positive root.
double turning_point(const Nonlinearity& nl, double c) {
    auto G = [&](double u) { return nl.F(u) - 0.5 * c * u * u; };
    double lo = 1e-8;
    if (G(lo) >= 0.0) throw InputError("no solitary wave: F(u) >= c u^2/2 near u = 0");
    double hi = lo;
    while (G(hi) < 0.0) {
        lo = hi;
        hi *= 1.25;
        if (hi > 1e8) {
            std::ostringstream os;
            os << "no solitary wave for c = " << c << ": F(u) - c u^2/2 stays negative for u > 0";
            throw InputError(os.str());
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (G(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

int lowest_degree(const Nonlinearity& nl) {
    const auto& c = nl.coefficients();
    for (std::size_t n = 2; n < c.size(); ++n) {
        if (c[n] != 0.0) return static_cast<int>(n);
    }
    return nl.degree();
}

// Reflect about x = 0, which is grid index N/2.
GridFunction symmetrize(const GridFunction& u) {
    const std::size_t n = u.size();
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = (n - j) % n;
        v[j] = 0.5 * (u[j] + u[r]);
    }
    return make_unchecked(u.grid(), std::move(v));
}

}  // namespace

PowerConstants power_constants(int p) {
    if (p < 2) throw InputError("power nonlinearity requires p >= 2");
    const double pm1 = p - 1.0;
    PowerConstants k{};
    k.amplitude = std::pow(0.5 * (p + 1.0), 1.0 / pm1);
    k.width_rate = 0.5 * pm1;
    k.l2_squared = k.amplitude * k.amplitude * sech_power_integral(4.0 / pm1, k.width_rate);
    k.integral = k.amplitude * sech_power_integral(2.0 / pm1, k.width_rate);
    return k;
}

SolitonFamily::SolitonFamily(Nonlinearity nl, Grid grid) : nl_(std::move(nl)), grid_(grid) {
    if (nl_.degree() < 2) throw InputError("the zero nonlinearity has no solitary waves");
}

GridFunction SolitonFamily::closed_form(double c, double a, int order) const {
    const int p = *nl_.power_exponent();
    const auto k = power_constants(p);
    const double m = 1.0 / (p - 1.0);
    const double n = 2.0 / (p - 1.0);
    const double rc = std::sqrt(c);
    std::vector<double> v(grid_.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double y = grid_.wrap(grid_.x(j) - a);
        const double s = rc * y;
        const double sech = 1.0 / std::cosh(k.width_rate * s);
        const double q = k.amplitude * std::pow(sech, n);
        const double dq = -q * std::tanh(k.width_rate * s);
        switch (order) {
            case 0:
                v[j] = std::pow(c, m) * q;
                break;
            case 1:
                v[j] = m * std::pow(c, m - 1.0) * q + std::pow(c, m - 0.5) * 0.5 * y * dq;
                break;
            default: {
                const double d2q = q - std::pow(q, p);
                v[j] = m * (m - 1.0) * std::pow(c, m - 2.0) * q +
                       (2.0 * m - 0.5) * std::pow(c, m - 1.5) * 0.5 * y * dq +
                       std::pow(c, m - 1.0) * 0.25 * y * y * d2q;
            }
        }
    }
    return GridFunction(grid_, std::move(v));
}

GridFunction SolitonFamily::centred_numeric(double c) const {
    GeneralProfileOptions opts;
    opts.tol = 1e-12;
    opts.max_iter = 2000;
    return construct_general(c, nl_, grid_, opts);
}

GridFunction SolitonFamily::profile(double c, double a) const {
    require_speed(c);
    if (nl_.is_power()) return closed_form(c, a, 0);
    return shift(centred_numeric(c), a);
}

GridFunction SolitonFamily::translation_tangent(double c, double a) const {
    return -derivative(profile(c, a), 1);
}

GridFunction SolitonFamily::scaling_tangent(double c, double a) const {
    require_speed(c);
    if (nl_.is_power()) return closed_form(c, a, 1);
    const double h = 1e-4 * c;
    const auto d = (1.0 / (2.0 * h)) * (centred_numeric(c + h) - centred_numeric(c - h));
    return shift(d, a);
}

GridFunction SolitonFamily::scaling_tangent_dc(double c, double a) const {
    require_speed(c);
    if (nl_.is_power()) return closed_form(c, a, 2);
    const double h = 5e-3 * c;
    const auto d = (1.0 / (h * h)) * (centred_numeric(c + h) - 2.0 * centred_numeric(c) + centred_numeric(c - h));
    return shift(d, a);
}

double SolitonFamily::delta(double c) const {
    require_speed(c);
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        return 0.5 * std::pow(c, (5.0 - p) / (2.0 * (p - 1.0))) * power_constants(p).l2_squared;
    }
    const auto q = centred_numeric(c);
    return 0.5 * inner_product(q, q);
}

double SolitonFamily::delta_prime(double c) const {
    require_speed(c);
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        const double e = (5.0 - p) / (2.0 * (p - 1.0));
        return 0.5 * e * std::pow(c, e - 1.0) * power_constants(p).l2_squared;
    }
    return inner_product(profile(c, 0.0), scaling_tangent(c, 0.0));
}

double SolitonFamily::integral_scaling_tangent(double c) const {
    require_speed(c);
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        const double m = 1.0 / (p - 1.0);
        return (m - 0.5) * std::pow(c, m - 1.5) * power_constants(p).integral;
    }
    return integral(scaling_tangent(c, 0.0));
}

double SolitonFamily::peak(double c) const {
    require_speed(c);
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        return std::pow(c, 1.0 / (p - 1.0)) * power_constants(p).amplitude;
    }
    return turning_point(nl_, c);
}

double SolitonFamily::speed_from_peak(double height) const {
    if (!(height > 0.0)) throw InputError("peak height must be positive");
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        return std::pow(height / power_constants(p).amplitude, p - 1.0);
    }
    // The peak solves F(h) = c h²/2 exactly.
    const double c = 2.0 * nl_.F(height) / (height * height);
    if (!(c > 0.0)) throw InputError("no positive speed produces this peak height");
    return c;
}

double SolitonFamily::tail_ratio(double c) const {
    require_speed(c);
    if (nl_.is_power()) {
        const int p = *nl_.power_exponent();
        const auto k = power_constants(p);
        return std::pow(1.0 / std::cosh(k.width_rate * std::sqrt(c) * 0.5 * grid_.length()), 2.0 / (p - 1.0));
    }
    const auto q = centred_numeric(c);
    return std::abs(q[0]) / q.max_abs();
}

double SolitonFamily::residual(const GridFunction& q, double c) const {
    const auto r = -derivative(q, 2) + c * q - q.map([&](double u) { return nl_.f(u); });
    return r.max_abs();
}

std::pair<double, double> delta_and_derivative(double c, const Nonlinearity& nl, const Grid& grid) {
    SolitonFamily fam(nl, grid);
    const double d = fam.delta(c);
    const double dp = fam.delta_prime(c);
    if (!(dp > 0.0)) {
        std::ostringstream os;
        os << "stability condition violated: delta'(" << c << ") = " << dp << " <= 0 for " << nl.describe();
        throw StabilityError(os.str());
    }
    return {d, dp};
}

GridFunction construct_general(double c, const Nonlinearity& nl, const Grid& grid,
                               const GeneralProfileOptions& opts) {
    require_speed(c);
    const double top = turning_point(nl, c);
    const int d = lowest_degree(nl);
    const double gamma = d / (d - 1.0);

    Spectral fft(grid);
    const std::size_t modes = grid.modes();
    std::vector<double> symbol(modes);
    for (std::size_t j = 0; j < modes; ++j) symbol[j] = grid.wavenumber(j) * grid.wavenumber(j) + c;

    const double rc = std::sqrt(c);
    auto u = GridFunction::sample(grid, [&](double x) {
        const double s = 1.0 / std::cosh(0.5 * rc * x);
        return top * s * s;
    });

    std::vector<double> history;
    std::vector<std::complex<double>> uh(modes), nh(modes);
    std::vector<double> nonlinear(grid.size());
    for (int it = 0; it < opts.max_iter; ++it) {
        for (std::size_t j = 0; j < grid.size(); ++j) nonlinear[j] = nl.f(u[j]);
        fft.forward(u.values(), uh);
        fft.forward(nonlinear, nh);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < modes; ++j) {
            const double w = (j == 0 || j == modes - 1) ? 1.0 : 2.0;
            num += w * symbol[j] * std::norm(uh[j]);
            den += w * std::real(std::conj(uh[j]) * nh[j]);
        }
        // Residual of the current iterate in physical space.
        std::vector<std::complex<double>> rh(modes);
        for (std::size_t j = 0; j < modes; ++j) rh[j] = symbol[j] * uh[j] - nh[j];
        const double res = fft.inverse(rh).max_abs();
        history.push_back(res);
        if (res <= opts.tol) {
            if (u.max_abs() <= 0.0 || u[grid.size() / 2] <= 0.0) {
                throw ConvergenceError("fixed-point iteration converged to a non-positive profile", history);
            }
            return GridFunction(grid, std::vector<double>(u.values().begin(), u.values().end()));
        }
        if (!(den > 0.0) || !std::isfinite(num)) {
            throw ConvergenceError("fixed-point iteration lost positivity", history);
        }
        const double factor = std::pow(num / den, gamma);
        for (std::size_t j = 0; j < modes; ++j) nh[j] *= factor / symbol[j];
        u = symmetrize(fft.inverse(nh));
    }
    std::ostringstream os;
    os << "profile iteration did not reach residual " << opts.tol << " in " << opts.max_iter
       << " iterations (last " << history.back() << ")";
    throw ConvergenceError(os.str(), history);
}

}  // namespace bkdv
