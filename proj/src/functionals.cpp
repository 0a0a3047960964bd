#include "bkdv/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

double sum_h(const std::vector<double>& v, double h) {
    double s = 0.0;
    for (double x : v) s += x;
    return s * h;
}

std::vector<double> centered_rate(const std::vector<double>& f, double dt, std::size_t& first, std::size_t& last) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n >= 5) {
        first = 2;
        last = n - 3;
        for (std::size_t i = 2; i + 2 < n; ++i) {
            d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dt);
        }
    } else {
        first = 1;
        last = n - 2;
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
    }
    return d;
}

}  // namespace

double hamiltonian(const GridFunction& u, const BottomProfile& b, double t, const Nonlinearity& nl) {
    const Grid& g = u.grid();
    const auto ux = derivative(u, 1);
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = 0.5 * ux[j] * ux[j] - nl.F(u[j]) + 0.5 * b.b(t, g.x(j)) * u[j] * u[j];
    }
    return sum_h(v, g.spacing());
}

double momentum(const GridFunction& u) { return 0.5 * inner_product(u, u); }

double mass(const GridFunction& u) { return integral(u); }

double potential_momentum(const GridFunction& u, const BottomProfile& b, double t) {
    const Grid& g = u.grid();
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * b.b(t, g.x(j)) * u[j] * u[j];
    return sum_h(v, g.spacing());
}

double lagrangian(const GridFunction& u, double c, const Nonlinearity& nl) {
    const auto ux = derivative(u, 1);
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * ux[j] * ux[j] + 0.5 * c * u[j] * u[j] - nl.F(u[j]);
    return sum_h(v, u.grid().spacing());
}

GridFunction lagrangian_gradient(const GridFunction& u, double c, const Nonlinearity& nl) {
    return -derivative(u, 2) + c * u - u.map([&](double v) { return nl.f(v); });
}

double hessian_form(const GridFunction& xi, const GridFunction& q, double c, const Nonlinearity& nl) {
    require_same_grid(xi, q);
    const auto dx = derivative(xi, 1);
    std::vector<double> v(xi.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = dx[j] * dx[j] + (c - nl.df(q[j])) * xi[j] * xi[j];
    return sum_h(v, xi.grid().spacing());
}

Remainders remainders(const GridFunction& xi, const GridFunction& q, const Nonlinearity& nl) {
    require_same_grid(xi, q);
    std::vector<double> n(xi.size()), dn(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) {
        const double Q = q[j], e = xi[j];
        n[j] = -(nl.F(Q + e) - nl.F(Q) - nl.f(Q) * e - 0.5 * nl.df(Q) * e * e);
        dn[j] = -(nl.f(Q + e) - nl.f(Q) - nl.df(Q) * e);
    }
    return {sum_h(n, xi.grid().spacing()), GridFunction(xi.grid(), std::move(dn))};
}

LyapunovValue lyapunov(const GridFunction& q, const GridFunction& xi, double c, double a,
                       const BottomProfile& b, double t, const Nonlinearity& nl) {
    require_same_grid(q, xi);
    const Grid& g = q.grid();
    std::vector<double> w(q.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = g.wrap(g.x(j) - a) * q[j];
    const double tilt = b.b_x(t, a) * inner_product(GridFunction(g, std::move(w)), xi);
    LyapunovValue out{};
    out.value = lagrangian(q + xi, c, nl) - lagrangian(q, c, nl) + tilt;
    out.quadratic = 0.5 * hessian_form(xi, q, c, nl) + remainders(xi, q, nl).n + tilt;
    return out;
}

double hamiltonian_rate(const GridFunction& u, const BottomProfile& b, double t) {
    const Grid& g = u.grid();
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * b.b_t(t, g.x(j)) * u[j] * u[j];
    return sum_h(v, g.spacing());
}

double momentum_rate(const GridFunction& u, const BottomProfile& b, double t) {
    const Grid& g = u.grid();
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * b.b_x(t, g.x(j)) * u[j] * u[j];
    return sum_h(v, g.spacing());
}

double potential_momentum_rate(const GridFunction& u, const BottomProfile& b, double t, const Nonlinearity& nl) {
    const Grid& g = u.grid();
    const auto ux = derivative(u, 1);
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = g.x(j), w = u[j], wx = ux[j];
        v[j] = 0.5 * w * w * b.b_t(t, x) + b.b_x(t, x) * (w * nl.f(w) - 1.5 * wx * wx - nl.F(w)) -
               b.b_xx(t, x) * w * wx;
    }
    return sum_h(v, g.spacing());
}

std::string RateReport::to_text() const {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific;
    os << "mass_drift = " << mass_drift << '\n'
       << "hamiltonian_drift = " << hamiltonian_drift << '\n'
       << "momentum_drift = " << momentum_drift << '\n'
       << "hamiltonian_rate_residual = " << hamiltonian_rate << '\n'
       << "momentum_rate_residual = " << momentum_rate << '\n'
       << "potential_rate_residual = " << potential_rate << '\n';
    return os.str();
}

RateReport rate_identities(const std::vector<double>& times, const std::vector<GridFunction>& states,
                           const BottomProfile& b, const Nonlinearity& nl) {
    if (times.size() != states.size()) throw InputError("time and state series differ in length");
    if (times.size() < 3) throw InputError("rate identities need at least 3 snapshots");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw InputError("rate identities need equally spaced snapshots");
        }
    }
    const std::size_t n = times.size();
    std::vector<double> H(n), P(n), B(n), M(n), rH(n), rP(n), rB(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = states[i];
        const double t = times[i];
        H[i] = hamiltonian(u, b, t, nl);
        P[i] = momentum(u);
        B[i] = potential_momentum(u, b, t);
        M[i] = mass(u);
        rH[i] = hamiltonian_rate(u, b, t);
        rP[i] = momentum_rate(u, b, t);
        rB[i] = potential_momentum_rate(u, b, t, nl);
    }
    RateReport rep;
    rep.per_sample.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        rep.mass_drift = std::max(rep.mass_drift, std::abs(M[i] - M[0]));
        rep.hamiltonian_drift = std::max(rep.hamiltonian_drift, std::abs(H[i] - H[0]));
        rep.momentum_drift = std::max(rep.momentum_drift, std::abs(P[i] - P[0]));
    }
    auto residual = [&](const std::vector<double>& f, const std::vector<double>& rate, double& abs_out) {
        std::size_t first = 0, last = 0;
        const auto d = centered_rate(f, dt, first, last);
        double worst = 0.0, scale = 0.0, fmax = 0.0;
        for (std::size_t i = first; i <= last; ++i) {
            worst = std::max(worst, std::abs(d[i] - rate[i]));
            scale = std::max(scale, std::abs(rate[i]));
        }
        for (double v : f) fmax = std::max(fmax, std::abs(v));
        abs_out = worst;
        if (scale <= 1e-12 * fmax) scale = fmax;
        const double inv = scale > 0.0 ? 1.0 / scale : 1.0;
        for (std::size_t i = first; i <= last; ++i) {
            const double r = std::abs(d[i] - rate[i]) * inv;
            rep.per_sample[i] = std::isnan(rep.per_sample[i]) ? r : std::max(rep.per_sample[i], r);
        }
        return worst * inv;
    };
    rep.hamiltonian_rate = residual(H, rH, rep.hamiltonian_rate_abs);
    rep.momentum_rate = residual(P, rP, rep.momentum_rate_abs);
    rep.potential_rate = residual(B, rB, rep.potential_rate_abs);
    return rep;
}

}  // namespace bkdv
