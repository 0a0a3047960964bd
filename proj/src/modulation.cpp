#include "bkdv/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bkdv/errors.hpp"
#include "bkdv/reg_symplectic.hpp"

namespace bkdv {

namespace {

struct Frame {
    GridFunction q, ztr, zn, reg;
};

Frame frame(const SolitonFamily& fam, double alpha, double a, double c) {
    auto q = fam.profile(c, a);
    auto ztr = -derivative(q, 1);
    auto zn = fam.scaling_tangent(c, a);
    auto reg = apply_reg_inverse(zn, alpha);
    return {std::move(q), std::move(ztr), std::move(zn), std::move(reg)};
}

double spectral_norm(const Eigen::Matrix2d& m) {
    return Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues()(0);
}

double lift(double a, double reference, double length) {
    return a + length * std::round((reference - a) / length);
}

}  // namespace

double infimum_delta_prime(const SolitonFamily& fam, const SpeedInterval& I, int points) {
    if (!(I.lo > 0.0) || !(I.hi >= I.lo)) throw InputError("speed interval must satisfy 0 < lo <= hi");
    double m = INFINITY;
    for (int i = 0; i < points; ++i) {
        const double c = points > 1 ? I.lo + (I.hi - I.lo) * i / (points - 1.0) : I.lo;
        m = std::min(m, fam.delta_prime(c));
    }
    return m;
}

OmegaMatrix omega_matrix(const SolitonFamily& fam, const SolitonParams& p, const SpeedInterval& I) {
    const auto f = frame(fam, p.alpha, p.a, p.c);
    OmegaMatrix om;
    om.matrix << 0.0, -inner_product(f.zn, f.q), inner_product(f.q, derivative(f.reg, 1)), inner_product(f.zn, f.reg);
    // The (1,1) entry is ⟨ζ^tr, K ζ^tr⟩ = -⟨ζ^tr, Q⟩, which is zero by antisymmetry of ∂_x.
    om.matrix(0, 0) = -inner_product(f.ztr, f.q);
    om.determinant = om.matrix.determinant();
    const double dinf = infimum_delta_prime(fam, I);
    om.determinant_floor = 0.5 * dinf * dinf;
    const double dp = fam.delta_prime(p.c);
    const double izn = fam.integral_scaling_tangent(p.c);
    om.leading_inverse << 0.5 * izn * izn, dp, -dp, 0.0;
    om.leading_inverse /= dp * dp;
    if (om.determinant < om.determinant_floor) {
        std::ostringstream os;
        os << "symplectic matrix determinant " << om.determinant << " is below the floor " << om.determinant_floor
           << " at c = " << p.c << ", alpha = " << p.alpha << "; alpha is inadmissible";
        throw AdmissibilityError(os.str());
    }
    om.inverse = om.matrix.inverse();
    om.leading_error = spectral_norm(om.inverse - om.leading_inverse);
    return om;
}

Eigen::Vector2d modulation_residual(const GridFunction& u, const SolitonFamily& fam, double alpha, double a, double c) {
    const auto f = frame(fam, alpha, a, c);
    const auto d = f.q - u;
    return {-inner_product(d, f.q), inner_product(d, f.reg)};
}

Eigen::Matrix2d modulation_jacobian(const GridFunction& u, const SolitonFamily& fam, double alpha, double a, double c) {
    const auto f = frame(fam, alpha, a, c);
    const auto d = f.q - u;
    const auto reg_dc = apply_reg_inverse(fam.scaling_tangent_dc(c, a), alpha);
    Eigen::Matrix2d j;
    j(0, 0) = -inner_product(d, f.ztr);
    j(0, 1) = -inner_product(f.zn, f.q) - inner_product(d, f.zn);
    j(1, 0) = inner_product(f.ztr, f.reg) - inner_product(d, f.zn - alpha * f.reg);
    j(1, 1) = inner_product(f.zn, f.reg) + inner_product(d, reg_dc);
    return j;
}

std::pair<double, double> peak_guess(const GridFunction& u, const SolitonFamily& fam) {
    const Grid& g = u.grid();
    const std::size_t n = u.size();
    std::size_t jm = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(u[j]) > std::abs(u[jm])) jm = j;
    }
    const double ym = u[(jm + n - 1) % n], y0 = u[jm], yp = u[(jm + 1) % n];
    const double curv = ym - 2.0 * y0 + yp;
    double off = 0.0, top = y0;
    if (curv != 0.0) {
        off = 0.5 * (ym - yp) / curv;
        off = std::clamp(off, -0.5, 0.5);
        top = y0 - 0.25 * (ym - yp) * off;
    }
    const double a = g.wrap(g.x(jm) + off * g.spacing());
    return {a, fam.speed_from_peak(std::abs(top))};
}

ModulationState decompose(const GridFunction& u, const SolitonFamily& fam, double alpha,
                          std::optional<std::pair<double, double>> guess, const DecomposeOptions& opts) {
    if (!(alpha > 0.0)) throw InputError("regularization parameter must be positive");
    require_same_grid(u, fam.profile(1.0, 0.0));
    auto [a, c] = guess ? *guess : peak_guess(u, fam);
    if (!(c > 0.0)) throw InputError("initial speed guess must be positive");

    auto residuals = [&](double aa, double cc, Frame& fr) {
        fr = frame(fam, alpha, aa, cc);
        const auto d = fr.q - u;
        return Eigen::Vector2d(std::abs(inner_product(d, fr.q)) / l2_norm(fr.q),
                               std::abs(inner_product(d, fr.reg)) / l2_norm(fr.reg));
    };
    Frame fr = frame(fam, alpha, a, c);
    Eigen::Vector2d res = residuals(a, c, fr);
    int it = 0;
    std::vector<double> history{res.maxCoeff()};
    bool converged = res.maxCoeff() <= opts.tol;
    while (!converged && it < opts.max_iter) {
        ++it;
        const Eigen::Vector2d F = modulation_residual(u, fam, alpha, a, c);
        const Eigen::Matrix2d J = modulation_jacobian(u, fam, alpha, a, c);
        const Eigen::Vector2d step = J.fullPivLu().solve(F);
        double lambda = 1.0;
        double na = a, nc = c;
        Eigen::Vector2d nres = res;
        for (int half = 0; half < 30; ++half) {
            na = a - lambda * step(0);
            nc = c - lambda * step(1);
            if (nc > 0.0) {
                Frame trial = fr;
                nres = residuals(na, nc, trial);
                if (nres.maxCoeff() < res.maxCoeff() || nres.maxCoeff() <= opts.tol) {
                    fr = std::move(trial);
                    break;
                }
            }
            lambda *= 0.5;
        }
        const bool stalled = std::abs(na - a) <= 1e-15 * std::max(1.0, std::abs(a)) &&
                             std::abs(nc - c) <= 1e-15 * std::max(1.0, c);
        a = na;
        c = nc;
        res = nres;
        history.push_back(res.maxCoeff());
        if (res.maxCoeff() <= opts.tol) converged = true;
        // Roundoff floor: the step no longer moves the parameters and the residual is tiny.
        if (stalled && res.maxCoeff() <= 100.0 * opts.tol) converged = true;
        if (stalled && !converged) break;
    }
    if (!converged) {
        std::ostringstream os;
        os << "decomposition did not converge in " << it << " iterations (residual " << res.maxCoeff()
           << "); the state has left the tube";
        throw TubeExitError(os.str());
    }
    if (!opts.interval.contains(c)) {
        std::ostringstream os;
        os << "extracted speed c = " << c << " left the interval [" << opts.interval.lo << ", " << opts.interval.hi << "]";
        throw IntervalExitError(os.str());
    }
    const Grid& g = u.grid();
    auto xi = u - fr.q;
    const double xi_h1 = sobolev_norm_h1(xi);
    const double radius = std::isnan(opts.tube_radius) ? 0.1 * std::sqrt(alpha) : opts.tube_radius;
    if (xi_h1 > radius) {
        std::ostringstream os;
        os << "fluctuation norm " << xi_h1 << " exceeds the tube radius " << radius;
        throw TubeExitError(os.str());
    }

    ModulationState st{0.0, g.wrap(a), c, xi, GridFunction::zeros(g), xi, xi_h1, 0.0, xi_h1,
                       res(0), res(1), it, 0.0, std::nullopt};
    if (opts.compute_split) {
        CoercivityOptions co;
        co.initial = opts.eta_guess;
        const auto cr = coercivity(fam, {c, a, alpha}, co);
        auto [b, gpart] = anisotropic_split(xi, cr.eta);
        st.xib_h1 = sobolev_norm_h1(b);
        st.xig_h1 = sobolev_norm_h1(gpart);
        st.xi_b = std::move(b);
        st.xi_g = std::move(gpart);
        st.sigma = cr.sigma;
        st.eta = cr.eta;
    }
    return st;
}

TrackResult track_until_exit(const std::vector<double>& times, const std::vector<GridFunction>& states,
                             const SolitonFamily& fam, double alpha, const DecomposeOptions& opts) {
    if (times.size() != states.size()) throw InputError("time and state series differ in length");
    TrackResult res;
    auto& out = res.states;
    out.reserve(states.size());
    const double length = fam.grid().length();
    DecomposeOptions o = opts;
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::optional<std::pair<double, double>> guess;
        if (out.size() >= 2) {
            const auto& p1 = out[out.size() - 1];
            const auto& p0 = out[out.size() - 2];
            const double r = (times[i] - p1.t) / (p1.t - p0.t);
            guess = std::make_pair(p1.a + r * (p1.a - p0.a), p1.c + r * (p1.c - p0.c));
        } else if (out.size() == 1) {
            guess = std::make_pair(out.back().a, out.back().c);
        }
        try {
            auto st = decompose(states[i], fam, alpha, guess, o);
            st.t = times[i];
            if (!out.empty()) st.a = lift(st.a, out.back().a, length);
            if (st.eta) {
                // Seeds the next constrained eigen-solve.
                o.eta_guess = *st.eta;
            }
            out.push_back(std::move(st));
        } catch (const TubeExitError& e) {
            res.exit = TrackExit::tube;
            res.exit_time = times[i];
            res.exit_reason = e.what();
            return res;
        } catch (const IntervalExitError& e) {
            res.exit = TrackExit::interval;
            res.exit_time = times[i];
            res.exit_reason = e.what();
            return res;
        }
    }
    return res;
}

std::vector<ModulationState> track(const std::vector<double>& times, const std::vector<GridFunction>& states,
                                   const SolitonFamily& fam, double alpha, const DecomposeOptions& opts) {
    auto res = track_until_exit(times, states, fam, alpha, opts);
    if (res.exit == TrackExit::tube) throw TubeExitError(res.exit_reason, res.exit_time);
    if (res.exit == TrackExit::interval) throw IntervalExitError(res.exit_reason, res.exit_time);
    return std::move(res.states);
}

}  // namespace bkdv
