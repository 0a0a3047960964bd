#include "bkdv/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "bkdv/effective.hpp"
#include "bkdv/eigensolvers.hpp"
#include "bkdv/functionals.hpp"
#include "bkdv/hessian.hpp"
#include "bkdv/parallel.hpp"
#include "bkdv/pde_solver.hpp"
#include "bkdv/reg_symplectic.hpp"
#include "bkdv/soliton.hpp"

namespace bkdv {

namespace {

// Composite 8-point Gauss-Legendre on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
    static const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    static const double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double m = a + (p + 0.5) * h, r = 0.5 * h;
        for (int i = 0; i < 4; ++i) s += w[i] * r * (f(m - r * x[i]) + f(m + r * x[i]));
    }
    return s;
}

// Closed-form profile A c^{1/(p-1)} sech^{2/(p-1)}(κ √c x) and its x-derivative, written out
// here rather than taken from SolitonFamily.
double sol(int p, double c, double x) {
    const double A = std::pow((p + 1.0) / 2.0, 1.0 / (p - 1.0));
    return A * std::pow(c, 1.0 / (p - 1.0)) * std::pow(1.0 / std::cosh(0.5 * (p - 1.0) * std::sqrt(c) * x), 2.0 / (p - 1.0));
}
double sol_x(int p, double c, double x) { return -std::sqrt(c) * sol(p, c, x) * std::tanh(0.5 * (p - 1.0) * std::sqrt(c) * x); }

double quad_line(const std::function<double(double)>& f) { return gauss_legendre(f, -60.0, 60.0, 2400); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

using Task = std::function<std::vector<OracleRecord>()>;

std::vector<Task> tasks() {
    std::vector<Task> t;
    for (int p : {2, 3, 4}) {
        t.push_back([p] {
            const std::string in = "p=" + std::to_string(p) + " c=1";
            const Grid g(80.0, 8192);
            const SolitonFamily fam(Nonlinearity::power(p), g);
            std::vector<OracleRecord> r;
            const auto k = power_constants(p);
            // Trapezoid sum of the sampled closed form, independent of the family class.
            double trap = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) trap += std::pow(sol(p, 1.0, g.x(j)), 2);
            trap *= g.spacing();
            r.push_back({"l2_squared_Q1", in, "closed form", k.l2_squared, "trapezoid N=8192 L=80", trap, "N=8192", 1e-10});
            const auto delta_q = [p](double c) { return 0.5 * quad_line([&](double x) { return std::pow(sol(p, c, x), 2); }); };
            r.push_back({"delta", in, "closed form", fam.delta(1.0), "Gauss-Legendre of Q^2/2", delta_q(1.0),
                         "2400 panels on [-60,60]", 1e-10});
            const double h = 1e-3;
            const double fd = (delta_q(1.0 + h) - delta_q(1.0 - h)) / (2.0 * h);
            r.push_back({"delta_prime", in, "closed form", fam.delta_prime(1.0), "centered difference of delta, h=1e-3", fd,
                         "h=1e-3", 1e-6});
            const auto int_q = [p](double c) { return quad_line([&](double x) { return sol(p, c, x); }); };
            r.push_back({"integral_Q", in, "closed form", k.integral, "Gauss-Legendre", int_q(1.0), "2400 panels", 1e-10});
            const double izn = (int_q(1.0 + h) - int_q(1.0 - h)) / (2.0 * h);
            r.push_back({"integral_zeta_n", in, "closed form", fam.integral_scaling_tangent(1.0),
                         "centered difference of the integral", izn, "h=1e-3", 1e-6});
            // Pöschl-Teller ground state: s(s+1) = 2p(p+1)/(p-1)², λ₁ = c(1 - κ² s²).
            const double kappa = 0.5 * (p - 1.0);
            const double ss = 2.0 * p * (p + 1.0) / ((p - 1.0) * (p - 1.0));
            const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * ss));
            const double exact = 1.0 - kappa * kappa * s * s;
            const Grid gd(80.0, 2048);
            const SolitonFamily fd2(Nonlinearity::power(p), gd);
            const auto a = to_dense(hessian_block(fd2.profile(1.0, 0.0), 1.0, Nonlinearity::power(p)), 2048);
            r.push_back({"lambda1", in, "Poschl-Teller closed form", exact, "dense eigensolve N=2048 L=80",
                         dense_lowest(a, 1).values(0), "N=2048", 1e-4});
            return r;
        });
    }
    t.push_back([] {
        const std::string in = "p=2 c=1";
        const Grid g(80.0, 8192);
        const auto nl = Nonlinearity::power(2);
        const double h = hamiltonian(SolitonFamily(nl, g).profile(1.0, 0.0), BottomProfile::zero(), 0.0, nl);
        const double gl = quad_line([](double x) { return 0.5 * std::pow(sol_x(2, 1.0, x), 2) - std::pow(sol(2, 1.0, x), 3) / 3.0; });
        return std::vector<OracleRecord>{
            {"hamiltonian_Q1", in, "spectral quadrature N=8192", h, "Gauss-Legendre of the closed form", gl, "N=8192", 1e-10},
            {"hamiltonian_Q1_exact", in, "rational value -9/5", -1.8, "Gauss-Legendre of the closed form", gl, "2400 panels", 1e-10}};
    });
    t.push_back([] {
        const Grid g(80.0, 8192);
        const SolitonFamily fam(Nonlinearity::power(3), g);
        const double m = integral(fam.scaling_tangent(1.0, 0.0));
        return std::vector<OracleRecord>{
            {"mean_zeta_n_p3", "p=3 c=1", "closed form (zero)", 0.0, "trapezoid of the scaling tangent", m, "N=8192", 1e-10}};
    });
    t.push_back([] {
        const Grid g(160.0, 1024);
        const SolitonFamily fam(Nonlinearity::power(2), g);
        const auto b = BottomProfile::static_bump(0.02, 0.1);
        std::vector<OracleRecord> r;
        for (double c : {0.5, 1.0, 2.0}) {
            const EffectiveState s{0.0, -5.0, c};
            const double bx = b.b_x(0.0, -5.0);
            const auto lead = effective_rhs(s, b, fam, EffectiveForm::leading);
            const auto corr = effective_rhs(s, b, fam, EffectiveForm::corrected);
            const std::string in = "p=2 c=" + fmt(c);
            r.push_back({"ode_c_coefficient", in, "2c/3", 2.0 * c / 3.0, "effective_rhs c-dot / b_x", corr.second / bx,
                         "closed-form delta", 1e-12});
            r.push_back({"ode_a_coefficient", in, "-(2/3) c^-1/2", -2.0 / 3.0 / std::sqrt(c), "effective_rhs a-dot correction / b_x",
                         (corr.first - lead.first) / bx, "closed-form delta", 1e-12});
        }
        return r;
    });
    t.push_back([] {
        std::vector<OracleRecord> r;
        const Grid g(400.0, 4096);
        const SolitonFamily fam(Nonlinearity::power(2), g);
        const auto q = fam.profile(1.0, 0.0);
        const std::function<double(double)> gauss = [](double x) { return std::exp(-x * x); };
        const std::function<double(double)> q1 = [](double x) { return sol(2, 1.0, x); };
        for (double a : {0.2, 0.1, 0.05, 0.025}) {
            for (int which = 0; which < 2; ++which) {
                const auto& fn = which == 0 ? gauss : q1;
                const auto f = GridFunction::sample(g, fn);
                const auto d = reg_inverse_line(fn, g, a) - apply_reg_inverse(f, a);
                // The periodic inverse adds C e^{-α(x+L/2)} with C = e^{-αL/2} ∫φ(y) e^{αy} dy / (1 - e^{-αL}),
                // largest at the left edge. The weighted integrals are closed forms.
                const double moment = which == 0 ? std::sqrt(std::numbers::pi) * std::exp(0.25 * a * a)
                                                 : 6.0 * std::numbers::pi * a / std::sin(std::numbers::pi * a);
                const double corr = moment * std::exp(-0.5 * a * g.length()) / -std::expm1(-a * g.length());
                r.push_back({"reg_inverse_line_vs_fourier", std::string(which ? "soliton" : "gaussian") + " alpha=" + fmt(a),
                             "max |line - Fourier|", d.max_abs(), "closed-form torus correction", corr, "N=4096 L=400",
                             1e-6 * corr + 1e-14});
            }
        }
        return r;
    });
    t.push_back([] {
        const Grid g(80.0, 512);
        const auto nl = Nonlinearity::power(2);
        const SolitonFamily fam(nl, g);
        std::vector<double> err;
        for (double dt : {1e-3, 5e-4}) {
            SolverConfig sc;
            sc.dt = dt;
            sc.t_end = 10.0;
            sc.output_stride = 100000;
            const auto tr = PdeSolver(g, nl, BottomProfile::zero(), sc).evolve(fam.profile(1.0, 0.0));
            err.push_back(sobolev_norm_h1(tr.states.back() - fam.profile(1.0, 10.0)));
        }
        return std::vector<OracleRecord>{{"soliton_fidelity_h1", "p=2 c=1 T=10 N=512 L=80", "dt=1e-3", err[0],
                                          "dt=5e-4", err[1], "N=512", 1e-6}};
    });
    t.push_back([] {
        const Grid g(160.0, 1024);
        const SolitonFamily fam(Nonlinearity::power(2), g);
        const auto b = BottomProfile::static_bump(0.02, 0.1);
        std::vector<double> dc;
        for (double dt : {1e-2, 1e-3}) {
            EffectiveOptions o;
            o.dt = dt;
            const auto run = integrate_effective({0.0, -40.0, 1.0}, b, fam, 80.0, o);
            dc.push_back(run.states.back().c - 1.0);
        }
        return std::vector<OracleRecord>{{"bump_passage_speed_change", "p=2 eps_a=0.02 eps_x=0.1 a0=-40 T=80",
                                          "RK4 dt=1e-2", dc[0], "RK4 dt=1e-3", dc[1], "ODE", 1e-9}};
    });
    t.push_back([] {
        const Grid g(80.0, 512);
        std::vector<OracleRecord> r;
        for (int p : {2, 3}) {
            const auto nl = Nonlinearity::power(p);
            const SolitonFamily fam(nl, g);
            const double d = (construct_general(1.0, nl, g) - fam.profile(1.0, 0.0)).max_abs();
            r.push_back({"general_profile_vs_closed_form", "p=" + std::to_string(p) + " c=1", "max difference", d,
                         "zero", 0.0, "N=512 L=80", 1e-7});
        }
        return r;
    });
    t.push_back([] {
        // Orbital stability smoke test: distance to the nearest translated soliton over t <= 50.
        const auto nl = Nonlinearity::power(2);
        std::vector<double> dist;
        for (std::size_t n : {512u, 1024u}) {
            const Grid g(80.0, n);
            const SolitonFamily fam(nl, g);
            SolverConfig sc;
            sc.dt = 1e-3;
            sc.t_end = 50.0;
            sc.output_stride = 1000;
            const auto pert = GridFunction::sample(g, [](double x) { return 0.01 * std::exp(-0.25 * x * x) * std::cos(x); });
            const auto tr = PdeSolver(g, nl, BottomProfile::zero(), sc).evolve(fam.profile(1.0, 0.0) + pert);
            DecomposeOptions o;
            o.compute_split = false;
            o.tube_radius = 1.0;
            o.interval = {0.1, 10.0};
            const auto st = track(tr.times, tr.states, fam, 0.1, o);
            double m = 0.0;
            for (const auto& s : st) m = std::max(m, s.xi_h1);
            dist.push_back(m);
        }
        return std::vector<OracleRecord>{{"orbital_distance_t50", "p=2 c=1 perturbation 0.01 exp(-x^2/4) cos x", "N=512",
                                          dist[0], "N=1024", dist[1], "dt=1e-3", 1e-8}};
    });
    return t;
}

}  // namespace

bool OracleRecord::agree() const noexcept { return std::abs(value_a - value_b) <= tolerance; }

std::vector<OracleRecord> run_all_oracles(int threads) {
    const auto t = tasks();
    std::vector<std::vector<OracleRecord>> parts(t.size());
    parallel_for(t.size(), threads, [&](std::size_t i) { parts[i] = t[i](); });
    std::vector<OracleRecord> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::string format_records(const std::vector<OracleRecord>& records) {
    std::ostringstream os;
    os.precision(15);
    os << "name | inputs | method_a | value_a | method_b | value_b | resolution | tolerance | status\n";
    for (const auto& r : records) {
        os << r.name << " | " << r.inputs << " | " << r.method_a << " | " << r.value_a << " | " << r.method_b << " | "
           << r.value_b << " | " << r.resolution << " | " << r.tolerance << " | " << (r.agree() ? "agree" : "DISAGREE")
           << '\n';
    }
    return os.str();
}

}  // namespace bkdv
