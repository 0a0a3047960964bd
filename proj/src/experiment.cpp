#include "bkdv/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "bkdv/errors.hpp"
#include "bkdv/functionals.hpp"
#include "bkdv/hessian.hpp"
#include "bkdv/parallel.hpp"
#include "bkdv/pde_solver.hpp"
#include "bkdv/reg_symplectic.hpp"

namespace bkdv {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<double> speed_grid(const SpeedInterval& I, int points) {
    std::vector<double> c;
    for (int i = 0; i < points; ++i) c.push_back(points > 1 ? I.lo + (I.hi - I.lo) * i / (points - 1.0) : I.lo);
    return c;
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

// Uniform double in [0, 1) from the top 53 bits; mt19937_64 output is fixed by the standard.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot write " + p.string());
    os << s;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_checks(const std::vector<CheckLine>& checks) {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  [" << c.suite << "] " << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << '\n';
    }
    return os.str();
}

bool VerifyReport::all_pass() const noexcept {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    os << format_checks(checks);
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckLine& c) { return !c.pass; });
    os << checks.size() - static_cast<std::size_t>(failed) << '/' << checks.size() << " checks passed in "
       << fmt(seconds, 3) << " s\n";
    return os.str();
}

GridFunction band_limited_noise(const Grid& g, std::uint64_t seed, double kmax, double width, double h1_norm) {
    if (!(kmax > 0.0) || !(width > 0.0)) throw InputError("noise band limit and width must be positive");
    std::mt19937_64 rng(seed);
    Spectral fft(g);
    std::vector<std::complex<double>> c(g.modes());
    for (std::size_t j = 1; j < c.size(); ++j) {
        const double re = 2.0 * unit(rng) - 1.0, im = 2.0 * unit(rng) - 1.0;
        if (g.wavenumber(j) <= kmax && j != g.size() / 2) c[j] = {re, im};
    }
    auto raw = fft.inverse(c);
    const auto env = GridFunction::sample(g, [width](double x) { return std::exp(-0.5 * (x / width) * (x / width)); });
    auto v = raw * env;
    const double n = sobolev_norm_h1(v);
    if (!(n > 0.0)) throw InputError("band limit admits no nonzero modes on this grid");
    return (h1_norm / n) * v;
}

// ---------------------------------------------------------------------------------------------
// verify

namespace {

void suite_inverse_clauses(const ExperimentConfig& cfg, const SolitonFamily& fam, std::vector<CheckLine>& out) {
    const Grid& g = fam.grid();
    struct Pair {
        std::string name;
        GridFunction phi, psi;
    };
    std::vector<Pair> pairs;
    pairs.push_back({"gaussian", GridFunction::sample(g, [](double x) { return std::exp(-x * x); }),
                     GridFunction::sample(g, [](double x) { return x * std::exp(-0.5 * (x - 1.0) * (x - 1.0)); })});
    pairs.push_back({"soliton", fam.profile(1.0, 0.0), fam.scaling_tangent(1.0, 0.0)});
    bool clause[6] = {true, true, true, true, true, true};
    std::string fail[6];
    bool bounded = true;
    std::string bounded_detail;
    for (const auto& pr : pairs) {
        std::vector<double> rem;
        for (double a : cfg.verify.alphas) {
            InverseClauseReport r;
            try {
                r = check_inverse_clauses(pr.phi, pr.psi, a);
            } catch (const Error& e) {
                for (auto& c : clause) c = false;
                fail[0] = pr.name + " alpha=" + fmt(a) + ": " + e.what();
                continue;
            }
            for (int k = 0; k < 6; ++k) {
                if (!r.clause[k] && clause[k]) {
                    clause[k] = false;
                    fail[k] = pr.name + " alpha=" + fmt(a);
                }
            }
            rem.push_back(r.values.at("c6_remainder"));
        }
        if (!rem.empty()) {
            double lo = INFINITY, hi = 0.0;
            for (double v : rem) {
                lo = std::min(lo, std::abs(v));
                hi = std::max(hi, std::abs(v));
            }
            const double l1 = l1_norm(pr.phi);
            const bool ok = hi - lo <= 0.5 * hi + 1e-6 * (1.0 + l1 * l1);
            bounded = bounded && ok;
            bounded_detail += (bounded_detail.empty() ? "" : "; ") + pr.name + " |R| in [" + fmt(lo) + ", " + fmt(hi) + "]";
        }
    }
    static const char* names[6] = {"clause 1: commutation with derivative and translation",
                                    "clause 2: sup bound by the L1 norm",
                                    "clause 3: L2 bound with constant 1/sqrt(2)",
                                    "clause 4: weighted bound with constant 1/sqrt(2)",
                                    "clause 5: pairing inequalities",
                                    "clause 6: remainder of the 1/alpha expansion"};
    for (int k = 0; k < 6; ++k) out.push_back({"regularized inverse", names[k], clause[k], fail[k]});
    out.push_back({"regularized inverse", "clause 6 remainder bounded across the alpha sweep", bounded, bounded_detail});
}

void suite_omega(const ExperimentConfig& cfg, const SolitonFamily& fam, const std::vector<double>& cgrid,
                 std::vector<CheckLine>& out) {
    const auto& I = cfg.modulation.interval;
    double worst_ratio = 0.0;
    std::string where;
    for (double a : cfg.verify.alphas) {
        bool ok = true;
        std::string detail;
        double min_margin = INFINITY;
        for (double c : cgrid) {
            try {
                const auto om = omega_matrix(fam, {c, 0.0, a}, I);
                min_margin = std::min(min_margin, om.determinant / om.determinant_floor);
                const double r = om.leading_error / a;
                if (r > worst_ratio) {
                    worst_ratio = r;
                    where = "c=" + fmt(c) + " alpha=" + fmt(a);
                }
            } catch (const AdmissibilityError& e) {
                ok = false;
                detail = e.what();
                break;
            }
        }
        if (ok) detail = "min det/floor " + fmt(min_margin);
        out.push_back({"symplectic matrix", "determinant above floor at alpha=" + fmt(a), ok, detail});
    }
    out.push_back({"symplectic matrix", "||inverse - leading|| <= K alpha, K=" + fmt(cfg.verify.omega_constant),
                   worst_ratio <= cfg.verify.omega_constant && worst_ratio > 0.0,
                   where.empty() ? "no admissible alpha" : "max ratio " + fmt(worst_ratio) + " at " + where});
}

void suite_spectrum(const ExperimentConfig& cfg, const Nonlinearity& nl, const std::vector<double>& cgrid, int threads,
                    std::vector<CheckLine>& out) {
    const Grid gs(cfg.verify.spectral_L, cfg.verify.spectral_N);
    const SolitonFamily fs(nl, gs);
    std::vector<std::optional<SpectralReport>> reps(cgrid.size());
    parallel_for(cgrid.size(), threads, [&](std::size_t i) { reps[i] = spectrum(fs, cgrid[i], 0.0, 6); });
    bool neg = true, null = true, cosine = true, below = true;
    double worst_null = 0.0, worst_cos = 1.0, worst_gap = INFINITY;
    for (std::size_t i = 0; i < cgrid.size(); ++i) {
        const auto& r = *reps[i];
        neg = neg && r.negative_count == 1;
        worst_null = std::max(worst_null, r.nullspace_residual);
        worst_cos = std::min(worst_cos, r.zero_mode_cosine);
        for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
            if (r.localized[k]) {
                below = below && r.eigenvalues[k] < cgrid[i];
                worst_gap = std::min(worst_gap, cgrid[i] - r.eigenvalues[k]);
            }
        }
    }
    null = worst_null <= 1e-7;
    cosine = worst_cos >= 1.0 - 1e-6;
    out.push_back({"hessian spectrum", "exactly one negative eigenvalue", neg, ""});
    out.push_back({"hessian spectrum", "zero-mode residual <= 1e-7", null, "max " + fmt(worst_null)});
    out.push_back({"hessian spectrum", "zero-mode cosine >= 1 - 1e-6", cosine, "min " + fmt(worst_cos, 12)});
    out.push_back({"hessian spectrum", "localized eigenvalues below c", below, "min c - lambda " + fmt(worst_gap)});

    // Dense reference at a finer grid for the ground state, at the middle of the speed grid.
    const double c = cgrid[cgrid.size() / 2];
    const auto& r = *reps[cgrid.size() / 2];
    const Grid go(cfg.verify.spectral_L, cfg.verify.oracle_N);
    const SolitonFamily fo(nl, go);
    const auto a = to_dense(hessian_block(fo.profile(c, 0.0), c, nl), static_cast<Eigen::Index>(go.size()));
    const auto d = dense_lowest(a, 1);
    const double diff = std::abs(d.values(0) - r.eigenvalues.front());
    out.push_back({"hessian spectrum", "ground state matches dense reference to 1e-4", diff <= 1e-4,
                   "lambda1=" + fmt(r.eigenvalues.front(), 12) + " reference=" + fmt(d.values(0), 12) + " at c=" + fmt(c)});
}

struct CoercivityCell {
    double c = 0.0, alpha = 0.0;
    std::string error;
    double sigma_ratio = 0.0, eta_perp = 0.0, beta_gap = 0.0, el = 0.0, trial = 0.0, sigma = 0.0;
    int aniso_fail = 0;
    double aniso_margin = INFINITY;   ///< min (lhs - rhs) / lhs
    double cross = 0.0;
};

void suite_coercivity(const ExperimentConfig& cfg, const SolitonFamily& fam, const std::vector<double>& cgrid,
                      int threads, std::vector<CheckLine>& out) {
    std::vector<CoercivityCell> cells;
    for (double c : cgrid)
        for (double a : cfg.verify.alphas) {
            CoercivityCell cell;
            cell.c = c;
            cell.alpha = a;
            cells.push_back(cell);
        }
    const Nonlinearity& nl = fam.nonlinearity();
    const Grid& g = fam.grid();
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        auto& cell = cells[i];
        try {
            const SolitonParams p{cell.c, 0.0, cell.alpha};
            const auto r = coercivity(fam, p);
            cell.sigma = r.sigma;
            cell.sigma_ratio = r.sigma / cell.alpha;
            cell.eta_perp = sobolev_norm_h1(r.eta_perp) / std::sqrt(cell.alpha);
            cell.beta_gap = std::abs(r.beta - r.sigma);
            cell.el = r.euler_lagrange_residual;
            cell.trial = trial_function_bound(fam, p).rayleigh;
            const auto leta = apply_hessian(r.eta, r.q, cell.c, nl);
            for (int k = 0; k < cfg.verify.random_trials; ++k) {
                const double kmax = 0.5 * static_cast<double>(1 + k % 4);
                const double width = 5.0 * static_cast<double>(1 + k % 3);
                auto xi = project_admissible(band_limited_noise(g, cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k) + 1,
                                                                kmax, width, 1.0),
                                             r);
                xi = (1.0 / sobolev_norm_h1(xi)) * xi;
                const auto [xb, xg] = anisotropic_split(xi, r.eta);
                const double lhs = hessian_form(xi, r.q, cell.c, nl);
                const double gb = sobolev_norm_h1(xg), bb = sobolev_norm_h1(xb);
                const double rhs = r.good_constant * gb * gb + r.bad_constant * bb * bb;
                if (lhs < rhs * (1.0 - 1e-10)) ++cell.aniso_fail;
                cell.aniso_margin = std::min(cell.aniso_margin, (lhs - rhs) / std::abs(lhs));
                cell.cross = std::max(cell.cross, std::abs(inner_product(leta, xg)));
            }
        } catch (const Error& e) {
            cell.error = e.what();
        }
    });
    const double c1 = cfg.verify.sigma_band[0], c2 = cfg.verify.sigma_band[1];
    bool ok_err = true, band = true, perp = true, beta = true, trial = true, aniso = true, cross = true;
    double lo = INFINITY, hi = 0.0, perp_max = 0.0, beta_max = 0.0, cross_max = 0.0, margin = INFINITY;
    int fails = 0;
    std::string err;
    for (const auto& cell : cells) {
        if (!cell.error.empty()) {
            ok_err = false;
            if (err.empty()) err = "c=" + fmt(cell.c) + " alpha=" + fmt(cell.alpha) + ": " + cell.error;
            continue;
        }
        lo = std::min(lo, cell.sigma_ratio);
        hi = std::max(hi, cell.sigma_ratio);
        perp_max = std::max(perp_max, cell.eta_perp);
        beta_max = std::max(beta_max, cell.beta_gap);
        cross_max = std::max(cross_max, cell.cross);
        margin = std::min(margin, cell.aniso_margin);
        fails += cell.aniso_fail;
        trial = trial && cell.sigma <= cell.trial + 1e-10;
    }
    band = ok_err && lo >= c1 && hi <= c2;
    perp = ok_err && perp_max <= cfg.verify.eta_perp_bound;
    beta = ok_err && beta_max <= 1e-8;
    cross = ok_err && cross_max <= 1e-9;
    aniso = ok_err && fails == 0;
    const std::string s = "constrained coercivity";
    out.push_back({s, "minimizer found on every (c, alpha)", ok_err, err});
    out.push_back({s, "sigma/alpha within [" + fmt(c1) + ", " + fmt(c2) + "]", band, "range [" + fmt(lo) + ", " + fmt(hi) + "]"});
    out.push_back({s, "||eta_perp|| alpha^-1/2 <= " + fmt(cfg.verify.eta_perp_bound), perp, "max " + fmt(perp_max)});
    out.push_back({s, "multiplier beta equals sigma to 1e-8", beta, "max gap " + fmt(beta_max)});
    out.push_back({s, "sigma below the trial-function Rayleigh quotient", trial && ok_err, ""});
    out.push_back({s, "anisotropic lower bound on " + std::to_string(cfg.verify.random_trials) + " random admissible xi per cell",
                   aniso, std::to_string(fails) + " violations, min relative margin " + fmt(margin)});
    out.push_back({s, "cross term <L eta, xi_g> <= 1e-9", cross, "max " + fmt(cross_max)});
}

void suite_remainders(const ExperimentConfig& cfg, std::vector<CheckLine>& out) {
    const Grid g(cfg.verify.spectral_L, cfg.verify.spectral_N);
    const std::vector<double> sizes{1e-1, 1e-2, 1e-3, 1e-4};
    for (int p : cfg.verify.remainder_powers) {
        const auto nl = Nonlinearity::power(p);
        const SolitonFamily fam(nl, g);
        const auto q = fam.profile(1.0, 0.0);
        auto phi = GridFunction::sample(g, [](double x) { return std::exp(-0.25 * x * x) * (1.0 + 0.3 * x); });
        phi = (1.0 / sobolev_norm_h1(phi)) * phi;
        std::vector<double> dn, dn2, n;
        for (double e : sizes) {
            const auto xi = e * phi;
            const auto r = remainders(xi, q, nl);
            const auto second = q.map([&nl](double v) { return 0.5 * nl.d2f(v); }) * xi * xi;
            dn.push_back(l2_norm(r.dn));
            dn2.push_back(l2_norm(r.dn + second));
            n.push_back(std::abs(r.n));
        }
        const std::string s = "nonlinear remainders";
        const std::string tag = "p=" + std::to_string(p) + ": ";
        const double s1 = slope(sizes, dn), s3 = slope(sizes, n);
        out.push_back({s, tag + "slope of N' >= 1.98", s1 >= 1.98, fmt(s1)});
        const bool vacuous = *std::max_element(dn2.begin(), dn2.end()) <= 1e-14 * dn.front();
        if (vacuous) {
            out.push_back({s, tag + "N' + f''(Q) xi^2/2 identically zero", true, "vacuous for quadratic f"});
        } else {
            const double s2 = slope(sizes, dn2);
            out.push_back({s, tag + "slope of N' + f''(Q) xi^2/2 >= 2.98", s2 >= 2.98, fmt(s2)});
        }
        out.push_back({s, tag + "slope of N >= 2.98", s3 >= 2.98, fmt(s3)});
    }
}

void suite_decomposition(const ExperimentConfig& cfg, const Nonlinearity& nl, std::vector<CheckLine>& out) {
    const Grid g = cfg.make_grid();
    const SolitonFamily fam(nl, g);
    const double alpha = cfg.modulation.alpha ? *cfg.modulation.alpha : cfg.verify.alphas.front();
    const double c0 = std::clamp(1.2, cfg.modulation.interval.lo, cfg.modulation.interval.hi);
    const double a0 = 0.0413 * g.length();
    DecomposeOptions o;
    o.compute_split = false;
    o.interval = cfg.modulation.interval;
    const std::string s = "decomposition";
    const auto u = fam.profile(c0, a0);
    const auto st = decompose(u, fam, alpha, std::nullopt, o);
    const double err = std::max(std::abs(st.a - a0), std::abs(st.c - c0));
    out.push_back({s, "exact soliton recovered to 1e-10", err <= 1e-10, "error " + fmt(err)});

    const auto w = u + shift(band_limited_noise(g, cfg.seed + 7, 1.0, 8.0, 1e-3), a0);
    const auto sw = decompose(w, fam, alpha, std::nullopt, o);
    const double res = std::max(sw.res1, sw.res2);
    out.push_back({s, "orthogonality residuals <= 1e-11", res <= 1e-11, "max " + fmt(res)});

    double spread = 0.0;
    for (double da : {-0.5, 0.5})
        for (double dc : {-0.1, 0.1}) {
            const auto sb = decompose(w, fam, alpha, std::make_pair(sw.a + da, sw.c + dc), o);
            spread = std::max({spread, std::abs(sb.a - sw.a), std::abs(sb.c - sw.c)});
        }
    out.push_back({s, "basin guesses converge to the same parameters", spread <= 1e-10, "spread " + fmt(spread)});

    std::vector<double> times;
    std::vector<GridFunction> states;
    const auto noise = band_limited_noise(g, cfg.seed + 11, 1.0, 8.0, 1e-3);
    for (int k = 0; k <= 50; ++k) {
        const double t = 0.1 * k;
        const double c = c0 + 0.01 * std::sin(t);
        const double a = a0 + c0 * t;
        times.push_back(t);
        states.push_back(fam.profile(c, a) + shift(noise, a));
    }
    const auto tr = track(times, states, fam, alpha, o);
    int worst = 0;
    for (std::size_t i = 1; i < tr.size(); ++i) worst = std::max(worst, tr[i].iterations);
    out.push_back({s, "warm-started Newton within 5 iterations", worst <= 5, "max " + std::to_string(worst)});
}

}  // namespace

std::vector<CheckLine> run_suite(Suite suite, const ExperimentConfig& cfg, int threads) {
    std::vector<CheckLine> out;
    const auto nl = cfg.make_nonlinearity();
    const auto cgrid = speed_grid(cfg.modulation.interval, cfg.verify.c_points);
    const Grid gv(cfg.verify.L, cfg.verify.N);
    const SolitonFamily fam(nl, gv);
    switch (suite) {
        case Suite::stability:
            try {
                double worst = INFINITY;
                for (double c : cgrid) worst = std::min(worst, delta_and_derivative(c, nl, gv).second);
                out.push_back({"stability", "delta'(c) > 0 on the speed grid", true, "min " + fmt(worst)});
            } catch (const StabilityError& e) {
                out.push_back({"stability", "delta'(c) > 0 on the speed grid", false, e.what()});
            }
            break;
        case Suite::regularized_inverse: suite_inverse_clauses(cfg, fam, out); break;
        case Suite::symplectic_matrix: suite_omega(cfg, fam, cgrid, out); break;
        case Suite::spectrum: suite_spectrum(cfg, nl, cgrid, threads, out); break;
        case Suite::coercivity: suite_coercivity(cfg, fam, cgrid, threads, out); break;
        case Suite::remainders: suite_remainders(cfg, out); break;
        case Suite::decomposition: suite_decomposition(cfg, nl, out); break;
    }
    return out;
}

VerifyReport cmd_verify(const ExperimentConfig& cfg, int threads) {
    const auto t0 = Clock::now();
    VerifyReport rep;
    rep.checks = run_suite(Suite::stability, cfg, threads);
    // Every later suite presumes a stable family.
    if (rep.all_pass()) {
        for (auto s : {Suite::regularized_inverse, Suite::symplectic_matrix, Suite::spectrum, Suite::coercivity,
                       Suite::remainders, Suite::decomposition}) {
            auto lines = run_suite(s, cfg, threads);
            rep.checks.insert(rep.checks.end(), lines.begin(), lines.end());
        }
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------------------------
// compare

bool ComparisonReport::pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::string ComparisonReport::to_text() const {
    std::ostringstream os;
    os.precision(10);
    os << "alpha = " << alpha << '\n'
       << "epsilon_scale = " << epsilon_scale << '\n'
       << "window = " << window << '\n'
       << "tube_exit = " << (tube_exit ? "yes" : "no") << '\n';
    if (tube_exit) os << "exit_time = " << exit_time << "\nexit_reason = " << exit_reason << '\n';
    os << "max_da = " << max_da << '\n'
       << "max_dc = " << max_dc << '\n'
       << "sup_xi_h1 = " << sup_xi << '\n'
       << "sup_xig_h1 = " << sup_xig << '\n'
       << "sup_xib_h1 = " << sup_xib << '\n'
       << "max_newton_iterations = " << max_iterations << '\n'
       << "mass_drift = " << mass_drift << '\n'
       << "hamiltonian_drift = " << hamiltonian_drift << '\n'
       << "momentum_drift = " << momentum_drift << '\n'
       << "rate_residual = " << rate_residual << '\n';
    os << format_checks(checks);
    return os.str();
}

CompareResult cmd_compare(const ExperimentConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    const auto nl = cfg.make_nonlinearity();
    const Grid g = cfg.make_grid();
    const auto b = cfg.make_bottom();
    const SolitonFamily fam(nl, g);
    CompareResult res;
    auto& rep = res.report;
    rep.alpha = cfg.alpha();
    rep.epsilon_scale = cfg.epsilon_scale();

    auto u0 = fam.profile(cfg.initial.c0, cfg.initial.a0);
    if (cfg.initial.perturbation_h1 > 0.0) {
        u0 = u0 + shift(band_limited_noise(g, cfg.seed, cfg.initial.perturbation_kmax, cfg.initial.perturbation_width,
                                           cfg.initial.perturbation_h1),
                        cfg.initial.a0);
    }

    const double stride_time = cfg.solver.dt * cfg.solver.output_stride;
    double window = cfg.solver.t_end;
    const double eps = std::isnan(rep.epsilon_scale) ? 0.0 : rep.epsilon_scale;
    const double denom = b.eps_t() + b.eps_x() + eps;
    if (b.family() != BottomFamily::zero && b.family() != BottomFamily::constant && denom > 0.0) {
        window = std::min(window, cfg.compare.window_constant / denom);
    }
    window = std::floor(window / stride_time + 1e-9) * stride_time;
    if (window < 2.0 * stride_time) throw InputError("comparison window holds fewer than three snapshots");
    rep.window = window;

    SolverConfig sc = cfg.solver;
    sc.t_end = window;
    const PdeSolver solver(g, nl, b, sc);
    const auto traj = solver.evolve(u0);

    const auto rates = rate_identities(traj.times, traj.states, b, nl);
    rep.mass_drift = rates.mass_drift;
    rep.hamiltonian_drift = rates.hamiltonian_drift;
    rep.momentum_drift = rates.momentum_drift;
    rep.rate_residual = std::max({rates.hamiltonian_rate, rates.momentum_rate, rates.potential_rate});

    DecomposeOptions o;
    o.tol = cfg.modulation.tol;
    o.tube_radius = cfg.modulation.tube_radius;
    o.interval = cfg.modulation.interval;
    o.compute_split = cfg.compare.split;
    auto tr = track_until_exit(traj.times, traj.states, fam, rep.alpha, o);
    rep.tube_exit = tr.exit != TrackExit::none;
    rep.exit_time = tr.exit_time;
    rep.exit_reason = tr.exit_reason;
    res.track = std::move(tr.states);
    if (res.track.empty()) throw TubeExitError("initial data is outside the tube: " + rep.exit_reason, 0.0);

    const int sub = static_cast<int>(std::ceil(stride_time / cfg.compare.effective_dt - 1e-9));
    EffectiveOptions eo;
    eo.dt = stride_time / sub;
    eo.output_stride = sub;
    eo.form = cfg.compare.form;
    eo.interval = cfg.modulation.interval;
    res.effective = integrate_effective({0.0, res.track.front().a, res.track.front().c}, b, fam, window, eo);

    const std::size_t n = std::min(res.track.size(), res.effective.states.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = res.track[i];
        const auto& e = res.effective.states[i];
        if (std::abs(m.t - e.t) > 1e-9 * std::max(1.0, m.t)) throw Error("internal: PDE and ODE sample times disagree");
        rep.max_da = std::max(rep.max_da, std::abs(m.a - e.a));
        rep.max_dc = std::max(rep.max_dc, std::abs(m.c - e.c));
    }
    for (std::size_t i = 0; i < res.track.size(); ++i) {
        const auto& m = res.track[i];
        rep.sup_xi = std::max(rep.sup_xi, m.xi_h1);
        rep.sup_xig = std::max(rep.sup_xig, m.xig_h1);
        rep.sup_xib = std::max(rep.sup_xib, m.xib_h1);
        if (i > 0) rep.max_iterations = std::max(rep.max_iterations, m.iterations);
    }
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const auto& u = traj.states[i];
        ConservationRow row{t, hamiltonian(u, b, t, nl), momentum(u), mass(u), std::numeric_limits<double>::quiet_NaN(),
                            rates.per_sample[i]};
        if (i < res.track.size()) {
            const auto& m = res.track[i];
            row.lyapunov = lyapunov(fam.profile(m.c, m.a), m.xi, m.c, m.a, b, t, nl).value;
        }
        res.conservation.push_back(row);
    }

    auto& ch = rep.checks;
    ch.push_back({"compare", "remained in the tube over the window", !rep.tube_exit,
                  rep.tube_exit ? "T0=" + fmt(rep.exit_time) + ": " + rep.exit_reason : ""});
    ch.push_back({"compare", "mass drift <= 1e-10", rep.mass_drift <= 1e-10, fmt(rep.mass_drift)});
    if (b.family() == BottomFamily::zero) {
        ch.push_back({"compare", "H and P drift <= 1e-8", std::max(rep.hamiltonian_drift, rep.momentum_drift) <= 1e-8,
                      fmt(std::max(rep.hamiltonian_drift, rep.momentum_drift))});
    }
    ch.push_back({"compare", "rate identities within 1e-4", rep.rate_residual <= 1e-4, fmt(rep.rate_residual)});
    if (cfg.compare.xi_bound && eps > 0.0) {
        const double k = rep.sup_xi / eps;
        ch.push_back({"compare", "sup ||xi|| <= K (ea ex)^s, K=" + fmt(*cfg.compare.xi_bound), k <= *cfg.compare.xi_bound,
                      "measured K " + fmt(k)});
    }
    if (cfg.compare.param_bound && eps > 0.0) {
        const double k = std::max(rep.max_da, rep.max_dc) / (eps * eps * window);
        ch.push_back({"compare", "parameter error <= K (ea ex)^2s T, K=" + fmt(*cfg.compare.param_bound),
                      k <= *cfg.compare.param_bound, "measured K " + fmt(k)});
    }
    if (cfg.compare.good_bound && eps > 0.0 && cfg.compare.split) {
        const double k = rep.sup_xi > 0.0 ? rep.sup_xig / rep.sup_xi / std::sqrt(eps) : 0.0;
        ch.push_back({"compare", "sup ||xi_g|| / sup ||xi|| <= K (ea ex)^(s/2), K=" + fmt(*cfg.compare.good_bound),
                      k <= *cfg.compare.good_bound, "measured K " + fmt(k)});
    }
    if (cfg.compare.a_tolerance) {
        ch.push_back({"compare", "max |a_pde - a_eff| <= " + fmt(*cfg.compare.a_tolerance),
                      rep.max_da <= *cfg.compare.a_tolerance, fmt(rep.max_da)});
    }
    if (cfg.compare.c_tolerance) {
        ch.push_back({"compare", "max |c_pde - c_eff| <= " + fmt(*cfg.compare.c_tolerance),
                      rep.max_dc <= *cfg.compare.c_tolerance, fmt(rep.max_dc)});
    }
    rep.seconds = seconds_since(t0);

    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        fs::create_directories(dir);
        std::ostringstream m, e, c;
        m << "t,a,c,xi_h1,xig_h1,xib_h1,res1,res2,iters\n";
        for (const auto& s : res.track) {
            m << format_number(s.t) << ',' << format_number(s.a) << ',' << format_number(s.c) << ','
              << format_number(s.xi_h1) << ',' << format_number(s.xig_h1) << ',' << format_number(s.xib_h1) << ','
              << format_number(s.res1) << ',' << format_number(s.res2) << ',' << s.iterations << '\n';
        }
        e << "t,a_eff,c_eff\n";
        for (const auto& s : res.effective.states) {
            e << format_number(s.t) << ',' << format_number(s.a) << ',' << format_number(s.c) << '\n';
        }
        c << "t,H_b,P,mass,M_c,residuals\n";
        for (const auto& r : res.conservation) {
            c << format_number(r.t) << ',' << format_number(r.hamiltonian) << ',' << format_number(r.momentum) << ','
              << format_number(r.mass) << ',' << format_number(r.lyapunov) << ',' << format_number(r.residual) << '\n';
        }
        write_text(dir / "modulation.csv", m.str());
        write_text(dir / "effective.csv", e.str());
        write_text(dir / "conservation.csv", c.str());
        write_text(dir / "summary.txt", rep.to_text());
        write_text(dir / "config.yaml", dump_config(cfg));
    }
    return res;
}

// ---------------------------------------------------------------------------------------------
// sweep and profile dump

namespace {

void set_axis(ExperimentConfig& c, const std::string& axis, double v) {
    if (axis == "alpha") {
        c.modulation.alpha = v;
    } else if (axis == "s") {
        c.modulation.alpha.reset();
        c.modulation.s = v;
    } else if (axis == "N") {
        if (v < 8 || std::floor(v) != v) throw InputError("sweep: N must be an integer");
        c.N = static_cast<std::size_t>(v);
    } else if (axis == "eps_a") {
        c.bottom.eps_a = v;
    } else if (axis == "eps_x") {
        c.bottom.eps_x = v;
    } else if (axis == "eps_t") {
        c.bottom.eps_t = v;
    } else if (axis == "c0") {
        c.initial.c0 = v;
    } else {
        throw InputError("sweep: unknown axis '" + axis + "' (alpha, s, N, eps_a, eps_x, eps_t, c0)");
    }
}

}  // namespace

int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis, const std::vector<double>& values,
              const std::string& out_dir, int threads) {
    if (values.empty()) throw InputError("sweep: no values given");
    {
        ExperimentConfig probe = cfg;
        set_axis(probe, axis, values.front());
    }
    struct Row {
        std::string status = "error";
        ComparisonReport rep;
    };
    std::vector<Row> rows(values.size());
    parallel_for(values.size(), threads, [&](std::size_t i) {
        ExperimentConfig c = cfg;
        try {
            set_axis(c, axis, values[i]);
            const auto dir = (fs::path(out_dir) / (axis + "_" + format_number(values[i]))).string();
            auto r = cmd_compare(c, dir);
            rows[i].rep = std::move(r.report);
            rows[i].status = rows[i].rep.pass() ? "pass" : "fail";
        } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            rows[i].status = "error: " + msg;
        }
    });
    std::ostringstream os;
    os << "axis,value,status,alpha,window,exit_time,max_da,max_dc,sup_xi,sup_xig,sup_xib,max_iterations\n";
    int failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i].rep;
        if (rows[i].status != "pass") ++failed;
        os << axis << ',' << format_number(values[i]) << ',' << rows[i].status << ',' << format_number(r.alpha) << ','
           << format_number(r.window) << ',' << (r.tube_exit ? format_number(r.exit_time) : "") << ','
           << format_number(r.max_da) << ',' << format_number(r.max_dc) << ',' << format_number(r.sup_xi) << ','
           << format_number(r.sup_xig) << ',' << format_number(r.sup_xib) << ',' << r.max_iterations << '\n';
    }
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "sweep.csv", os.str());
    return failed;
}

void profile_dump(const ExperimentConfig& cfg, const std::string& out_dir) {
    const auto nl = cfg.make_nonlinearity();
    const Grid g = cfg.make_grid();
    const SolitonFamily fam(nl, g);
    const double c = cfg.initial.c0, a = cfg.initial.a0;
    const auto q = fam.profile(c, a);
    const auto ztr = fam.translation_tangent(c, a);
    const auto zn = fam.scaling_tangent(c, a);
    const double alpha = (cfg.modulation.alpha || cfg.modulation.s) ? cfg.alpha() : cfg.verify.alphas.front();
    const auto reg = apply_reg_inverse(zn, alpha);
    std::ostringstream os;
    os << "x,Q,zeta_tr,zeta_n,reg_zeta_n\n";
    for (std::size_t j = 0; j < g.size(); ++j) {
        os << format_number(g.x(j)) << ',' << format_number(q[j]) << ',' << format_number(ztr[j]) << ','
           << format_number(zn[j]) << ',' << format_number(reg[j]) << '\n';
    }
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "profile.csv", os.str());
}

}  // namespace bkdv
