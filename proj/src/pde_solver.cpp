#include "bkdv/pde_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

void validate(const SolverConfig& c) {
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw InputError("dt must be positive and finite");
    if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw InputError("t_end must be non-negative and finite");
    if (c.output_stride < 1) throw InputError("output_stride must be at least 1");
    if (c.integrator != "etdrk4") throw InputError("unknown integrator '" + c.integrator + "' (supported: etdrk4)");
    if (!(c.dealias_fraction > 0.0 && c.dealias_fraction <= 1.0)) throw InputError("dealias fraction must lie in (0, 1]");
    if (c.contour_points < 8) throw InputError("contour_points must be at least 8");
}

}  // namespace

PdeSolver::PdeSolver(Grid grid, Nonlinearity nl, BottomProfile bottom, SolverConfig cfg)
    : grid_(grid), nl_(std::move(nl)), bottom_(bottom), cfg_(std::move(cfg)), fft_(grid) {
    validate(cfg_);
    const std::size_t m = grid_.modes();
    kodd_.resize(m);
    mask_.resize(m);
    const double kcut = cfg_.dealias_fraction * grid_.max_wavenumber();
    for (std::size_t j = 0; j < m; ++j) {
        kodd_[j] = grid_.odd_wavenumber(j);
        mask_[j] = grid_.wavenumber(j) <= kcut * (1.0 + 1e-12) ? 1.0 : 0.0;
    }
    if (bottom_.is_static()) {
        const auto b = bottom_.sample(grid_, 0.0);
        static_b_.assign(b.values().begin(), b.values().end());
    }
}

const PdeSolver::Coefficients& PdeSolver::coefficients(double dt) const {
    auto it = cache_.find(dt);
    if (it != cache_.end()) return *it->second;
    const std::size_t m = grid_.modes();
    const int M = cfg_.contour_points;
    auto c = std::make_shared<Coefficients>();
    c->e.resize(m);
    c->e2.resize(m);
    c->q.resize(m);
    c->f1.resize(m);
    c->f2.resize(m);
    c->f3.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double k = kodd_[j];
        const cplx z(0.0, dt * k * k * k);
        c->e[j] = std::exp(z);
        c->e2[j] = std::exp(0.5 * z);
        cplx q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
        for (int l = 0; l < M; ++l) {
            const double th = 2.0 * std::numbers::pi * (l + 0.5) / M;
            const cplx r = z + std::polar(1.0, th);
            const cplx er = std::exp(r);
            const cplx r3 = r * r * r;
            q += (std::exp(0.5 * r) - 1.0) / r;
            f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
            f2 += (2.0 + r + er * (r - 2.0)) / r3;
            f3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
        }
        const double s = dt / M;
        c->q[j] = s * q;
        c->f1[j] = s * f1;
        c->f2[j] = s * f2;
        c->f3[j] = s * f3;
    }
    auto [pos, _] = cache_.emplace(dt, std::move(c));
    return *pos->second;
}

void PdeSolver::flux(const Spectrum& vhat, double t, Spectrum& out) const {
    const std::size_t n = grid_.size();
    std::vector<double> u(n);
    fft_.inverse(vhat, u);
    const double* b = nullptr;
    std::vector<double> bt;
    if (!static_b_.empty()) {
        b = static_b_.data();
    } else {
        bt.resize(n);
        for (std::size_t j = 0; j < n; ++j) bt[j] = bottom_.b(t, grid_.x(j));
        b = bt.data();
    }
    for (std::size_t j = 0; j < n; ++j) u[j] = nl_.f(u[j]) - b[j] * u[j];
    out.resize(grid_.modes());
    fft_.forward(u, out);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= cplx(0.0, -kodd_[j]) * mask_[j];
}

GridFunction PdeSolver::step(const GridFunction& u, double t, double dt) const {
    if (!(u.grid() == grid_)) throw InputError("state lives on a different grid than the solver");
    if (!(dt != 0.0) || !std::isfinite(dt)) throw InputError("step size must be non-zero and finite");
    const auto& co = coefficients(dt);
    const std::size_t m = grid_.modes();
    Spectrum v = fft_.forward(u);
    Spectrum nv, na, nb, nc, a(m), b(m), c(m);
    flux(v, t, nv);
    for (std::size_t j = 0; j < m; ++j) a[j] = co.e2[j] * v[j] + co.q[j] * nv[j];
    flux(a, t + 0.5 * dt, na);
    for (std::size_t j = 0; j < m; ++j) b[j] = co.e2[j] * v[j] + co.q[j] * na[j];
    flux(b, t + 0.5 * dt, nb);
    for (std::size_t j = 0; j < m; ++j) c[j] = co.e2[j] * a[j] + co.q[j] * (2.0 * nb[j] - nv[j]);
    flux(c, t + dt, nc);
    for (std::size_t j = 0; j < m; ++j) {
        v[j] = co.e[j] * v[j] + co.f1[j] * nv[j] + 2.0 * co.f2[j] * (na[j] + nb[j]) + co.f3[j] * nc[j];
    }
    std::vector<double> out(grid_.size());
    fft_.inverse(v, out);
    for (double x : out) {
        if (!std::isfinite(x)) throw BlowUpError("non-finite value in the solution", t + dt);
    }
    return make_unchecked(grid_, std::move(out));
}

double PdeSolver::stability_number(const GridFunction& u) const {
    double fmax = 0.0;
    for (double v : u.values()) fmax = std::max(fmax, std::abs(nl_.df(v)));
    double bmax = 0.0;
    const int samples = bottom_.is_static() ? 1 : 11;
    for (int i = 0; i < samples; ++i) {
        const double t = samples > 1 ? cfg_.t_end * i / (samples - 1.0) : 0.0;
        bmax = std::max(bmax, bottom_.sample(grid_, t).max_abs());
    }
    return cfg_.dt * cfg_.dealias_fraction * grid_.max_wavenumber() * (fmax + bmax);
}

Trajectory PdeSolver::evolve(const GridFunction& u0) const {
    if (!(u0.grid() == grid_)) throw InputError("initial state lives on a different grid than the solver");
    const double sn = stability_number(u0);
    if (sn > 2.0) {
        std::ostringstream os;
        os << "time step " << cfg_.dt << " is outside the stability region (dt k max|f'(u) - b| = " << sn << " > 2)";
        throw InputError(os.str());
    }
    const auto steps = static_cast<long long>(std::llround(cfg_.t_end / cfg_.dt));
    const double ceiling = 1e3 * std::max(u0.max_abs(), 1e-300);
    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(u0);
    GridFunction u = u0;
    for (long long s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s - 1) * cfg_.dt;
        u = step(u, t, cfg_.dt);
        if (u.max_abs() > ceiling) {
            std::ostringstream os;
            os << "amplitude " << u.max_abs() << " exceeded 1e3 times the initial maximum";
            throw BlowUpError(os.str(), static_cast<double>(s) * cfg_.dt);
        }
        if (s % cfg_.output_stride == 0 || s == steps) {
            tr.times.push_back(static_cast<double>(s) * cfg_.dt);
            tr.states.push_back(u);
        }
    }
    return tr;
}

namespace {

void put_le(std::ostream& os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), 8);
}

bool get_le(std::istream& is, double& v) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) return false;
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    v = std::bit_cast<double>(bits);
    return true;
}

}  // namespace

void write_snapshots(const std::string& path, const Trajectory& traj, const SolverConfig& cfg, const Nonlinearity& nl,
                     const BottomProfile& b) {
    if (traj.states.empty()) throw InputError("no snapshots to write");
    const Grid& g = traj.states.front().grid();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        put_le(os, traj.times[i]);
        for (double v : traj.states[i].values()) put_le(os, v);
    }
    nlohmann::ordered_json side;
    side["format"] = "rows of (t, u_0..u_{N-1}) as little-endian float64";
    side["grid"] = {{"L", g.length()}, {"N", g.size()}};
    side["rows"] = traj.states.size();
    side["solver"] = {{"dt", cfg.dt},
                      {"t_end", cfg.t_end},
                      {"output_stride", cfg.output_stride},
                      {"integrator", cfg.integrator},
                      {"dealias_fraction", cfg.dealias_fraction}};
    side["nonlinearity"] = nl.describe();
    side["bottom"] = {{"family", b.name()}, {"eps_a", b.eps_a()}, {"eps_x", b.eps_x()}, {"eps_t", b.eps_t()}};
    std::ofstream js(path + ".json");
    if (!js) throw InputError("cannot open " + path + ".json for writing");
    js << side.dump(2) << '\n';
}

Trajectory read_snapshots(const std::string& path) {
    std::ifstream js(path + ".json");
    if (!js) throw InputError("missing sidecar " + path + ".json");
    const auto side = nlohmann::json::parse(js);
    const Grid g(side.at("grid").at("L").get<double>(), side.at("grid").at("N").get<std::size_t>());
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open " + path);
    Trajectory tr;
    double t = 0.0;
    while (get_le(is, t)) {
        std::vector<double> row(g.size());
        for (auto& v : row) {
            if (!get_le(is, v)) throw InputError("truncated snapshot row in " + path);
        }
        tr.times.push_back(t);
        tr.states.emplace_back(g, std::move(row));
    }
    return tr;
}

}  // namespace bkdv
