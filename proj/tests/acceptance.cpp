// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bkdv/errors.hpp"
#include "bkdv/experiment.hpp"
#include "bkdv/functionals.hpp"
#include "bkdv/pde_solver.hpp"
#include "bkdv/soliton.hpp"

using namespace bkdv;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = BKDV_CONFIG_DIR;
const fs::path kScratch = fs::temp_directory_path() / "bkdv_acceptance";

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void require(const std::vector<CheckLine>& lines) {
        for (const auto& l : lines) require(l.pass, l.suite + ": " + l.name + (l.detail.empty() ? "" : " [" + l.detail + "]"));
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-34s %s  (%.1f s)\n", id, title.c_str(), o.pass ? "PASS" : "FAIL", secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared between criteria 7, 8 and 9.
std::optional<CompareResult> bump_full, bump_half;
double bump_seconds = 0.0;

void run_bump_pair() {
    if (bump_full) return;
    const auto t0 = std::chrono::steady_clock::now();
    bump_full = cmd_compare(load_config((kConfigs / "static_bump.yaml").string()), (kScratch / "bump").string());
    bump_half = cmd_compare(load_config((kConfigs / "static_bump_half.yaml").string()), (kScratch / "bump_half").string());
    bump_seconds = elapsed_since(t0);
}

double param_error(const ComparisonReport& r) { return std::max(r.max_da, r.max_dc); }

ExperimentConfig verify_config() { return load_config((kConfigs / "verify.yaml").string()); }

}  // namespace

int main() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);

    criterion(1, "soliton fidelity", [](Outcome& o) {
        const Grid g(80.0, 512);
        const auto nl = Nonlinearity::power(2);
        const SolitonFamily fam(nl, g);
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 10.0;
        cfg.output_stride = 10000;
        const auto t0 = std::chrono::steady_clock::now();
        const auto tr = PdeSolver(g, nl, BottomProfile::zero(), cfg).evolve(fam.profile(1.0, 0.0));
        const double secs = elapsed_since(t0);
        const double err = sobolev_norm_h1(tr.states.back() - fam.profile(1.0, 10.0));
        o.require(err <= 1e-6, "||u(10) - Q1(. - 10)||_H1 = " + sci(err) + " <= 1e-6");
        o.require(secs <= 10.0, "runtime " + sci(secs) + " s <= 10 s");
    });

    criterion(2, "conservation and rate identities", [](Outcome& o) {
        // Flat bottom over t <= 50 with a small perturbation; also the orbital smoke test.
        auto free = load_config((kConfigs / "free_soliton.yaml").string());
        free.initial.perturbation_h1 = 0.01;
        free.seed = 1;
        free.compare.a_tolerance.reset();
        free.compare.c_tolerance.reset();
        const auto rf = cmd_compare(free, "").report;
        o.require(rf.mass_drift <= 1e-10, "b=0: mass drift " + sci(rf.mass_drift));
        o.require(std::max(rf.hamiltonian_drift, rf.momentum_drift) <= 1e-8,
                  "b=0, t<=50: H drift " + sci(rf.hamiltonian_drift) + ", P drift " + sci(rf.momentum_drift));
        o.require(rf.rate_residual <= 1e-4, "b=0: rate residual " + sci(rf.rate_residual));
        o.require(!rf.tube_exit && rf.sup_xi <= 0.05, "b=0: orbital distance sup ||xi||_H1 = " + sci(rf.sup_xi) + " <= 0.05");

        auto flat = free;
        flat.bottom.family = "constant";
        flat.bottom.value = 0.1;
        flat.solver.t_end = 10.0;
        flat.initial.perturbation_h1 = 0.0;
        const auto rc = cmd_compare(flat, "").report;
        o.require(rc.mass_drift <= 1e-10, "constant b: mass drift " + sci(rc.mass_drift));
        o.require(rc.rate_residual <= 1e-4, "constant b: rate residual " + sci(rc.rate_residual));

        const auto ramp = cmd_compare(load_config((kConfigs / "moving_ramp.yaml").string()), "").report;
        o.require(ramp.mass_drift <= 1e-10, "moving ramp: mass drift " + sci(ramp.mass_drift));
        o.require(ramp.rate_residual <= 1e-4, "moving ramp: rate residual " + sci(ramp.rate_residual));

        run_bump_pair();
        for (const auto* r : {&bump_full->report, &bump_half->report}) {
            o.require(r->mass_drift <= 1e-10, "static bump: mass drift " + sci(r->mass_drift));
            o.require(r->rate_residual <= 1e-4, "static bump: rate residual " + sci(r->rate_residual));
        }
    });

    criterion(3, "regularized inverse clauses", [](Outcome& o) {
        auto cfg = verify_config();
        cfg.verify.alphas = {0.2, 0.1, 0.05, 0.025};
        const auto t0 = std::chrono::steady_clock::now();
        o.require(run_suite(Suite::regularized_inverse, cfg));
        const double secs = elapsed_since(t0);
        o.require(secs <= 30.0, "runtime " + sci(secs) + " s <= 30 s");
    });

    criterion(4, "symplectic matrix", [](Outcome& o) { o.require(run_suite(Suite::symplectic_matrix, verify_config())); });

    criterion(5, "Hessian spectrum", [](Outcome& o) { o.require(run_suite(Suite::spectrum, verify_config())); });

    criterion(6, "constrained coercivity", [](Outcome& o) { o.require(run_suite(Suite::coercivity, verify_config())); });

    criterion(7, "decomposition", [](Outcome& o) {
        o.require(run_suite(Suite::decomposition, verify_config()));
        run_bump_pair();
        for (const auto* r : {&bump_full->report, &bump_half->report}) {
            o.require(r->max_iterations <= 5,
                      "warm-started Newton along the bump run: max " + std::to_string(r->max_iterations) + " <= 5");
        }
    });

    criterion(8, "bump window dynamics", [](Outcome& o) {
        run_bump_pair();
        for (const auto* r : {&bump_full->report, &bump_half->report}) {
            for (const auto& l : r->checks) {
                if (l.name.rfind("sup ||xi_g||", 0) == 0) continue;  // criterion 9
                o.require(l.pass, "eps scale " + sci(r->epsilon_scale) + ": " + l.name + (l.detail.empty() ? "" : " [" + l.detail + "]"));
            }
        }
        const double ratio = param_error(bump_full->report) / param_error(bump_half->report);
        o.require(ratio >= 1.5 && ratio <= 4.0, "halving eps_a shrinks the parameter error by " + sci(ratio) + " in [1.5, 4]");
        o.require(bump_seconds <= 600.0, "runtime " + sci(bump_seconds) + " s <= 600 s");
    });

    criterion(9, "anisotropic fluctuation split", [](Outcome& o) {
        run_bump_pair();
        for (const auto* r : {&bump_full->report, &bump_half->report}) {
            bool seen = false;
            for (const auto& l : r->checks) {
                if (l.name.rfind("sup ||xi_g||", 0) != 0) continue;
                seen = true;
                o.require(l.pass, "eps scale " + sci(r->epsilon_scale) + ": " + l.name + (l.detail.empty() ? "" : " [" + l.detail + "]"));
            }
            o.require(seen, "good-part bound configured");
        }
    });

    criterion(10, "remainder slopes", [](Outcome& o) { o.require(run_suite(Suite::remainders, verify_config())); });

    criterion(11, "determinism", [](Outcome& o) {
        auto cfg = load_config((kConfigs / "static_bump.yaml").string());
        cfg.solver.t_end = 5.0;
        cfg.initial.perturbation_h1 = 1e-3;
        cfg.seed = 42;
        cmd_compare(cfg, (kScratch / "det_a").string());
        cmd_compare(cfg, (kScratch / "det_b").string());
        for (const char* f : {"modulation.csv", "effective.csv", "conservation.csv", "summary.txt"}) {
            const auto a = slurp(kScratch / "det_a" / f);
            o.require(!a.empty() && a == slurp(kScratch / "det_b" / f), std::string(f) + " byte-identical");
        }
    });

    std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    fs::remove_all(kScratch);
    return failures == 0 ? 0 : 1;
}
