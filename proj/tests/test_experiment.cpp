#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>

#include "bkdv/experiment.hpp"

using namespace bkdv;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

ExperimentConfig short_bump() {
    return parse_config(
        "grid: {L: 80, N: 256}\n"
        "solver: {dt: 0.001, t_end: 2, output_stride: 100}\n"
        "bottom: {family: static-bump, eps_a: 0.02, eps_x: 0.1}\n"
        "modulation: {alpha: 0.2}\n"
        "initial: {c0: 1.0, a0: -5.0}\n"
        "compare: {split: false}\n");
}
}  // namespace

TEST_CASE("noise is deterministic and has the requested norm") {
    const Grid g(80.0, 512);
    const auto a = band_limited_noise(g, 3, 2.0, 10.0, 1e-3);
    const auto b = band_limited_noise(g, 3, 2.0, 10.0, 1e-3);
    const auto c = band_limited_noise(g, 4, 2.0, 10.0, 1e-3);
    CHECK((a - b).max_abs() == 0.0);
    CHECK((a - c).max_abs() > 0.0);
    CHECK(sobolev_norm_h1(a) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("shortest round-trip number format") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("short comparison writes reproducible files") {
    const auto base = fs::temp_directory_path() / "bkdv_experiment_test";
    fs::remove_all(base);
    const auto cfg = short_bump();
    const auto r1 = cmd_compare(cfg, (base / "one").string());
    const auto r2 = cmd_compare(cfg, (base / "two").string());
    CHECK_FALSE(r1.report.tube_exit);
    CHECK(r1.report.max_da < 1e-3);
    CHECK(r1.report.mass_drift < 1e-10);
    CHECK(r1.track.size() == 21);
    for (const char* f : {"modulation.csv", "effective.csv", "conservation.csv", "summary.txt"}) {
        const auto a = slurp(base / "one" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(base / "two" / f));
    }
    CHECK(slurp(base / "one" / "modulation.csv").rfind("t,a,c,", 0) == 0);
    fs::remove_all(base);
}

TEST_CASE("sweep records every run") {
    const auto base = fs::temp_directory_path() / "bkdv_sweep_test";
    fs::remove_all(base);
    auto cfg = short_bump();
    cfg.solver.t_end = 0.5;
    CHECK(cmd_sweep(cfg, "alpha", {0.2, 0.3}, base.string()) == 0);
    const auto csv = slurp(base / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    fs::remove_all(base);
}

TEST_CASE("stability gate fails for the critical power") {
    auto cfg = parse_config("nonlinearity: \"power:5\"\n");
    const auto lines = run_suite(Suite::stability, cfg);
    bool any_fail = false;
    for (const auto& l : lines) any_fail = any_fail || !l.pass;
    CHECK(any_fail);
    const auto rep = cmd_verify(cfg);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("profile dump") {
    const auto base = fs::temp_directory_path() / "bkdv_profile_test";
    fs::remove_all(base);
    profile_dump(parse_config("grid: {L: 40, N: 64}\n"), base.string());
    const auto csv = slurp(base / "profile.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);
    fs::remove_all(base);
}
