#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "bkdv/errors.hpp"
#include "bkdv/pde_solver.hpp"
#include "bkdv/soliton.hpp"

using namespace bkdv;

TEST_CASE("linear modes rotate exactly") {
    const Grid g(2.0 * M_PI, 64);
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    const PdeSolver s(g, Nonlinearity::zero(), BottomProfile::zero(), cfg);
    const auto tr = s.evolve(GridFunction::sample(g, [](double x) { return std::cos(3.0 * x); }));
    // u_t = -u_xxx moves cos(kx) to cos(kx + k³t).
    const auto ref = GridFunction::sample(g, [](double x) { return std::cos(3.0 * x + 27.0); });
    CHECK((tr.states.back() - ref).max_abs() < 1e-12);
}

TEST_CASE("p=2 soliton travels at speed c") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const SolitonFamily fam(nl, g);
    SolverConfig cfg;
    cfg.t_end = 2.0;
    cfg.output_stride = 1000;
    const PdeSolver s(g, nl, BottomProfile::zero(), cfg);
    const auto tr = s.evolve(fam.profile(1.0, -10.0));
    CHECK(tr.times.size() == 3);
    CHECK(sobolev_norm_h1(tr.states.back() - fam.profile(1.0, -8.0)) < 1e-9);
}

TEST_CASE("constant bottom shifts the speed") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const SolitonFamily fam(nl, g);
    SolverConfig cfg;
    cfg.t_end = 1.0;
    const PdeSolver s(g, nl, BottomProfile::constant(0.2), cfg);
    const auto tr = s.evolve(fam.profile(1.0, 0.0));
    CHECK(sobolev_norm_h1(tr.states.back() - fam.profile(1.0, 0.8)) < 1e-9);
}

TEST_CASE("backward steps undo forward steps") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const PdeSolver s(g, nl, BottomProfile::static_bump(0.05, 0.2), {});
    const auto u0 = SolitonFamily(nl, g).profile(1.0, -5.0);
    auto u = u0;
    for (int i = 0; i < 200; ++i) u = s.step(u, i * 1e-3, 1e-3);
    for (int i = 200; i > 0; --i) u = s.step(u, i * 1e-3, -1e-3);
    CHECK(sobolev_norm_h1(u - u0) < 1e-8);
}

TEST_CASE("halving dt shrinks the terminal error at fourth order") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const auto b = BottomProfile::static_bump(0.05, 0.2);
    const auto u0 = SolitonFamily(nl, g).profile(1.2, -4.0);
    auto run = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 2.0;
        cfg.output_stride = 100000;
        return PdeSolver(g, nl, b, cfg).evolve(u0).states.back();
    };
    const auto u1 = run(8e-3), u2 = run(4e-3), u3 = run(2e-3);
    const double ratio = sobolev_norm_h1(u1 - u2) / sobolev_norm_h1(u2 - u3);
    CHECK(ratio >= 8.0);
}

TEST_CASE("N=512 and N=1024 agree on a bump passage") {
    const auto nl = Nonlinearity::power(2);
    const auto b = BottomProfile::static_bump(0.02, 0.1);
    SolverConfig cfg;
    cfg.t_end = 5.0;
    cfg.output_stride = 100000;
    const Grid coarse(80.0, 512), fine(80.0, 1024);
    const auto uc = PdeSolver(coarse, nl, b, cfg).evolve(SolitonFamily(nl, coarse).profile(1.0, -3.0)).states.back();
    const auto uf = PdeSolver(fine, nl, b, cfg).evolve(SolitonFamily(nl, fine).profile(1.0, -3.0)).states.back();
    std::vector<double> even(512);
    for (std::size_t j = 0; j < 512; ++j) even[j] = uf[2 * j];
    CHECK(sobolev_norm_h1(uc - GridFunction(coarse, even)) <= 1e-8);
}

TEST_CASE("configuration and stability guards") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    SolverConfig bad;
    bad.integrator = "rk4";
    CHECK_THROWS_AS(PdeSolver(g, nl, BottomProfile::zero(), bad), InputError);
    SolverConfig big;
    big.dt = 0.5;
    const PdeSolver s(g, nl, BottomProfile::zero(), big);
    CHECK(s.stability_number(SolitonFamily(nl, g).profile(1.0, 0.0)) > 2.0);
    CHECK_THROWS_AS(s.evolve(SolitonFamily(nl, g).profile(1.0, 0.0)), InputError);
}

TEST_CASE("overflow is reported with a time stamp") {
    const Grid g(80.0, 256);
    const auto nl = Nonlinearity::power(2);
    const PdeSolver s(g, nl, BottomProfile::zero(), {});
    const auto u = GridFunction::sample(g, [](double x) { return 1e200 / std::cosh(x); });
    try {
        s.step(u, 2.0, 1e-3);
        FAIL("expected blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.time() == doctest::Approx(2.001));
    }
}

TEST_CASE("snapshots round-trip bit for bit") {
    const Grid g(80.0, 256);
    const auto nl = Nonlinearity::power(2);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    cfg.output_stride = 10;
    const auto b = BottomProfile::static_bump(0.02, 0.1);
    const auto tr = PdeSolver(g, nl, b, cfg).evolve(SolitonFamily(nl, g).profile(1.0, 0.0));
    const auto path = (std::filesystem::temp_directory_path() / "bkdv_snapshots.bin").string();
    write_snapshots(path, tr, cfg, nl, b);
    const auto back = read_snapshots(path);
    REQUIRE(back.states.size() == tr.states.size());
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
        CHECK(back.times[i] == tr.times[i]);
        CHECK((back.states[i] - tr.states[i]).max_abs() == 0.0);
    }
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".json");
}
