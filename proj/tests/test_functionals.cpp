#include <doctest.h>

#include <cmath>

#include "bkdv/functionals.hpp"
#include "bkdv/pde_solver.hpp"
#include "bkdv/soliton.hpp"

using namespace bkdv;

TEST_CASE("p=2 Hamiltonian of Q1 is -9/5") {
    const Grid g(80.0, 1024);
    const auto nl = Nonlinearity::power(2);
    const auto q = SolitonFamily(nl, g).profile(1.0, 0.0);
    CHECK(hamiltonian(q, BottomProfile::zero(), 0.0, nl) == doctest::Approx(-1.8).epsilon(1e-10));
    CHECK(momentum(q) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(mass(q) == doctest::Approx(6.0).epsilon(1e-10));
    // Constant bottom adds ½β||Q||².
    CHECK(hamiltonian(q, BottomProfile::constant(0.5), 0.0, nl) == doctest::Approx(-1.8 + 1.5).epsilon(1e-10));
}

TEST_CASE("the soliton is a critical point of the Lagrangian") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(3);
    const auto q = SolitonFamily(nl, g).profile(1.3, 2.0);
    CHECK(lagrangian_gradient(q, 1.3, nl).max_abs() < 1e-8);
}

TEST_CASE("Taylor remainders are cubic and quadratic") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(3);
    const auto q = SolitonFamily(nl, g).profile(1.0, 0.0);
    const auto dir = GridFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x) * std::cos(x); });
    const auto r1 = remainders(1e-2 * dir, q, nl);
    const auto r2 = remainders(5e-3 * dir, q, nl);
    CHECK(std::log2(std::abs(r1.n / r2.n)) == doctest::Approx(3.0).epsilon(0.02));
    CHECK(std::log2(l2_norm(r1.dn) / l2_norm(r2.dn)) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Lyapunov value equals its expansion for a flat bottom") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const auto q = SolitonFamily(nl, g).profile(1.0, 0.0);
    const auto xi = GridFunction::sample(g, [](double x) { return 1e-2 * std::exp(-x * x); });
    const auto lv = lyapunov(q, xi, 1.0, 0.0, BottomProfile::zero(), 0.0, nl);
    CHECK(std::abs(lv.value - lv.quadratic) < 1e-12);
    CHECK(lv.value == doctest::Approx(0.5 * hessian_form(xi, q, 1.0, nl) + remainders(xi, q, nl).n));
}

TEST_CASE("rate identities along a bump passage") {
    const Grid g(80.0, 512);
    const auto nl = Nonlinearity::power(2);
    const auto b = BottomProfile::static_bump(0.05, 0.2);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.output_stride = 50;
    const PdeSolver solver(g, nl, b, cfg);
    const auto tr = solver.evolve(SolitonFamily(nl, g).profile(1.0, -3.0));
    const auto r = rate_identities(tr.times, tr.states, b, nl);
    CHECK(r.mass_drift < 1e-10);
    CHECK(r.hamiltonian_rate < 1e-4);
    CHECK(r.momentum_rate < 1e-4);
    CHECK(r.potential_rate < 1e-4);
    CHECK(r.per_sample.size() == tr.times.size());
    CHECK(std::isnan(r.per_sample.front()));
}
