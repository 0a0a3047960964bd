#include <doctest.h>

#include <cmath>

#include "bkdv/effective.hpp"
#include "bkdv/errors.hpp"

using namespace bkdv;

TEST_CASE("flat bottom: constant speed, linear drift") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto run = integrate_effective({0.0, -5.0, 1.2}, BottomProfile::constant(0.1), fam, 3.0);
    CHECK(run.states.back().t == doctest::Approx(3.0));
    CHECK(run.states.back().c == doctest::Approx(1.2));
    CHECK(run.states.back().a == doctest::Approx(-5.0 + 3.0 * 1.1));
}

TEST_CASE("corrected right-hand side for p=2") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto b = BottomProfile::static_bump(0.02, 0.1);
    const EffectiveState s{0.0, -3.0, 1.0};
    const auto [da, dc] = effective_rhs(s, b, fam, EffectiveForm::corrected);
    const double bx = b.b_x(0.0, -3.0);
    // δ = 3, δ' = 9/2, ∫ζ^n = 3 at c = 1.
    CHECK(da == doctest::Approx(1.0 - b.b(0.0, -3.0) + bx * 3.0 / 20.25 * (-4.5)));
    CHECK(dc == doctest::Approx(bx * 3.0 / 4.5));
    const auto [la, lc] = effective_rhs(s, b, fam, EffectiveForm::leading);
    CHECK(lc == 0.0);
    CHECK(la == doctest::Approx(1.0 - b.b(0.0, -3.0)));
}

TEST_CASE("speed returns after passing a bump") {
    const Grid g(160.0, 1024);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto run = integrate_effective({0.0, -40.0, 1.0}, BottomProfile::static_bump(0.02, 0.1), fam, 90.0);
    CHECK_FALSE(run.interval_exit);
    CHECK(run.states.back().a > 40.0);
    CHECK(std::abs(run.states.back().c - 1.0) < 1e-4);
    double cmax = 0.0;
    for (const auto& s : run.states) cmax = std::max(cmax, s.c);
    CHECK(cmax > 1.005);
}

TEST_CASE("interval exit and step guard") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    EffectiveOptions o;
    o.interval = {0.5, 1.01};
    const auto run = integrate_effective({0.0, -20.0, 1.0}, BottomProfile::static_bump(0.5, 0.2), fam, 40.0, o);
    CHECK(run.interval_exit);
    CHECK(run.exit_time > 0.0);
    EffectiveOptions big;
    big.dt = 0.1;
    CHECK_THROWS_AS(integrate_effective({0.0, 0.0, 1.0}, BottomProfile::zero(), fam, 1.0, big), InputError);
}
