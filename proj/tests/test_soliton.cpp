#include <doctest.h>

#include <cmath>

#include "bkdv/errors.hpp"
#include "bkdv/soliton.hpp"

using namespace bkdv;

TEST_CASE("p=2 profile: peak, residual and scaling law") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto q = fam.profile(1.0, 0.0);
    CHECK(q[256] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(fam.peak(1.0) == doctest::Approx(1.5));
    CHECK(fam.residual(q, 1.0) <= 1e-8);
    CHECK(fam.peak(4.0) == doctest::Approx(6.0));
    // Q_4(x) = 4 Q_1(2x) = 6 sech²(x).
    const auto q4 = fam.profile(4.0, 0.0);
    const auto ref = GridFunction::sample(g, [](double x) { return 6.0 / (std::cosh(x) * std::cosh(x)); });
    CHECK((q4 - ref).max_abs() < 1e-12);
}

TEST_CASE("p=2 momentum and tangent identities") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto q = fam.profile(1.0, 0.0);
    const auto zn = fam.scaling_tangent(1.0, 0.0);
    CHECK(inner_product(q, q) == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(inner_product(q, zn) == doctest::Approx(4.5).epsilon(1e-10));
    CHECK(integral(zn) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fam.delta(1.0) == doctest::Approx(3.0));
    CHECK(fam.delta_prime(1.0) == doctest::Approx(4.5));
    CHECK(fam.integral_scaling_tangent(1.0) == doctest::Approx(3.0));
    const auto [d, dp] = delta_and_derivative(1.0, Nonlinearity::power(2), g);
    CHECK(d == doctest::Approx(3.0));
    CHECK(dp == doctest::Approx(4.5));
    CHECK(fam.delta(2.0) == doctest::Approx(3.0 * std::pow(2.0, 1.5)));
}

TEST_CASE("scaling tangent matches a centered difference in c") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(3), g);
    const double h = 1e-5;
    const auto fd = (1.0 / (2.0 * h)) * (fam.profile(1.2 + h, 1.0) - fam.profile(1.2 - h, 1.0));
    CHECK((fd - fam.scaling_tangent(1.2, 1.0)).max_abs() < 1e-8);
    const auto fd2 = (1.0 / (2.0 * h)) * (fam.scaling_tangent(1.2 + h, 1.0) - fam.scaling_tangent(1.2 - h, 1.0));
    CHECK((fd2 - fam.scaling_tangent_dc(1.2, 1.0)).max_abs() < 1e-7);
}

TEST_CASE("p=3 scaling tangent has zero mean") {
    const Grid g(80.0, 1024);
    const SolitonFamily fam(Nonlinearity::power(3), g);
    CHECK(std::abs(integral(fam.scaling_tangent(1.0, 0.0))) < 1e-10);
}

TEST_CASE("general construction reproduces the closed forms") {
    const Grid g(80.0, 512);
    for (int p : {2, 3}) {
        const auto nl = Nonlinearity::power(p);
        const auto q = construct_general(1.0, nl, g);
        CHECK((q - SolitonFamily(nl, g).profile(1.0, 0.0)).max_abs() <= 1e-7);
    }
    const auto mixed = Nonlinearity::polynomial({0.0, 0.0, 1.0, 0.5});
    const SolitonFamily fm(mixed, g);
    CHECK(fm.residual(fm.profile(1.0, 0.0), 1.0) < 1e-8);
    CHECK(fm.delta_prime(1.0) > 0.0);
}

TEST_CASE("critical power fails the stability gate") {
    const Grid g(80.0, 512);
    CHECK_THROWS_AS(delta_and_derivative(1.0, Nonlinearity::power(5), g), StabilityError);
    CHECK_THROWS_AS(delta_and_derivative(1.0, Nonlinearity::power(6), g), StabilityError);
    CHECK_THROWS_AS(SolitonFamily(Nonlinearity::zero(), g), InputError);
}

TEST_CASE("nonlinearity parsing") {
    CHECK(Nonlinearity::parse("power:3").power_exponent() == 3);
    CHECK(Nonlinearity::parse("poly:0,0,1").is_power());
    CHECK_FALSE(Nonlinearity::parse("poly:0,0,1,0.5").is_power());
    CHECK_THROWS_AS(Nonlinearity::parse("poly:1,0,1"), InputError);
    CHECK_THROWS_AS(Nonlinearity::parse("cubic"), InputError);
    const auto nl = Nonlinearity::polynomial({0.0, 0.0, 1.0, 0.5});
    CHECK(nl.F(2.0) == doctest::Approx(8.0 / 3.0 + 0.5 * 4.0));
}

TEST_CASE("frozen reference values for p=3 and p=4") {
    const Grid g(80.0, 1024);
    const SolitonFamily f3(Nonlinearity::power(3), g), f4(Nonlinearity::power(4), g);
    CHECK(f3.delta(1.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f3.delta_prime(1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integral(f3.profile(1.0, 0.0)) == doctest::Approx(4.44288293815837).epsilon(1e-10));
    CHECK(f4.delta(1.0) == doctest::Approx(1.58849885110603).epsilon(1e-10));
    CHECK(f4.delta_prime(1.0) == doctest::Approx(0.264749808517672).epsilon(1e-10));
    CHECK(f4.integral_scaling_tangent(1.0) == doctest::Approx(-0.634351301394925).epsilon(1e-10));
}
