#include <doctest.h>

#include <cmath>
#include <string>

#include "bkdv/config.hpp"
#include "bkdv/errors.hpp"

using namespace bkdv;

TEST_CASE("defaults and explicit values") {
    const auto c = parse_config("grid: {L: 160, N: 1024}\nsolver: {dt: 0.002}\nseed: 7\n");
    CHECK(c.L == 160.0);
    CHECK(c.N == 1024);
    CHECK(c.solver.dt == 0.002);
    CHECK(c.solver.t_end == 10.0);
    CHECK(c.seed == 7);
    CHECK(c.make_nonlinearity().power_exponent() == 2);
}

TEST_CASE("unknown keys name their path") {
    try {
        parse_config("solver: {dtt: 0.1}\n");
        FAIL("accepted an unknown key");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("solver.dtt") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("grid: {L: abc}\n"), InputError);
    CHECK_THROWS_AS(parse_config("bottom: {family: wavy}\n").make_bottom(), InputError);
}

TEST_CASE("alpha from the scaling rule") {
    auto c = parse_config("bottom: {family: static-bump, eps_a: 0.02, eps_x: 0.1}\nmodulation: {s: 0.25}\n");
    CHECK(c.alpha() == doctest::Approx(std::pow(0.002, 0.25)));
    CHECK(c.epsilon_scale() == doctest::Approx(c.alpha()));
    c.modulation.s = 0.6;
    CHECK_THROWS_AS(c.alpha(), InputError);
    c.modulation.alpha = 0.1;
    CHECK(c.alpha() == 0.1);
}

TEST_CASE("dump and parse round-trip") {
    auto c = parse_config("bottom: {family: moving-ramp, eps_a: 0.02, eps_x: 0.1, eps_t: 0.02}\n"
                          "modulation: {alpha: 0.15, interval: [0.6, 1.8]}\ncompare: {xi_bound: 0.5, form: leading}\n");
    const auto d = parse_config(dump_config(c));
    CHECK(dump_config(d) == dump_config(c));
    CHECK(d.modulation.interval.lo == 0.6);
    CHECK(*d.compare.xi_bound == 0.5);
    CHECK(d.compare.form == EffectiveForm::leading);
    CHECK(d.make_bottom().family() == BottomFamily::moving_ramp);
}
