#include <doctest.h>

#include <cmath>
#include <limits>

#include "bkdv/errors.hpp"
#include "bkdv/grid.hpp"

using namespace bkdv;

namespace {
double q1(double x) {
    const double s = 1.0 / std::cosh(0.5 * x);
    return 1.5 * s * s;
}
}  // namespace

TEST_CASE("grid rejects bad sizes and lengths") {
    CHECK_THROWS_AS(Grid(80.0, 500), InputError);
    CHECK_THROWS_AS(Grid(-1.0, 512), InputError);
    CHECK_THROWS_AS(Grid(80.0, 4), InputError);
    const Grid g(80.0, 512);
    CHECK(g.x(0) == doctest::Approx(-40.0));
    CHECK(g.wrap(41.0) == doctest::Approx(-39.0));
    CHECK(g.wrap(-40.0) == doctest::Approx(-40.0));
    CHECK(g.odd_wavenumber(256) == 0.0);
}

TEST_CASE("grid functions refuse non-finite samples and foreign grids") {
    const Grid g(80.0, 512), h(40.0, 512);
    std::vector<double> v(512, 0.0);
    v[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(GridFunction(g, v), InputError);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(10, 0.0)), InputError);
    CHECK_THROWS_AS(GridFunction::zeros(g) + GridFunction::zeros(h), InputError);
}

TEST_CASE("second derivative of the p=2 soliton equals Q - Q^2") {
    const Grid g(80.0, 512);
    const auto q = GridFunction::sample(g, q1);
    const auto d2 = derivative(q, 2);
    const auto rhs = q - q * q;
    CHECK((d2 - rhs).max_abs() <= 1e-8);
}

TEST_CASE("derivatives are exact on a single mode") {
    const Grid g(2.0 * M_PI, 64);
    const auto f = GridFunction::sample(g, [](double x) { return std::sin(5.0 * x); });
    const auto d1 = derivative(f, 1);
    const auto d3 = derivative(f, 3);
    CHECK((d1 - GridFunction::sample(g, [](double x) { return 5.0 * std::cos(5.0 * x); })).max_abs() < 1e-12);
    CHECK((d3 - GridFunction::sample(g, [](double x) { return -125.0 * std::cos(5.0 * x); })).max_abs() < 1e-10);
    CHECK_THROWS_AS(derivative(f, 4), InputError);
}

TEST_CASE("norms of Q1 match closed forms") {
    const Grid g(80.0, 4096);
    const auto q = GridFunction::sample(g, q1);
    CHECK(inner_product(q, q) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(integral(q) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(l1_norm(q) == doctest::Approx(6.0).epsilon(1e-12));
    // ∫Q² + Q'² = 6 + 6/5.
    CHECK(sobolev_norm_h1(q) == doctest::Approx(std::sqrt(7.2)).epsilon(1e-10));
}

TEST_CASE("Fourier shift translates band-limited data") {
    const Grid g(80.0, 512);
    const auto q = GridFunction::sample(g, q1);
    const auto s = shift(q, 3.7);
    const auto ref = GridFunction::sample(g, [](double x) { return q1(x - 3.7); });
    CHECK((s - ref).max_abs() < 1e-12);
}
