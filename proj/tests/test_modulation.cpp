#include <doctest.h>

#include <cmath>

#include "bkdv/errors.hpp"
#include "bkdv/modulation.hpp"

using namespace bkdv;

TEST_CASE("Omega is close to its leading form for small alpha") {
    const Grid g(400.0, 4096);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto om = omega_matrix(fam, {1.0, 0.0, 0.05});
    CHECK(om.determinant >= om.determinant_floor);
    CHECK(om.matrix(0, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(om.matrix(0, 1) == doctest::Approx(-4.5).epsilon(1e-10));
    CHECK(om.leading_error / 0.05 < 4.0);
    CHECK(((om.inverse * om.matrix) - Eigen::Matrix2d::Identity()).norm() < 1e-12);
}

TEST_CASE("large alpha is inadmissible") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    CHECK_THROWS_AS(omega_matrix(fam, {1.0, 0.0, 0.9}), AdmissibilityError);
}

TEST_CASE("Jacobian matches finite differences of the residual") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto u = fam.profile(1.1, 0.3) +
                   GridFunction::sample(g, [](double x) { return 0.01 * std::exp(-(x - 1.0) * (x - 1.0)); });
    const double alpha = 0.2, a = 0.2, c = 1.05, h = 1e-6;
    const auto j = modulation_jacobian(u, fam, alpha, a, c);
    const Eigen::Vector2d da = (modulation_residual(u, fam, alpha, a + h, c) - modulation_residual(u, fam, alpha, a - h, c)) / (2 * h);
    const Eigen::Vector2d dc = (modulation_residual(u, fam, alpha, a, c + h) - modulation_residual(u, fam, alpha, a, c - h)) / (2 * h);
    CHECK((j.col(0) - da).norm() < 1e-6);
    CHECK((j.col(1) - dc).norm() < 1e-6);
}

TEST_CASE("pure soliton is recovered exactly") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto st = decompose(fam.profile(1.3, 2.5), fam, 0.2);
    CHECK(st.a == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(st.c == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(st.xi_h1 < 1e-9);
}

TEST_CASE("perturbed soliton decomposes with orthogonal fluctuation") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto bump = GridFunction::sample(g, [](double x) { return 0.005 * std::exp(-(x - 2.0) * (x - 2.0)); });
    const auto st = decompose(fam.profile(1.0, 0.0) + bump, fam, 0.2);
    CHECK(st.res1 < 1e-12);
    CHECK(st.res2 < 1e-12);
    CHECK(st.iterations <= 10);
    CHECK((st.xi_b + st.xi_g - st.xi).max_abs() < 1e-14);
    CHECK(st.sigma > 0.0);
}

TEST_CASE("tube and interval exits are reported") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    DecomposeOptions o;
    o.compute_split = false;
    const auto big = GridFunction::sample(g, [](double x) { return 0.3 * std::exp(-(x - 10.0) * (x - 10.0)); });
    CHECK_THROWS_AS(decompose(fam.profile(1.0, 0.0) + big, fam, 0.2, std::nullopt, o), TubeExitError);
    o.interval = {0.5, 1.2};
    CHECK_THROWS_AS(decompose(fam.profile(1.5, 0.0), fam, 0.2, std::nullopt, o), IntervalExitError);
}

TEST_CASE("tracking lifts the position across the seam") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    std::vector<double> ts;
    std::vector<GridFunction> us;
    for (int i = 0; i < 5; ++i) {
        ts.push_back(i);
        us.push_back(fam.profile(1.0, g.wrap(37.0 + 1.0 * i)));
    }
    DecomposeOptions o;
    o.compute_split = false;
    const auto out = track(ts, us, fam, 0.2, o);
    REQUIRE(out.size() == 5);
    CHECK(out.back().a == doctest::Approx(41.0).epsilon(1e-9));
}
