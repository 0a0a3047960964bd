#include <doctest.h>

#include <cmath>

#include "bkdv/errors.hpp"
#include "bkdv/hessian.hpp"
#include "bkdv/reg_symplectic.hpp"

using namespace bkdv;

TEST_CASE("p=2 spectrum at c=1: one negative eigenvalue, zero mode along the translation tangent") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto r = spectrum(fam, 1.0, 0.0, 4);
    CHECK(r.negative_count == 1);
    CHECK(r.eigenvalues[0] == doctest::Approx(-1.25).epsilon(1e-8));
    CHECK(std::abs(r.eigenvalues[1]) < 1e-6);
    CHECK(r.zero_mode_cosine > 1.0 - 1e-8);
    CHECK(r.nullspace_residual < 1e-8);
}

TEST_CASE("iterative and dense solvers agree") {
    const Grid g(40.0, 256);
    const SolitonFamily fam(Nonlinearity::power(3), g);
    SpectrumOptions d, it;
    d.method = EigenMethod::dense;
    it.method = EigenMethod::iterative;
    const auto a = spectrum(fam, 1.0, 0.0, 3, d);
    const auto b = spectrum(fam, 1.0, 0.0, 3, it);
    for (int i = 0; i < 3; ++i) CHECK(a.eigenvalues[i] == doctest::Approx(b.eigenvalues[i]).epsilon(1e-8));
}

TEST_CASE("constrained minimizer satisfies its Euler-Lagrange equation") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto r = coercivity(fam, {1.0, 0.0, 0.1});
    CHECK(r.sigma > 0.0);
    CHECK(r.sigma < r.second);
    CHECK(r.constraint_residual < 1e-9);
    CHECK(r.euler_lagrange_residual < 1e-6);
    CHECK(l2_norm(r.eta) == doctest::Approx(1.0));
    CHECK(r.gamma > 0.0);
    // σ is small compared with c and of order α.
    CHECK(r.sigma / 0.1 > 1.0);
    CHECK(r.sigma / 0.1 < 8.0);
    const auto tb = trial_function_bound(fam, {1.0, 0.0, 0.1});
    CHECK(tb.rayleigh >= r.sigma - 1e-10);
}

TEST_CASE("anisotropic split is orthogonal") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    const auto r = coercivity(fam, {1.0, 0.0, 0.1});
    const auto xi = project_admissible(GridFunction::sample(g, [](double x) { return x * std::exp(-0.1 * x * x); }), r);
    CHECK(std::abs(inner_product(xi, r.q)) < 1e-10);
    CHECK(std::abs(inner_product(xi, r.reg_scaling)) < 1e-10);
    const auto [b, gp] = anisotropic_split(xi, r.eta);
    CHECK(std::abs(inner_product(gp, r.eta)) < 1e-12);
    CHECK((b + gp - xi).max_abs() < 1e-14);
}

TEST_CASE("unstable speeds are refused") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(6), g);
    CHECK_THROWS_AS(coercivity(fam, {1.0, 0.0, 0.1}), StabilityError);
}

TEST_CASE("frozen ground states for p=3 and p=4") {
    const Grid g(80.0, 512);
    CHECK(spectrum(SolitonFamily(Nonlinearity::power(3), g), 1.0, 0.0, 2).eigenvalues[0] == doctest::Approx(-3.0).epsilon(1e-8));
    CHECK(spectrum(SolitonFamily(Nonlinearity::power(4), g), 1.0, 0.0, 2).eigenvalues[0] == doctest::Approx(-5.25).epsilon(1e-8));
}
