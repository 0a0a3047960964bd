#include <doctest.h>

#include <cmath>

#include "bkdv/errors.hpp"
#include "bkdv/reg_symplectic.hpp"
#include "bkdv/soliton.hpp"

using namespace bkdv;

TEST_CASE("periodic antiderivative needs zero mean") {
    const Grid g(80.0, 512);
    const SolitonFamily fam(Nonlinearity::power(2), g);
    // ∫ζ^n = 3 at c = 1, so K ζ^n is not periodic.
    CHECK_THROWS_AS(apply_K(fam.scaling_tangent(1.0, 0.0)), InputError);
    const auto f = GridFunction::sample(g, [](double x) { return -2.0 * x * std::exp(-x * x); });
    const auto k = apply_K(f);
    CHECK((k - GridFunction::sample(g, [](double x) { return std::exp(-x * x); })).max_abs() < 1e-12);
}

TEST_CASE("regularized inverse undoes d/dx + alpha") {
    const Grid g(80.0, 512);
    const auto f = GridFunction::sample(g, [](double x) { return std::exp(-x * x) * (1.0 + x); });
    for (double a : {0.2, 0.05}) {
        const auto r = apply_reg_inverse(f, a);
        CHECK((derivative(r, 1) + a * r - f).max_abs() < 1e-12);
    }
}

TEST_CASE("line quadrature and Fourier multiplier agree up to the torus correction") {
    const Grid g(400.0, 4096);
    const auto fn = [](double x) { return std::exp(-x * x); };
    const double a = 0.1;
    const auto diff = reg_inverse_line(fn, g, a) - apply_reg_inverse(GridFunction::sample(g, fn), a);
    // Periodic solution = line solution + C e^{-α(x+L/2)}, C = √π e^{α²/4} e^{-αL/2} / (1 - e^{-αL}).
    const double corr = std::sqrt(M_PI) * std::exp(0.25 * a * a - 0.5 * a * 400.0) / -std::expm1(-a * 400.0);
    CHECK(diff.max_abs() == doctest::Approx(corr).epsilon(1e-6));
    CHECK(std::abs(diff[0] + corr) < 1e-6 * corr);
}

TEST_CASE("all six clauses hold for a Gaussian at alpha = 0.1") {
    const Grid g(400.0, 4096);
    const auto phi = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
    const auto r = check_inverse_clauses(phi, phi, 0.1);
    for (int k = 0; k < 6; ++k) CHECK(r.clause[k]);
    CHECK(r.all_pass());
    CHECK(r.values.at("c3_constant") <= 1.0 / std::sqrt(2.0) + 1e-12);
}

TEST_CASE("clause checks refuse a box that is too short for alpha") {
    const Grid g(40.0, 512);
    const auto phi = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
    CHECK_THROWS_AS(check_inverse_clauses(phi, phi, 0.1), InputError);
}
