#include <catch2/catch_amalgamated.hpp>

#include "casimir/quadrature.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace casimir;

TEST_CASE("mapped Gauss-Legendre integrates exponential moments") {
    const QuadratureRule r = make_rule(RuleKind::GaussLegendreMapped, 64, 1.0);
    CHECK(integrate(r, [](double x) { return std::exp(-x); }) == Catch::Approx(1.0).epsilon(1e-10));
    CHECK(integrate(r, [](double x) { return x * std::exp(-x); }) == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mapped rule matches an adaptive oracle on a rational-damped integrand") {
    const QuadratureRule r = make_rule(RuleKind::GaussLegendreMapped, 96, 1.0);
    const double mine = integrate(r, [](double x) { return std::exp(-2.0 * x) / (1.0 + x * x); });
    const double ref = oracles::adaptive_quad_to_inf(
        [](double x) { return std::exp(-2.0 * x) / (1.0 + x * x); }, 0.0, 1e-13);
    CHECK(mine == Catch::Approx(ref).epsilon(1e-8));
}

TEST_CASE("tanh-sinh rule reproduces finite-interval unity to 1e-12") {
    const QuadratureRule r = make_rule(RuleKind::TanhSinh, 180, 2.5);
    CHECK(integrate(r, [](double) { return 1.0; }) == Catch::Approx(2.5).epsilon(1e-12));
    // endpoint-singular integrand, the reason this rule exists
    CHECK(integrate(r, [](double x) { return 1.0 / std::sqrt(x); }) ==
          Catch::Approx(2.0 * std::sqrt(2.5)).epsilon(1e-10));
}

TEST_CASE("Gauss-Laguerre rule integrates plain dx moments") {
    const QuadratureRule r = make_rule(RuleKind::GaussLaguerre, 32, 1.0);
    CHECK(integrate(r, [](double x) { return std::exp(-x); }) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(integrate(r, [](double x) { return x * x * std::exp(-x); }) == Catch::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("rule invariants: positive weights, increasing nodes") {
    for (RuleKind k : {RuleKind::GaussLegendreMapped, RuleKind::TanhSinh, RuleKind::GaussLaguerre}) {
        const QuadratureRule r = make_rule(k, 48, 1.0);
        for (int i = 0; i < r.size(); ++i) {
            CHECK(r.weights[i] > 0.0);
            if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
        }
    }
}

TEST_CASE("make_rule validates its arguments") {
    CHECK_THROWS_AS(make_rule(RuleKind::GaussLegendreMapped, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_rule(RuleKind::GaussLegendreMapped, 16, -1.0), std::invalid_argument);
}

TEST_CASE("mirrored full-line rule doubles the half-line") {
    const QuadratureRule half = make_rule(RuleKind::GaussLegendreMapped, 24, 1.0);
    const QuadratureRule full = mirror_full_line(half);
    REQUIRE(full.size() == 48);
    const double got = integrate(full, [](double x) { return std::exp(-std::cosh(x)); });
    const double ref = 2.0 * oracles::adaptive_quad_to_inf(
        [](double x) { return std::exp(-std::cosh(x)); }, 0.0, 1e-13);
    CHECK(got == Catch::Approx(ref).epsilon(1e-9));
}
