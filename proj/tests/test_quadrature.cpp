#include <doctest.h>

#include "qclock/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace qclock;

TEST_CASE("Gauss-Legendre integrates polynomials to degree 2n-1")
{
    for (int n : {1, 2, 3, 8, 21, 64}) {
        const auto rule = gauss_legendre(n);
        double total = 0;
        for (double w : rule.weights) total += w;
        CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0;
            for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("generalized Gauss-Laguerre has normalized weights and exact moments")
{
    for (double alpha : {1.0, 6.0, 51.0, 1001.0}) {
        const auto rule = gauss_laguerre(32, alpha);
        double total = 0, mean = 0, second = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            total += rule.weights[i];
            mean += rule.weights[i] * rule.nodes[i];
            second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
            CHECK(rule.nodes[i] > 0);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        // Moments of the Gamma(alpha + 1) distribution.
        CHECK(mean == doctest::Approx(alpha + 1).epsilon(1e-13));
        CHECK(second == doctest::Approx((alpha + 1) * (alpha + 2)).epsilon(1e-13));
    }
}

TEST_CASE("sphere grid carries total measure pi")
{
    for (int twice_j : {0, 1, 2, 5, 20}) {
        const auto grid = SphereGrid<double>::for_spin(Spin::from_twice(twice_j));
        CHECK(std::abs(grid.total_weight() - std::numbers::pi) < 1e-12);
        CHECK(grid.legendre_order() == twice_j + 2);
        CHECK(grid.azimuth_count() == 2 * (twice_j + 2));
        for (const auto& n : grid.nodes()) {
            CHECK(std::abs(std::tan(n.polar() / 2) - std::abs(n.xi())) < 1e-12 * (1 + std::abs(n.xi())));
        }
    }
}

TEST_CASE("gauge grid averages trigonometric polynomials exactly")
{
    const auto g = GaugeGrid<double>::uniform();
    double c1 = 0, c2sq = 0;
    for (std::size_t k = 0; k < g.rule.size(); ++k) {
        c1 += g.rule.weights[k] * std::cos(g.rule.nodes[k] + 0.3);
        c2sq += g.rule.weights[k] * std::pow(std::cos(g.rule.nodes[k]), 2);
    }
    CHECK(std::abs(c1) < 1e-15);
    CHECK(c2sq == doctest::Approx(0.5).epsilon(1e-15));
}
