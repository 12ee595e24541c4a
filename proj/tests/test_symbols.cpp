#include <doctest.h>

#include "oracles.hpp"
#include "qclock/symbols.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace qclock;
using cd = std::complex<double>;
using std::numbers::pi;

TEST_CASE("upper symbols of the generators")
{
    for (int tj : {1, 2, 5, 10}) {
        const Spin j = Spin::from_twice(tj);
        const auto s = spin_operators(tj);
        CHECK(upper_symbol(s.S3, ReducedLabel<double>{cd(0), j}).real() == doctest::Approx(-j.value()).epsilon(1e-15));
        CHECK(std::abs(upper_symbol(s.S3, ReducedLabel<double>{std::polar(1.0, 0.7), j})) < 1e-14);
        CHECK(std::abs(upper_symbol(PhysOperator<double>::identity(tj), ReducedLabel<double>{cd(0.3, -2.0), j}) - 1.0) <
              1e-14);
    }
    const auto s = spin_operators(2);
    CHECK(std::abs(upper_symbol(s.S1, ReducedLabel<double>{cd(1), Spin::from_twice(2)}) - 1.0) < 1e-15);
    CHECK_THROWS_AS(upper_symbol(s.S1, ReducedLabel<double>{cd(1), Spin::from_twice(3)}), std::invalid_argument);
}

TEST_CASE("closed-form spin symbols match the Schwinger matrices")
{
    const auto zero = spin_symbols_closed_form(ReducedLabel<double>{cd(0), Spin::from_twice(6)});
    CHECK(zero.s1 == 0.0);
    CHECK(zero.s2 == 0.0);
    CHECK(zero.s3 == -3.0);

    // xi = i, j = 2. With S2 = (a^dag b - a b^dag)/(2i) the expectation is -2.
    const auto at_i = spin_symbols_closed_form(ReducedLabel<double>{cd(0, 1), Spin::from_twice(4)});
    CHECK(at_i.s1 == 0.0);
    CHECK(at_i.s2 == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(std::abs(at_i.s3) < 1e-15);

    std::mt19937_64 rng(21);
    for (int tj : {1, 2, 3, 10, 25, 60}) {
        const Spin j = Spin::from_twice(tj);
        const auto s = spin_operators(tj);
        for (int trial = 0; trial < 50; ++trial) {
            const ReducedLabel<double> label{oracle::random_complex(rng, trial % 2 ? 0.5 : 3.0), j};
            const auto closed = spin_symbols_closed_form(label);
            const cd u1 = upper_symbol(s.S1, label), u2 = upper_symbol(s.S2, label), u3 = upper_symbol(s.S3, label);
            CHECK(std::abs(u1 - closed.s1) < 1e-12);
            CHECK(std::abs(u2 - closed.s2) < 1e-12);
            CHECK(std::abs(u3 - closed.s3) < 1e-12);
            CHECK(std::abs(u1.imag()) + std::abs(u2.imag()) + std::abs(u3.imag()) < 1e-13);
            CHECK(std::abs(closed.radius2() - j.value() * j.value()) < 1e-10);
        }
    }
}

TEST_CASE("projected lower symbols")
{
    std::mt19937_64 rng(5);

    SUBCASE("constant symbol")
    {
        const auto one = project_lower_symbol(constant_symbol<double>(), 7);
        for (int k = 0; k < 10; ++k) CHECK(std::abs(one(oracle::random_complex(rng, 2.0)) - 1.0) < 1e-14);
    }

    SUBCASE("position of oscillator 2 averages to zero")
    {
        for (int m : {5, 50}) {
            const auto q2 = project_lower_symbol(q2_symbol<double>(), m);
            for (int k = 0; k < 100; ++k) CHECK(std::abs(q2(oracle::random_complex(rng, 2.0))) < 1e-14);
        }
    }

    SUBCASE("any f(r, xi) cos(theta + c) averages to zero")
    {
        const FullLowerSymbol<double> sym{
            [](cd xi, double r, double theta) { return (r * r + std::norm(xi)) * std::cos(theta + 0.8); }, std::nullopt};
        const auto projected = project_lower_symbol(sym, 12);
        for (int k = 0; k < 20; ++k) CHECK(std::abs(projected(oracle::random_complex(rng, 1.0))) < 1e-12);
    }

    SUBCASE("radius symbol peaks at the constraint surface")
    {
        double previous = 1;
        for (int m : {10, 100, 1000}) {
            const double value = project_lower_symbol(radius_symbol<double>(), m)(cd(0.4, 0.1));
            CHECK(std::abs(value - (m + 2)) / (m + 2) < 1e-12);
            const double relative = std::abs(value - (m + 1)) / (m + 1);
            CHECK(std::abs(relative - 1.0 / (m + 1)) < 1e-12);

            // r^2 projects to (m+2)(m+3); its relative offset from (m+1)^2 is O(1/m).
            const double second = project_lower_symbol(radius_symbol<double>(2), m)(cd(1.0));
            CHECK(second == doctest::Approx(double(m + 2) * (m + 3)).epsilon(1e-12));
            const double offset = std::abs(second - double(m + 1) * (m + 1)) / (double(m + 1) * (m + 1));
            CHECK(offset < previous);
            CHECK(offset * m == doctest::Approx(3.0).epsilon(0.2));
            previous = offset;
        }
    }

    CHECK_THROWS_AS(project_lower_symbol(constant_symbol<double>(), 3, RadialGrid<double>::for_sector(4),
                                         GaugeGrid<double>::uniform()),
                    std::invalid_argument);
}

TEST_CASE("position symbol of oscillator 2")
{
    CHECK(q2_position_symbol(CoherentLabel<double>{cd(0.3, 1.0), cd(1.5)}) == doctest::Approx(std::sqrt(2.0) * 1.5));
    CHECK(std::abs(q2_position_symbol(CoherentLabel<double>{cd(0.3, 1.0), cd(0, 1.5)})) < 1e-16);
    // Chart form agrees with the label form.
    const CoherentLabel<double> label{cd(0.2, -0.7), std::polar(1.3, 0.4)};
    CHECK(q2_symbol<double>().at(label) == doctest::Approx(q2_position_symbol(label)).epsilon(1e-14));
}

TEST_CASE("reconstruction distinguishes lower from upper symbols")
{
    for (int tj : {1, 2, 10}) {
        const Spin j = Spin::from_twice(tj);
        const auto s3 = spin_operators(tj).S3;
        const auto lower = reconstruct_operator(s3_lower_symbol<double>(j), j);
        CHECK(max_abs_entry<double>(lower.entries - s3.entries) < 1e-10);

        const auto upper = reconstruct_operator(polar_lower_symbol<double>(-j.value()), j);
        CHECK((upper.entries - s3.entries).norm() > 0.1 * s3.entries.norm());
        // Same shape, scaled by j / (j + 1).
        CHECK(max_abs_entry<double>(upper.entries - (j.value() / (j.value() + 1)) * s3.entries) < 1e-10);
    }

    const auto one = reconstruct_operator(ReducedLowerSymbol<double>{[](cd) { return 1.0; }, 0}, Spin::from_twice(7));
    CHECK(max_abs_entry<double>(one.entries - CMatrix<double>::Identity(8, 8)) < 1e-12);
}

TEST_CASE("lower symbol of S3 at j = 1/2 by least squares on an independent quadrature")
{
    // Fit c0 + c1 u + c2 x + c3 y, with (x, y, u) the unit-sphere point,
    // so that its diagonal representation reproduces S3.
    const auto basis = [](int k) {
        return std::function<double(cd)>([k](cd xi) {
            const double d = 1 + std::norm(xi);
            switch (k) {
            case 0: return 1.0;
            case 1: return (1 - std::norm(xi)) / d;
            case 2: return 2 * xi.real() / d;
            default: return 2 * xi.imag() / d;
            }
        });
    };
    Eigen::MatrixXd design(8, 4);
    for (int k = 0; k < 4; ++k) {
        const auto m = oracle::sphere_midpoint_operator(1, basis(k), 400, 64);
        for (int e = 0; e < 4; ++e) {
            design(2 * e, k) = m(e / 2, e % 2).real();
            design(2 * e + 1, k) = m(e / 2, e % 2).imag();
        }
    }
    const auto s3 = spin_operators(1).S3.entries;
    Eigen::VectorXd rhs(8);
    for (int e = 0; e < 4; ++e) {
        rhs(2 * e) = s3(e / 2, e % 2).real();
        rhs(2 * e + 1) = s3(e / 2, e % 2).imag();
    }
    const Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
    CHECK(std::abs(c(0)) < 1e-4);
    CHECK(c(1) == doctest::Approx(-1.5).epsilon(1e-4));  // -(j + 1)
    CHECK(std::abs(c(2)) < 1e-4);
    CHECK(std::abs(c(3)) < 1e-4);
}

TEST_CASE("reconstructed operators of real symbols are Hermitian")
{
    const ReducedLowerSymbol<double> bumpy{
        [](cd xi) { return std::exp(-std::norm(xi - cd(0.5, 0.2))) + xi.imag() * xi.real(); }, std::nullopt};
    for (int tj : {1, 4, 9}) {
        const auto op = reconstruct_operator(bumpy, Spin::from_twice(tj));
        CHECK(op.hermiticity_defect() < 1e-13);
    }
}
