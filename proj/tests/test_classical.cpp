#include <doctest.h>

#include "qclock/classical.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qclock;
using std::numbers::pi;

namespace {

ClassicalConfig<double> make(double A, double B, double phi, double phi_prime, double omega = 1, double E = 0)
{
    ClassicalConfig<double> c;
    c.A = A;
    c.B = B;
    c.phi = phi;
    c.phi_prime = phi_prime;
    c.omega = omega;
    c.E = E;
    return c;
}

} // namespace

TEST_CASE("trajectory at simple points")
{
    auto x = trajectory(make(1, 0, 0, 0), 0.0);
    CHECK(x.q1 == 1.0);
    CHECK(x.p1 == 0.0);

    x = trajectory(make(1, 1, 0, pi / 2), pi / 2);
    CHECK(std::abs(x.q1) < 1e-15);
    CHECK(x.q2 == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("trajectory matches frozen closed-form values")
{
    // 30-digit evaluation of A cos(w t + phi), A w sin(w t + phi), ...
    const auto x = trajectory(make(0.6, 0.8, 0.3, 0.1, 2.0), 0.7);
    CHECK(std::abs(x.q1 - -0.0773066965773148104525857144009497) < 1e-15);
    CHECK(std::abs(x.p1 - 1.18999777254296233841536007837748) < 1e-15);
    CHECK(std::abs(x.q2 - 0.0565897613341623280705518811474116) < 1e-15);
    CHECK(std::abs(x.p2 - 1.59599197856648708950675739382625) < 1e-15);
}

TEST_CASE("constraint residual")
{
    CHECK(constraint_residual(make(1, 0, 0, 0, 1, 1)) == 0.0);
    CHECK(constraint_residual(make(3, 4, 0, 0, 1, 25)) == 0.0);
    CHECK(constraint_residual(make(1, 1, 0, 0, 2, 5)) == doctest::Approx(3.0));
    CHECK(on_shell(make(3, 4, 0, 0, 1, 25)));
    CHECK_FALSE(on_shell(make(1, 1, 0, 0, 2, 5)));
}

TEST_CASE("energy is conserved along the trajectory")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = make(u(rng), u(rng), u(rng) * pi, u(rng) * pi, 0.5 + u(rng));
        const double e0 = oscillator_energy(trajectory(cfg, 0.0), cfg.omega);
        const double period = 2 * pi / cfg.omega;
        for (int k = 0; k <= 200; ++k) {
            const double tau = 10 * period * k / 200.0;
            CHECK(std::abs(oscillator_energy(trajectory(cfg, tau), cfg.omega) - e0) <= 8e-16 * std::max(e0, 1.0) * 4);
        }
    }
}

TEST_CASE("reduced coordinate")
{
    CHECK(reduced_coordinate(make(0, 1, 0.4, 1.3)) == std::complex<double>(0, 0));
    CHECK(std::abs(reduced_coordinate(make(1, 1, 0.7, 0.7)) - std::complex<double>(1, 0)) == 0.0);
    const auto xi = reduced_coordinate(make(1, 2, pi / 3, 0));
    CHECK(std::abs(xi - std::complex<double>(0.25, 0.433012701892219323381861585376)) < 1e-15);
    CHECK_THROWS_AS(reduced_coordinate(make(1, 0, 0, 0)), ChartSingularity);
}

TEST_CASE("reduced coordinate is gauge invariant")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cfg = make(std::abs(u(rng)), 0.1 + std::abs(u(rng)), u(rng), u(rng), 1.0 + std::abs(u(rng)));
        const auto xi = reduced_coordinate(cfg);
        // Dyadic phases and shifts add exactly, so xi is bit-identical.
        const auto dyadic = make(cfg.A, cfg.B, std::round(64 * u(rng)) / 64, std::round(64 * u(rng)) / 64, cfg.omega);
        const auto exact = gauge_shift(dyadic, 1.0, std::round(4 * u(rng)) / (4 * dyadic.omega));
        if (exact.phi - dyadic.phi == exact.phi_prime - dyadic.phi_prime)
            CHECK(reduced_coordinate(exact) == reduced_coordinate(dyadic));
        // Generic shifts: phase difference changes only by rounding of the
        // shifted phases.
        const auto shifted = gauge_shift(cfg, u(rng), u(rng));
        const double ulp_scale = 4 * std::numeric_limits<double>::epsilon() *
                                 (std::abs(shifted.phi) + std::abs(shifted.phi_prime) + 1);
        CHECK(std::abs(reduced_coordinate(shifted) - xi) <= ulp_scale * std::abs(xi) + 1e-300);
    }
}

TEST_CASE("classical clock readout")
{
    CHECK(classical_clock_readout(make(1, 1, 0.3, 0.3), 1.0) == doctest::Approx(1.0));
    CHECK(classical_clock_readout(make(0.5, 1, 0.2, 0.2), 0.6) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(classical_clock_readout(make(1, 1, 0, 0), 1.5), std::domain_error);
    CHECK_THROWS_AS(classical_clock_readout(make(1, 0, 0, 0), 0.0), ChartSingularity);

    // phi - phi' = pi/2, q2 = 0: the trajectory passes q2 = 0 at
    // omega tau + phi' = pi/2 (inside the principal half-period) where q1 = -1.
    const auto cfg = make(1, 1, pi / 2, 0);
    const double tau = pi / 2;
    const auto x = trajectory(cfg, tau);
    CHECK(std::abs(x.q2) < 1e-15);
    CHECK(classical_clock_readout(cfg, 0.0) == doctest::Approx(x.q1).epsilon(1e-15));
    CHECK(classical_clock_readout(cfg, 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("clock readout follows the trajectory on the monotone half-period")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cfg = make(0.1 + u(rng), 0.1 + u(rng), 2 * pi * u(rng), 2 * pi * u(rng), 0.5 + u(rng));
        double worst = 0;
        for (int k = 0; k <= 100; ++k) {
            // omega tau + phi' sweeps [0, pi], where q2 decreases monotonically
            const double psi = pi * k / 100.0;
            const double tau = (psi - cfg.phi_prime) / cfg.omega;
            const auto x = trajectory(cfg, tau);
            worst = std::max(worst, std::abs(classical_clock_readout(cfg, std::clamp(x.q2, -cfg.B, cfg.B)) - x.q1));
        }
        CHECK(worst < 1e-12);
    }
    // On the other half-period the principal branch reads the mirror time.
    const auto cfg = make(1, 1, 1.0, 0.0);
    const auto x = trajectory(cfg, 1.5 * pi);
    CHECK(std::abs(classical_clock_readout(cfg, x.q2) - x.q1) > 0.1);
}

TEST_CASE("config from reduced coordinate is on shell and inverts xi")
{
    const std::complex<double> xi(0.3, -1.1);
    const auto cfg = config_from_reduced(xi, 7.0, 1.5, 0.4);
    CHECK(on_shell(cfg));
    CHECK(std::abs(reduced_coordinate(cfg) - xi) < 1e-15);
    CHECK(cfg.phi_prime == 0.4);
}
