#ifndef QCLOCK_CLASSICAL_HPP
#define QCLOCK_CLASSICAL_HPP

// Closed-form classical double oscillator under the energy constraint. This is
// the reference the quantum constructions are compared against.

#include "qclock/types.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qclock {

template <typename Real = double>
struct ClassicalConfig {
    Real A = 0;          // amplitude of oscillator 1
    Real B = 0;          // amplitude of oscillator 2
    Real phi = 0;        // initial phase of oscillator 1
    Real phi_prime = 0;  // initial phase of oscillator 2
    Real omega = 1;
    Real E = 0;

    void validate() const
    {
        if (!(A >= 0) || !(B >= 0)) throw std::invalid_argument("classical config: amplitudes must be non-negative");
        if (!(omega > 0)) throw std::invalid_argument("classical config: omega must be positive");
    }

    /// Gauge-invariant phase difference phi - phi'.
    Real phase_difference() const { return phi - phi_prime; }
};

template <typename Real>
struct PhaseSpacePoint {
    Real q1, p1, q2, p2;
};

/// Position and momentum of both oscillators at proper time tau.
template <typename Real>
PhaseSpacePoint<Real> trajectory(const ClassicalConfig<Real>& cfg, Real tau)
{
    const Real w = cfg.omega;
    const Real psi1 = w * tau + cfg.phi;
    const Real psi2 = w * tau + cfg.phi_prime;
    return {cfg.A * std::cos(psi1), cfg.A * w * std::sin(psi1),
            cfg.B * std::cos(psi2), cfg.B * w * std::sin(psi2)};
}

/// (A w)^2 + (B w)^2 - E. The amplitude form of the constraint carries no
/// factors of 1/2, so it is off by a factor 2 from the Hamiltonian form.
template <typename Real>
Real constraint_residual(const ClassicalConfig<Real>& cfg)
{
    const Real aw = cfg.A * cfg.omega;
    const Real bw = cfg.B * cfg.omega;
    return aw * aw + bw * bw - cfg.E;
}

/// Relative on-shell test against max(|E|, 1).
template <typename Real>
bool on_shell(const ClassicalConfig<Real>& cfg, Real rel_tol = Real(1e-10))
{
    using std::abs;
    return abs(constraint_residual(cfg)) <= rel_tol * std::max(abs(cfg.E), Real(1));
}

/// Hamiltonian-form energy 1/2 (p^2 + w^2 q^2) summed over both oscillators.
template <typename Real>
Real oscillator_energy(const PhaseSpacePoint<Real>& x, Real omega)
{
    const Real w2 = omega * omega;
    return Real(0.5) * (x.p1 * x.p1 + w2 * x.q1 * x.q1) + Real(0.5) * (x.p2 * x.p2 + w2 * x.q2 * x.q2);
}

/// xi = (A/B) exp(i (phi - phi')), the stereographic label of the reduced
/// phase space. B = 0 is the chart pole.
template <typename Real>
std::complex<Real> reduced_coordinate(const ClassicalConfig<Real>& cfg)
{
    if (cfg.B == Real(0)) throw ChartSingularity("reduced_coordinate: B = 0 is the pole of the xi chart");
    return std::polar(cfg.A / cfg.B, cfg.phase_difference());
}

/// Same-time shift of both phases by eps * omega * t (a reparameterization of
/// the lapse).
template <typename Real>
ClassicalConfig<Real> gauge_shift(ClassicalConfig<Real> cfg, Real eps, Real t)
{
    const Real shift = eps * cfg.omega * t;
    cfg.phi += shift;
    cfg.phi_prime += shift;
    return cfg;
}

/// q1 as a function of the reading q2 of oscillator 2, using the principal
/// branch of arccos. Agrees with the trajectory on half-periods where
/// omega tau + phi' lies in [0, pi] (mod 2 pi); a position clock is two-to-one
/// per period.
template <typename Real>
Real classical_clock_readout(const ClassicalConfig<Real>& cfg, Real q2)
{
    if (!(cfg.B > 0)) throw ChartSingularity("classical_clock_readout: B must be positive");
    using std::abs;
    if (abs(q2) > cfg.B) throw std::domain_error("clock reading outside amplitude range");
    return cfg.A * std::cos(std::acos(q2 / cfg.B) - cfg.phi_prime + cfg.phi);
}

/// On-shell configuration with energy E split according to |xi| = A/B and
/// phase difference arg(xi). Inverse of reduced_coordinate at fixed E.
template <typename Real>
ClassicalConfig<Real> config_from_reduced(std::complex<Real> xi, Real E, Real omega, Real phi_prime = 0)
{
    using std::abs;
    const Real norm = std::sqrt(E) / omega;
    const Real s = abs(xi) / std::sqrt(Real(1) + std::norm(xi));
    const Real c = Real(1) / std::sqrt(Real(1) + std::norm(xi));
    ClassicalConfig<Real> cfg;
    cfg.A = norm * s;
    cfg.B = norm * c;
    cfg.phi_prime = phi_prime;
    cfg.phi = phi_prime + std::arg(xi);
    cfg.omega = omega;
    cfg.E = E;
    return cfg;
}

} // namespace qclock

#endif // QCLOCK_CLASSICAL_HPP
