#ifndef QCLOCK_CLOCK_HPP
#define QCLOCK_CLOCK_HPP

// Oscillator 2 used as a clock for oscillator 1: the gauge-slice
// (deparameterized) projection of lower symbols, the closed-form clock
// symbol of q1 with its classical limit, the clock operator, and the
// correlation widths that measure how well the clock keeps time.

#include "qclock/classical.hpp"
#include "qclock/coherent.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"
#include "qclock/symbols.hpp"

#include <Eigen/QR>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace qclock {

/// Radial integral of a lower symbol on the gauge slice theta = omega tau + phi':
///   integral o(xi, r, omega tau + phi') e^{-r} r^{m+1} / (m+1)! dr.
/// Only the root theta = omega tau + phi' of q2(theta) = B cos(omega tau + phi')
/// is taken; the mirror root belongs to the other half-period.
template <typename Real>
Real deparameterize(const FullLowerSymbol<Real>& sym, std::complex<Real> xi, const RadialGrid<Real>& radial, Real tau,
                    Real phi_prime, Real omega = 1)
{
    const Real theta = omega * tau + phi_prime;
    CompensatedSum<Real> total;
    for (std::size_t i = 0; i < radial.rule.size(); ++i) total.add(radial.rule.weights[i] * sym(xi, radial.rule.nodes[i], theta));
    return total.value();
}

template <typename Real>
Real deparameterize(const FullLowerSymbol<Real>& sym, std::complex<Real> xi, int m, Real tau, Real phi_prime,
                    Real omega = 1)
{
    return deparameterize(sym, xi, RadialGrid<Real>::for_sector(m), tau, phi_prime, omega);
}

/// Gamma(m + 5/2) / (m + 1)!, via log-gamma (the direct ratio overflows near
/// m = 170).
template <typename Real>
Real clock_gamma_ratio(int m)
{
    if (m < 0) throw std::invalid_argument("clock symbol: m must be non-negative");
    return std::exp(log_gamma_ratio(Real(m) + Real(2.5), Real(m) + Real(2)));
}

/// Closed-form clock symbol of q1:
///   Gamma(m+5/2)/(m+1)! (xi e^{i psi} + conj(xi) e^{-i psi}) / sqrt(1 + |xi|^2),
/// psi = omega tau + phi'. This omits the 1/sqrt(2) of q1 = (alpha +
/// conj(alpha))/sqrt(2); deparameterize(q1_symbol()) differs from it by that
/// constant factor only.
template <typename Real>
Real clock_symbol_q1(std::complex<Real> xi, int m, Real tau, Real phi_prime, Real omega = 1)
{
    const Real psi = omega * tau + phi_prime;
    const Real twice_re = 2 * (xi * std::polar(Real(1), psi)).real();
    return clock_gamma_ratio<Real>(m) * twice_re / std::sqrt(Real(1) + std::norm(xi));
}

/// Amplitude of clock_symbol_q1 as a sinusoid in tau.
template <typename Real>
Real clock_amplitude_q1(std::complex<Real> xi, int m)
{
    return clock_gamma_ratio<Real>(m) * 2 * std::abs(xi) / std::sqrt(Real(1) + std::norm(xi));
}

template <typename Real = double>
struct SinusoidFit {
    Real amplitude;
    Real phase;          // in (-pi, pi]; value = amplitude * cos(omega tau + phase)
    Real max_residual;
};

/// Least-squares fit of values to a cos(omega tau) + b sin(omega tau).
template <typename Real>
SinusoidFit<Real> fit_sinusoid(std::span<const Real> taus, std::span<const Real> values, Real omega)
{
    if (taus.size() != values.size() || taus.size() < 3) throw std::invalid_argument("fit_sinusoid: need >= 3 matching samples");
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, 2>;
    const auto n = static_cast<Eigen::Index>(taus.size());
    Mat design(n, 2);
    RVector<Real> rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = std::cos(omega * taus[i]);
        design(i, 1) = std::sin(omega * taus[i]);
        rhs(i) = values[i];
    }
    const Eigen::Matrix<Real, 2, 1> c = design.colPivHouseholderQr().solve(rhs);
    const Real residual = n > 0 ? (design * c - rhs).cwiseAbs().maxCoeff() : Real(0);
    return {std::hypot(c(0), c(1)), std::atan2(-c(1), c(0)), residual};
}

/// Wraps an angle into (-pi, pi].
template <typename Real>
Real wrap_angle(Real a)
{
    const Real two_pi = 2 * std::numbers::pi_v<Real>;
    a = std::remainder(a, two_pi);
    if (a <= -std::numbers::pi_v<Real>) a += two_pi;
    return a;
}

template <typename Real = double>
struct ClassicalLimitEntry {
    int m;
    Real quantum_amplitude;    // fitted amplitude of clock_symbol_q1 in tau
    Real classical_amplitude;  // A of the on-shell classical config with E = hbar omega (m + 1)
    Real ratio;
    Real deviation;            // ratio / limiting_ratio - 1
    Real fitted_phase;
    Real expected_phase;       // phi' + arg(xi), wrapped
    Real fit_residual;
};

template <typename Real = double>
struct ClassicalLimitReport {
    std::complex<Real> xi;
    Real limiting_ratio;  // 2 sqrt(omega / hbar), the m -> infinity value of ratio
    std::vector<ClassicalLimitEntry<Real>> entries;
};

/// Compares the clock symbol with the classical motion q1 = A cos(omega tau +
/// phi' + arg xi) of the on-shell configuration whose energy matches sector m
/// (E = hbar omega (m + 1)) and whose amplitude ratio is |xi|.
template <typename Real>
ClassicalLimitReport<Real> classical_limit_check(std::complex<Real> xi, std::span<const int> m_list,
                                                std::span<const Real> tau_grid, Real phi_prime = 0, Real omega = 1,
                                                Real hbar = 1)
{
    for (std::size_t i = 1; i < m_list.size(); ++i)
        if (m_list[i] <= m_list[i - 1]) throw std::invalid_argument("classical_limit_check: m list must increase");
    ClassicalLimitReport<Real> report{xi, 2 * std::sqrt(omega / hbar), {}};
    std::vector<Real> values(tau_grid.size());
    for (int m : m_list) {
        for (std::size_t i = 0; i < tau_grid.size(); ++i) values[i] = clock_symbol_q1(xi, m, tau_grid[i], phi_prime, omega);
        const auto fit = fit_sinusoid<Real>(tau_grid, values, omega);
        const auto cfg = config_from_reduced(xi, hbar * omega * Real(m + 1), omega, phi_prime);
        const Real ratio = fit.amplitude / cfg.A;
        report.entries.push_back({m, fit.amplitude, cfg.A, ratio, ratio / report.limiting_ratio - 1, fit.phase,
                                  wrap_angle(phi_prime + std::arg(xi)), fit.max_residual});
    }
    return report;
}

/// Clock operator: ((2j+1)/pi) integral q1'(xi; tau) |xi><xi| dmu with the
/// closed-form clock symbol of sector m = 2j.
template <typename Real>
PhysOperator<Real> clock_operator(Spin j, Real tau, Real phi_prime, const SphereGrid<Real>& grid, Real omega = 1)
{
    const int m = j.twice();
    return diagonal_operator(j, grid, [&](std::complex<Real> xi) { return clock_symbol_q1(xi, m, tau, phi_prime, omega); });
}

/// Gaussian width of a correlation peak, from a least-squares quadratic fit of
/// log|overlap| against (x - center) over the core |overlap| > e^{-1/2}.
template <typename Real = double>
struct GaussianFit {
    Real sigma2;
    Real log_peak;   // constant term
    Real slope;      // linear term
    int points;
};

template <typename Real>
GaussianFit<Real> fit_gaussian_width(std::span<const Real> xs, std::span<const Real> overlaps, Real center)
{
    if (xs.size() != overlaps.size()) throw std::invalid_argument("fit_gaussian_width: size mismatch");
    const Real floor = std::exp(Real(-0.5));
    std::vector<std::size_t> core;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (overlaps[i] > floor) core.push_back(i);
    if (core.size() < 3) throw std::domain_error("fit_gaussian_width: fewer than 3 sweep points resolve the peak");
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, 3>;
    Mat design(static_cast<Eigen::Index>(core.size()), 3);
    RVector<Real> rhs(static_cast<Eigen::Index>(core.size()));
    for (std::size_t k = 0; k < core.size(); ++k) {
        const Real d = xs[core[k]] - center;
        const auto row = static_cast<Eigen::Index>(k);
        design(row, 0) = 1;
        design(row, 1) = d;
        design(row, 2) = d * d;
        rhs(row) = std::log(overlaps[core[k]]);
    }
    const Eigen::Matrix<Real, 3, 1> c = design.colPivHouseholderQr().solve(rhs);
    if (!(c(2) < 0)) throw std::domain_error("fit_gaussian_width: log|overlap| is not concave on the core");
    return {Real(-1) / (2 * c(2)), c(0), c(1), static_cast<int>(core.size())};
}

enum class CorrelationKind { amplitude, amplitude_antipodal, phase };

template <typename Real = double>
struct CorrelationTrace {
    CorrelationKind kind;
    Spin j;
    Real reference;              // Theta of the reference label, or 0 for the phase sweep
    std::vector<Real> sweep;     // Theta' or delta phi
    std::vector<Real> overlaps;  // |<xi'|xi>|
    Real sigma2_fit;
    Real sigma2_pred;

    Real fitted_gaussian(Real x) const
    {
        const Real d = x - reference;
        return std::exp(-d * d / (2 * sigma2_fit));
    }

    std::size_t argmax() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < overlaps.size(); ++i)
            if (overlaps[i] > overlaps[best]) best = i;
        return best;
    }
};

/// Sweep values reference + half_width * (2k/(count-1) - 1); the middle
/// point of an odd count is the reference exactly.
template <typename Real>
std::vector<Real> centered_sweep(Real reference, Real half_width, int count)
{
    if (count < 2) throw std::invalid_argument("sweep: count must be at least 2");
    if (!(half_width > 0)) throw std::invalid_argument("sweep: zero-width sweep");
    std::vector<Real> xs(count);
    for (int k = 0; k < count; ++k)
        xs[k] = reference + half_width * (Real(2 * k) / Real(count - 1) - Real(1));
    return xs;
}

/// |<tan Theta'| tan Theta>| for real labels; equals cos^{2j}(Theta' - Theta).
/// Theta is the amplitude-ratio angle, tan Theta = |xi| = A/B.
template <typename Real>
CorrelationTrace<Real> amplitude_correlation(Real theta_ref, Spin j, std::span<const Real> theta_sweep)
{
    const Real half_pi = std::numbers::pi_v<Real> / 2;
    if (j.twice() < 1) throw std::invalid_argument("amplitude_correlation: needs j >= 1/2");
    const auto at_pole = [&](Real t) { return !(std::abs(t) < half_pi); };
    if (at_pole(theta_ref))
        throw ChartSingularity("amplitude_correlation: Theta = pi/2 is the chart pole (B = 0); "
                               "use the antipodal chart (amplitude_correlation_antipodal)");
    CorrelationTrace<Real> trace{CorrelationKind::amplitude, j, theta_ref, {}, {}, 0, Real(1) / Real(j.twice())};
    const ReducedLabel<Real> ref{std::tan(theta_ref), j};
    for (Real t : theta_sweep) {
        if (at_pole(t)) throw ChartSingularity("amplitude_correlation: sweep reaches the chart pole Theta' = pi/2");
        trace.sweep.push_back(t);
        trace.overlaps.push_back(std::abs(overlap(ReducedLabel<Real>{std::tan(t), j}, ref)));
    }
    trace.sigma2_fit = fit_gaussian_width<Real>(trace.sweep, trace.overlaps, theta_ref).sigma2;
    return trace;
}

/// Amplitude correlation about a reference near or at Theta = pi/2, evaluated
/// on the chart centred on the other pole (eta = 1/xi, tan(pi/2 - Theta) =
/// |eta|). Sweep and reference stay in the original Theta variable.
template <typename Real>
CorrelationTrace<Real> amplitude_correlation_antipodal(Real theta_ref, Spin j, std::span<const Real> theta_sweep)
{
    const Real half_pi = std::numbers::pi_v<Real> / 2;
    if (j.twice() < 1) throw std::invalid_argument("amplitude_correlation: needs j >= 1/2");
    const auto at_pole = [&](Real t) { return !(std::abs(half_pi - t) < half_pi); };
    if (at_pole(theta_ref)) throw ChartSingularity("amplitude_correlation_antipodal: Theta = 0 is this chart's pole");
    CorrelationTrace<Real> trace{CorrelationKind::amplitude_antipodal, j, theta_ref, {}, {}, 0,
                                 Real(1) / Real(j.twice())};
    const ReducedLabel<Real> ref{std::tan(half_pi - theta_ref), j};
    for (Real t : theta_sweep) {
        if (at_pole(t)) throw ChartSingularity("amplitude_correlation_antipodal: sweep reaches Theta' = 0 or pi");
        trace.sweep.push_back(t);
        trace.overlaps.push_back(std::abs(overlap(ReducedLabel<Real>{std::tan(half_pi - t), j}, ref)));
    }
    trace.sigma2_fit = fit_gaussian_width<Real>(trace.sweep, trace.overlaps, theta_ref).sigma2;
    return trace;
}

/// Oscillator energies in quanta for a label of spin j: E1 + E2 = 2j.
template <typename Real>
std::pair<Real, Real> oscillator_quanta(Real xi_mag, Spin j)
{
    const Real twice_j = Real(j.twice());
    const Real rho = xi_mag * xi_mag;
    return {twice_j * rho / (Real(1) + rho), twice_j / (Real(1) + rho)};
}

/// |<xi e^{i dphi}| xi>| across a phase sweep, with predicted width
/// 2j / (E1 E2).
template <typename Real>
CorrelationTrace<Real> phase_correlation(Real xi_mag, Spin j, std::span<const Real> dphi_sweep)
{
    if (!(xi_mag > 0)) throw std::domain_error("phase_correlation: |xi| = 0 carries no phase information");
    if (j.twice() < 1) throw std::invalid_argument("phase_correlation: needs j >= 1/2");
    const auto [e1, e2] = oscillator_quanta(xi_mag, j);
    CorrelationTrace<Real> trace{CorrelationKind::phase, j, 0, {}, {}, 0, Real(j.twice()) / (e1 * e2)};
    const ReducedLabel<Real> ref{std::complex<Real>(xi_mag), j};
    for (Real d : dphi_sweep) {
        trace.sweep.push_back(d);
        trace.overlaps.push_back(std::abs(overlap(ReducedLabel<Real>{std::polar(xi_mag, d), j}, ref)));
    }
    trace.sigma2_fit = fit_gaussian_width<Real>(trace.sweep, trace.overlaps, Real(0)).sigma2;
    return trace;
}

} // namespace qclock

#endif // QCLOCK_CLOCK_HPP
