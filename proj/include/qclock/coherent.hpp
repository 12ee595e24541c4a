#ifndef QCLOCK_COHERENT_HPP
#define QCLOCK_COHERENT_HPP

// Two-mode coherent states, their projection onto the physical sector, the
// gauge-phase factorization into SU(2) coherent states, and the diagonal
// (resolution-of-unity type) operators built over the sphere.

#include "qclock/fock.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"
#include "qclock/types.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qclock {

/// Full phase-space label: alpha, beta are the complex amplitudes of the two
/// oscillators.
template <typename Real = double>
struct CoherentLabel {
    std::complex<Real> alpha;
    std::complex<Real> beta;

    Real r() const { return std::norm(alpha) + std::norm(beta); }
    bool in_chart() const { return beta != std::complex<Real>(0); }

    /// Gauge angle arg(beta).
    Real theta() const
    {
        if (!in_chart()) throw ChartSingularity("CoherentLabel: beta = 0 has no chart coordinates");
        return std::arg(beta);
    }

    std::complex<Real> xi() const
    {
        if (!in_chart()) throw ChartSingularity("CoherentLabel: beta = 0 has no chart coordinates");
        return alpha / beta;
    }

    /// Simultaneous phase rotation of both oscillators.
    CoherentLabel gauge_rotated(Real theta0) const
    {
        const auto u = std::polar(Real(1), theta0);
        return {alpha * u, beta * u};
    }

    /// Inverse of the chart map (r, theta, xi) -> (alpha, beta).
    static CoherentLabel from_chart(std::complex<Real> xi, Real r, Real theta)
    {
        const Real mag_beta = std::sqrt(r / (Real(1) + std::norm(xi)));
        const auto beta = std::polar(mag_beta, theta);
        return {xi * beta, beta};
    }
};

/// Point on the reduced phase space: stereographic coordinate xi and spin j.
template <typename Real = double>
struct ReducedLabel {
    std::complex<Real> xi;
    Spin j;

    /// Amplitude-ratio angle, tan(Theta) = |xi|; Theta in [0, pi/2).
    Real amplitude_angle() const { return std::atan(std::abs(xi)); }
};

/// SU(2) coherent state: c_n = (1 + |xi|^2)^{-j} sqrt(C(2j, n)) xi^n,
/// n = 0..2j, evaluated in log space so large j and |xi| neither overflow nor
/// underflow.
template <typename Real>
PhysicalState<Real> su2_coherent(const ReducedLabel<Real>& label)
{
    const int twice_j = label.j.twice();
    const Real mag = std::abs(label.xi);
    const Real log_prefactor = -label.j.template value<Real>() * std::log1p(std::norm(label.xi));
    const std::complex<Real> unit = mag > Real(0) ? label.xi / mag : std::complex<Real>(1);
    CVector<Real> amps(twice_j + 1);
    std::complex<Real> phase(1);
    for (int n = 0; n <= twice_j; ++n) {
        const Real log_mag = log_prefactor + Real(0.5) * log_binomial<Real>(twice_j, n) + log_abs_power(mag, n);
        amps(n) = std::exp(log_mag) * phase;
        phase *= unit;
    }
    return {twice_j, std::move(amps)};
}

template <typename Real>
PhysicalState<Real> su2_coherent(std::complex<Real> xi, Spin j)
{
    return su2_coherent(ReducedLabel<Real>{xi, j});
}

/// Sector-m' component of the two-mode coherent state |alpha, beta>, with the
/// Gaussian prefactor e^{-(|alpha|^2 + |beta|^2)/2} of the unprojected state.
template <typename Real = double>
struct ProjectedCoherent {
    PhysicalState<Real> state;  // unnormalized
    Real norm2;                 // <alpha,beta|P|alpha,beta> = e^{-r} r^{m'} / m'!
    Real log_norm2;
    PhysicalState<Real> unit;   // state / sqrt(norm2) formed in log space, so it survives
                                // underflow of both; zero when the component vanishes
};

/// Applies the exact sector selector to |alpha, beta>: the component on
/// |n, m'-n> is e^{-r/2} alpha^n beta^{m'-n} / sqrt(n! (m'-n)!).
template <typename Real>
ProjectedCoherent<Real> project_coherent(const CoherentLabel<Real>& label, int m_prime)
{
    if (m_prime < 0) throw std::invalid_argument("project_coherent: m' must be non-negative");
    using std::lgamma;
    const Real r = label.r();
    const Real abs_a = std::abs(label.alpha);
    const Real abs_b = std::abs(label.beta);
    const std::complex<Real> ua = abs_a > 0 ? label.alpha / abs_a : std::complex<Real>(1);
    const std::complex<Real> ub = abs_b > 0 ? label.beta / abs_b : std::complex<Real>(1);
    const Real log_norm2 = -r + log_abs_power(r, m_prime) - lgamma(Real(m_prime + 1));
    CVector<Real> amps(m_prime + 1), unit(m_prime + 1);
    for (int n = 0; n <= m_prime; ++n) {
        const Real log_mag = -r / 2 + log_abs_power(abs_a, n) + log_abs_power(abs_b, m_prime - n) -
                             Real(0.5) * (lgamma(Real(n + 1)) + lgamma(Real(m_prime - n + 1)));
        const std::complex<Real> phase = integer_power(ua, n) * integer_power(ub, m_prime - n);
        amps(n) = std::exp(log_mag) * phase;
        unit(n) = std::isfinite(log_norm2) ? std::exp(log_mag - log_norm2 / 2) * phase : std::complex<Real>(0);
    }
    return {PhysicalState<Real>(m_prime, std::move(amps)), std::exp(log_norm2), log_norm2,
            PhysicalState<Real>(m_prime, std::move(unit))};
}

/// Gauge angle and reduced label of a chart point.
template <typename Real = double>
struct GaugeFactorization {
    Real theta;
    ReducedLabel<Real> reduced;

    /// e^{i m' theta}, the phase by which the normalized projected state
    /// differs from the SU(2) coherent state.
    std::complex<Real> phase() const { return std::polar(Real(1), Real(reduced.j.twice()) * theta); }
};

template <typename Real>
GaugeFactorization<Real> factor_gauge_phase(const CoherentLabel<Real>& label, int m_prime)
{
    if (!label.in_chart()) throw ChartSingularity("factor_gauge_phase: beta = 0 is the pole of the xi chart");
    return {std::arg(label.beta), {label.alpha / label.beta, Spin::from_m_prime(m_prime)}};
}

/// Truncated two-mode coherent state e^{-r/2} sum alpha^n1 beta^n2 /
/// sqrt(n1! n2!) |n1, n2> in `space`.
template <typename Real>
CVector<Real> coherent_two_mode(const CoherentLabel<Real>& label, const TwoModeSpace<Real>& space)
{
    using std::lgamma;
    const int cut = space.cutoff();
    const Real abs_a = std::abs(label.alpha);
    const Real abs_b = std::abs(label.beta);
    const std::complex<Real> ua = abs_a > 0 ? label.alpha / abs_a : std::complex<Real>(1);
    const std::complex<Real> ub = abs_b > 0 ? label.beta / abs_b : std::complex<Real>(1);
    CVector<Real> v(space.dimension());
    for (int n1 = 0; n1 <= cut; ++n1)
        for (int n2 = 0; n2 <= cut; ++n2) {
            const Real log_mag = -label.r() / 2 + log_abs_power(abs_a, n1) + log_abs_power(abs_b, n2) -
                                 Real(0.5) * (lgamma(Real(n1 + 1)) + lgamma(Real(n2 + 1)));
            v(space.index(n1, n2)) = std::exp(log_mag) * integer_power(ua, n1) * integer_power(ub, n2);
        }
    return v;
}

/// <xi_a | xi_b> = [(1 + conj(xi_a) xi_b) / sqrt((1+|xi_a|^2)(1+|xi_b|^2))]^{2j}.
/// The base has modulus <= 1, so the power never overflows.
template <typename Real>
std::complex<Real> overlap(const ReducedLabel<Real>& a, const ReducedLabel<Real>& b)
{
    if (a.j != b.j) throw std::invalid_argument("overlap: labels carry different spins");
    const std::complex<Real> base = (Real(1) + std::conj(a.xi) * b.xi) /
                                    std::sqrt((Real(1) + std::norm(a.xi)) * (Real(1) + std::norm(b.xi)));
    return integer_power(base, a.j.twice());
}

/// Operator ((2j+1)/pi) sum_k w_k f(xi_k) |xi_k><xi_k| over a sphere grid,
/// for a real symbol f.
///
/// On a ring of fixed u the kets are c_n(u) e^{i n phi} with c_n real, so
/// the azimuth sum reduces to the Fourier coefficients
///   G(d) = sum_k w_k f(xi_k) e^{i d phi_k},  d = n - n',
/// and M_{nn'} = sum_rings c_n c_n' G(n - n'). This costs
/// O(rings * (azimuths * 2j + (2j)^2)) instead of a full ket product.
template <typename Real, typename Symbol>
PhysOperator<Real> diagonal_operator(Spin j, const SphereGrid<Real>& grid, Symbol&& symbol)
{
    const int dim = j.dimension();
    const int rings = grid.legendre_order();
    const int n_az = grid.azimuth_count();
    const auto& nodes = grid.nodes();

    // e^{2 pi i q / n_az}; the exponent d k is reduced mod n_az exactly.
    std::vector<std::complex<Real>> roots(static_cast<std::size_t>(n_az));
    for (int q = 0; q < n_az; ++q)
        roots[q] = std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * Real(q) / Real(n_az));

    CMatrix<Real> m = CMatrix<Real>::Zero(dim, dim);
    std::vector<Real> weighted(static_cast<std::size_t>(n_az));
    std::vector<std::complex<Real>> g(static_cast<std::size_t>(dim));
    for (int i = 0; i < rings; ++i) {
        const auto* ring = &nodes[static_cast<std::size_t>(i) * n_az];
        for (int k = 0; k < n_az; ++k) weighted[k] = ring[k].weight * static_cast<Real>(symbol(ring[k].xi()));
        for (int d = 0; d < dim; ++d) {
            std::complex<Real> acc(0);
            for (int k = 0; k < n_az; ++k)
                acc += weighted[k] * roots[static_cast<std::size_t>((static_cast<long long>(d) * k) % n_az)];
            g[d] = acc;
        }
        const Real modulus = std::sqrt((Real(1) - ring[0].u) / (Real(1) + ring[0].u));
        const RVector<Real> c = su2_coherent(ReducedLabel<Real>{std::complex<Real>(modulus), j}).amplitudes.real();
        for (int n = 0; n < dim; ++n)
            for (int np = 0; np < dim; ++np) {
                const std::complex<Real> coeff = n >= np ? g[n - np] : std::conj(g[np - n]);
                m(n, np) += c(n) * c(np) * coeff;
            }
    }
    const Real prefactor = Real(dim) / std::numbers::pi_v<Real>;
    m *= prefactor;
    CMatrix<Real> hermitian = Real(0.5) * (m + m.adjoint());
    return {j.twice(), std::move(hermitian)};
}

/// ((2j+1)/pi) integral |xi><xi| d^2xi / (1+|xi|^2)^2 on the given grid.
/// Equal to the identity when the grid is exact for degree 4j.
template <typename Real>
PhysOperator<Real> resolution_of_unity(Spin j, const SphereGrid<Real>& grid)
{
    return diagonal_operator(j, grid, [](std::complex<Real>) { return Real(1); });
}

/// Normalized radial weight e^{-r} r^{m+1} / (m+1)! of the constraint
/// direction; integrates to one and peaks at r = m + 1.
template <typename Real>
Real radial_weight(Real r, int m)
{
    if (r < 0 || m < 0) throw std::invalid_argument("radial_weight: need r >= 0 and m >= 0");
    if (r == Real(0)) return Real(0);
    using std::lgamma;
    return std::exp(Real(m + 1) * std::log(r) - r - lgamma(Real(m + 2)));
}

/// Gaussian with mean and variance m + 1: the large-m limit of radial_weight.
template <typename Real>
Real radial_gaussian_limit(Real r, int m)
{
    const Real var = Real(m + 1);
    const Real d = r - var;
    return std::exp(-d * d / (2 * var)) / std::sqrt(2 * std::numbers::pi_v<Real> * var);
}

} // namespace qclock

#endif // QCLOCK_COHERENT_HPP
