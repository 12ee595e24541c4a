#ifndef QCLOCK_SYMBOLS_HPP
#define QCLOCK_SYMBOLS_HPP

// Upper symbols (coherent-state expectation values), lower symbols (weights
// of diagonal representations) and the projection of full phase-space lower
// symbols onto the reduced sphere.

#include "qclock/coherent.hpp"
#include "qclock/fock.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qclock {

/// <xi| op |xi>.
template <typename Real>
std::complex<Real> upper_symbol(const PhysOperator<Real>& op, const ReducedLabel<Real>& label)
{
    if (op.dimension() != label.j.dimension())
        throw std::invalid_argument("upper_symbol: operator dimension does not match 2j + 1");
    const auto ket = su2_coherent(label);
    return ket.amplitudes.dot(op.entries * ket.amplitudes);
}

template <typename Real = double>
struct SpinSymbols {
    Real s1, s2, s3;

    Real radius2() const { return s1 * s1 + s2 * s2 + s3 * s3; }
};

/// Closed-form upper symbols of the Schwinger generators:
///   s1 =  2j Re(xi) / (1 + |xi|^2)
///   s2 = -2j Im(xi) / (1 + |xi|^2)
///   s3 = -j (1 - |xi|^2) / (1 + |xi|^2)
/// The sign of s2 is the one compatible with [S1, S2] = i S3 for states
/// c_n ~ xi^n: <a^dag b> = |beta|^2 conj(xi).
template <typename Real>
SpinSymbols<Real> spin_symbols_closed_form(const ReducedLabel<Real>& label)
{
    const Real j = label.j.template value<Real>();
    const Real denom = Real(1) + std::norm(label.xi);
    return {2 * j * label.xi.real() / denom, -2 * j * label.xi.imag() / denom,
            -j * (Real(1) - std::norm(label.xi)) / denom};
}

/// Lower symbol on the full phase space in chart coordinates (xi, r, theta).
/// `r_degree`, when known, is the polynomial degree in r and lets the radial
/// rule be chosen exact.
template <typename Real = double>
struct FullLowerSymbol {
    std::function<Real(std::complex<Real>, Real, Real)> eval;
    std::optional<int> r_degree;

    Real operator()(std::complex<Real> xi, Real r, Real theta) const { return eval(xi, r, theta); }

    Real at(const CoherentLabel<Real>& label) const { return eval(label.xi(), label.r(), label.theta()); }
};

/// Lower symbol on the reduced sphere. `u_degree`, when known, is the degree
/// in u = (1 - |xi|^2)/(1 + |xi|^2) used to size exact sphere grids.
template <typename Real = double>
struct ReducedLowerSymbol {
    std::function<Real(std::complex<Real>)> eval;
    std::optional<int> u_degree;

    Real operator()(std::complex<Real> xi) const { return eval(xi); }
};

/// o'(xi) = integral o(xi, r, theta) e^{-r} r^{m+1}/(m+1)! dr dtheta/(2 pi),
/// the lower symbol carried to the reduced sphere by integrating out the
/// constraint direction and averaging over the gauge orbit.
template <typename Real>
Real projected_symbol_value(const FullLowerSymbol<Real>& sym, std::complex<Real> xi, const RadialGrid<Real>& radial,
                            const GaugeGrid<Real>& gauge)
{
    CompensatedSum<Real> total;
    for (std::size_t i = 0; i < radial.rule.size(); ++i) {
        CompensatedSum<Real> orbit;
        for (std::size_t k = 0; k < gauge.rule.size(); ++k)
            orbit.add(gauge.rule.weights[k] * sym(xi, radial.rule.nodes[i], gauge.rule.nodes[k]));
        total.add(radial.rule.weights[i] * orbit.value());
    }
    return total.value();
}

template <typename Real>
ReducedLowerSymbol<Real> project_lower_symbol(FullLowerSymbol<Real> sym, int m, RadialGrid<Real> radial,
                                              GaugeGrid<Real> gauge)
{
    if (radial.m != m) throw std::invalid_argument("project_lower_symbol: radial grid built for another sector");
    return {[sym = std::move(sym), radial = std::move(radial), gauge = std::move(gauge)](std::complex<Real> xi) {
                return projected_symbol_value(sym, xi, radial, gauge);
            },
            std::nullopt};
}

/// Default grids: 32-point radial rule (raised when the declared r-degree
/// needs more) and a 256-point gauge orbit.
template <typename Real>
ReducedLowerSymbol<Real> project_lower_symbol(FullLowerSymbol<Real> sym, int m)
{
    int order = RadialGrid<Real>::default_order;
    if (sym.r_degree) order = std::max(order, *sym.r_degree / 2 + 1);
    return project_lower_symbol(std::move(sym), m, RadialGrid<Real>::for_sector(m, order),
                                GaugeGrid<Real>::uniform());
}

/// Operator with diagonal representation ((2j+1)/pi) integral o'(xi)
/// |xi><xi| d^2xi / (1+|xi|^2)^2.
template <typename Real>
PhysOperator<Real> reconstruct_operator(const ReducedLowerSymbol<Real>& sym, Spin j, const SphereGrid<Real>& grid)
{
    return diagonal_operator(j, grid, [&sym](std::complex<Real> xi) { return sym(xi); });
}

template <typename Real>
PhysOperator<Real> reconstruct_operator(const ReducedLowerSymbol<Real>& sym, Spin j)
{
    return reconstruct_operator(sym, j, SphereGrid<Real>::for_spin(j, sym.u_degree.value_or(1)));
}

/// u(xi) = (1 - |xi|^2) / (1 + |xi|^2), the polar coordinate of the sphere.
template <typename Real>
Real sphere_height(std::complex<Real> xi)
{
    const Real n = std::norm(xi);
    return (Real(1) - n) / (Real(1) + n);
}

/// Reduced lower symbol c * u(xi). With c = -(j + 1) it reconstructs S3;
/// with c = -j it is the upper symbol of S3 instead.
template <typename Real = double>
ReducedLowerSymbol<Real> polar_lower_symbol(Real coefficient)
{
    return {[coefficient](std::complex<Real> xi) { return coefficient * sphere_height(xi); }, 1};
}

template <typename Real = double>
ReducedLowerSymbol<Real> s3_lower_symbol(Spin j)
{
    return polar_lower_symbol<Real>(-(j.template value<Real>() + Real(1)));
}

template <typename Real = double>
FullLowerSymbol<Real> constant_symbol(Real value = 1)
{
    return {[value](std::complex<Real>, Real, Real) { return value; }, 0};
}

/// o = r = |alpha|^2 + |beta|^2, gauge independent.
template <typename Real = double>
FullLowerSymbol<Real> radius_symbol(int power = 1)
{
    return {[power](std::complex<Real>, Real r, Real) { return std::pow(r, power); }, power};
}

/// |beta| in chart coordinates.
template <typename Real>
Real chart_beta_modulus(std::complex<Real> xi, Real r)
{
    return std::sqrt(r / (Real(1) + std::norm(xi)));
}

/// Position of oscillator 2, (beta + conj(beta)) / sqrt(2) = sqrt(2) |beta| cos(theta).
template <typename Real>
Real q2_position_symbol(const CoherentLabel<Real>& label)
{
    return std::numbers::sqrt2_v<Real> * label.beta.real();
}

template <typename Real = double>
FullLowerSymbol<Real> q2_symbol()
{
    return {[](std::complex<Real> xi, Real r, Real theta) {
                return std::numbers::sqrt2_v<Real> * chart_beta_modulus(xi, r) * std::cos(theta);
            },
            std::nullopt};
}

/// Position of oscillator 1, (alpha + conj(alpha)) / sqrt(2) with
/// alpha = xi |beta| e^{i theta}.
template <typename Real = double>
FullLowerSymbol<Real> q1_symbol()
{
    return {[](std::complex<Real> xi, Real r, Real theta) {
                return std::numbers::sqrt2_v<Real> * chart_beta_modulus(xi, r) *
                       (xi * std::polar(Real(1), theta)).real();
            },
            std::nullopt};
}

} // namespace qclock

#endif // QCLOCK_SYMBOLS_HPP
