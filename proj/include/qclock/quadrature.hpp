#ifndef QCLOCK_QUADRATURE_HPP
#define QCLOCK_QUADRATURE_HPP

// Quadrature rules for the reduced sphere, the constraint (radial) direction
// and the gauge orbit.

#include "qclock/special.hpp"
#include "qclock/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qclock {

template <typename Real>
struct QuadratureRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1]: Newton iteration on the three-term
/// recurrence from Chebyshev starting points. Exact for degree 2n - 1.
template <typename Real = double>
QuadratureRule<Real> gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    QuadratureRule<Real> rule{std::vector<Real>(n), std::vector<Real>(n)};
    const Real pi = std::numbers::pi_v<Real>;
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((Real(2 * k - 1)) * x * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
            const Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= Real(4) * eps) break;
        }
        // Derivative at the converged node.
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const Real p2 = ((Real(2 * k - 1)) * x * p1 - Real(k - 1) * p0) / Real(k);
            p0 = p1;
            p1 = p2;
        }
        dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
        const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0;
    return rule;
}

/// Generalized Gauss-Laguerre rule for the probability weight
/// r^alpha e^{-r} / Gamma(alpha + 1) on [0, inf), by Golub-Welsch. Weights sum
/// to one; exact for polynomials of degree 2n - 1.
template <typename Real = double>
QuadratureRule<Real> gauss_laguerre(int n, Real alpha)
{
    if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be positive");
    if (!(alpha > Real(-1))) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    Vec diag(n);
    Vec sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag(k) = Real(2 * k + 1) + alpha;
    for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(Real(k) * (Real(k) + alpha));
    Eigen::SelfAdjointEigenSolver<Mat> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_laguerre: eigensolver failed");
    QuadratureRule<Real> rule{std::vector<Real>(n), std::vector<Real>(n)};
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = solver.eigenvalues()(k);
        const Real v0 = solver.eigenvectors()(0, k);
        rule.weights[k] = v0 * v0;
    }
    return rule;
}

/// Radial rule for the constraint direction of sector m: the normalized
/// weight e^{-r} r^{m+1} / (m+1)!, peaked on the constraint surface r = m + 1.
template <typename Real = double>
struct RadialGrid {
    int m = 0;
    QuadratureRule<Real> rule;

    static constexpr int default_order = 32;

    static RadialGrid for_sector(int m, int order = default_order)
    {
        if (m < 0) throw std::invalid_argument("RadialGrid: m must be non-negative");
        return {m, gauss_laguerre<Real>(order, Real(m + 1))};
    }
};

/// Uniform trapezoid over the gauge orbit theta in [0, 2 pi); weights 1/N so
/// the rule computes the orbit average. Exact for trigonometric polynomials of
/// degree below N.
template <typename Real = double>
struct GaugeGrid {
    QuadratureRule<Real> rule;

    static constexpr int default_count = 256;

    static GaugeGrid uniform(int count = default_count)
    {
        if (count < 1) throw std::invalid_argument("GaugeGrid: need at least one point");
        GaugeGrid g;
        g.rule.nodes.resize(count);
        g.rule.weights.assign(count, Real(1) / Real(count));
        for (int k = 0; k < count; ++k) g.rule.nodes[k] = Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(count);
        return g;
    }
};

/// Product rule on the sphere for the measure d^2 xi / (1 + |xi|^2)^2 in the
/// stereographic chart xi = tan(polar / 2) e^{i azimuth}. Gauss-Legendre in
/// u = cos(polar) and a uniform trapezoid in the azimuth; the weights sum to
/// pi, the total measure of the chart.
template <typename Real = double>
class SphereGrid {
public:
    struct Node {
        Real u;        // cos of the polar angle, measured from xi = 0
        Real azimuth;
        Real weight;

        Real polar() const { return std::acos(u); }

        std::complex<Real> xi() const
        {
            // tan(polar/2) = sqrt((1 - u) / (1 + u)); 1 + u > 0 at Gauss nodes
            return std::polar(std::sqrt((Real(1) - u) / (Real(1) + u)), azimuth);
        }
    };

    static SphereGrid gauss_product(int legendre_order, int azimuth_count)
    {
        if (azimuth_count < 1) throw std::invalid_argument("SphereGrid: azimuth count must be positive");
        const auto gl = gauss_legendre<Real>(legendre_order);
        SphereGrid g;
        g.legendre_order_ = legendre_order;
        g.azimuth_count_ = azimuth_count;
        g.nodes_.reserve(gl.size() * azimuth_count);
        const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
        for (std::size_t i = 0; i < gl.size(); ++i)
            for (int k = 0; k < azimuth_count; ++k)
                g.nodes_.push_back({gl.nodes[i], two_pi * Real(k) / Real(azimuth_count),
                                    gl.weights[i] * two_pi / Real(azimuth_count) / Real(4)});
        return g;
    }

    /// Exact grid for spin j integrands times a symbol of polar degree
    /// `symbol_degree` in u: 2j + 1 + symbol_degree Legendre nodes and twice
    /// as many azimuth points.
    static SphereGrid for_spin(Spin j, int symbol_degree = 1)
    {
        const int order = j.twice() + 1 + std::max(symbol_degree, 0);
        return gauss_product(order, 2 * order);
    }

    /// Grid from a single order knob: `order` Legendre nodes, 2 * order
    /// azimuth points.
    static SphereGrid from_order(int order) { return gauss_product(order, 2 * order); }

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    int legendre_order() const { return legendre_order_; }
    int azimuth_count() const { return azimuth_count_; }

    Real total_weight() const
    {
        CompensatedSum<Real> s;
        for (const auto& n : nodes_) s.add(n.weight);
        return s.value();
    }

private:
    std::vector<Node> nodes_;
    int legendre_order_ = 0;
    int azimuth_count_ = 0;
};

} // namespace qclock

#endif // QCLOCK_QUADRATURE_HPP
