#ifndef QCLOCK_TYPES_HPP
#define QCLOCK_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qclock {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Raised when a point sits on the pole of the stereographic chart (beta = 0
/// or B = 0), where xi = alpha / beta is undefined.
class ChartSingularity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Half-integer spin stored as the integer 2j. The physical sector with m'
/// total quanta carries spin j = m'/2.
class Spin {
public:
    constexpr Spin() = default;

    static constexpr Spin from_twice(int twice_j)
    {
        if (twice_j < 0) throw std::invalid_argument("spin: 2j must be non-negative");
        Spin s;
        s.twice_ = twice_j;
        return s;
    }

    static constexpr Spin from_m_prime(int m_prime) { return from_twice(m_prime); }

    /// Accepts any j with 2j integral (to 1e-9).
    static Spin from_value(double j)
    {
        const double twice = 2.0 * j;
        const double rounded = std::round(twice);
        if (j < 0.0 || std::abs(twice - rounded) > 1e-9)
            throw std::invalid_argument("spin: j must be a non-negative half-integer, got " + std::to_string(j));
        return from_twice(static_cast<int>(rounded));
    }

    constexpr int twice() const { return twice_; }
    constexpr int m_prime() const { return twice_; }
    constexpr int dimension() const { return twice_ + 1; }

    template <typename Real = double>
    constexpr Real value() const { return Real(twice_) / Real(2); }

    friend constexpr bool operator==(Spin, Spin) = default;

private:
    int twice_ = 0;
};

} // namespace qclock

#endif // QCLOCK_TYPES_HPP
