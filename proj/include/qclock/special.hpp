#ifndef QCLOCK_SPECIAL_HPP
#define QCLOCK_SPECIAL_HPP

#include <cmath>
#include <complex>
#include <limits>

namespace qclock {

/// log C(n, k) through log-gamma; valid far beyond the range where the
/// binomial itself overflows.
template <typename Real>
Real log_binomial(int n, int k)
{
    using std::lgamma;
    return lgamma(Real(n + 1)) - lgamma(Real(k + 1)) - lgamma(Real(n - k + 1));
}

/// log(Gamma(a) / Gamma(b)) as a log-gamma difference.
template <typename Real>
Real log_gamma_ratio(Real a, Real b)
{
    using std::lgamma;
    return lgamma(a) - lgamma(b);
}

/// k * log|x| with the convention 0^0 = 1, so the result is -inf only when
/// x = 0 and k > 0.
template <typename Real>
Real log_abs_power(Real abs_x, int k)
{
    if (k == 0) return Real(0);
    if (abs_x == Real(0)) return -std::numeric_limits<Real>::infinity();
    return Real(k) * std::log(abs_x);
}

/// z^k by repeated squaring (k >= 0).
template <typename Real>
std::complex<Real> integer_power(std::complex<Real> z, int k)
{
    std::complex<Real> result(1);
    while (k > 0) {
        if (k & 1) result *= z;
        z *= z;
        k >>= 1;
    }
    return result;
}

/// Neumaier-compensated accumulator; summation order is the call order.
template <typename T>
class CompensatedSum {
public:
    void add(T x)
    {
        const T t = sum_ + x;
        if (magnitude(sum_) >= magnitude(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    T value() const { return sum_ + carry_; }

private:
    template <typename U>
    static auto magnitude(const U& v)
    {
        using std::abs;
        return abs(v);
    }

    T sum_{};
    T carry_{};
};

template <typename Real>
class CompensatedSum<std::complex<Real>> {
public:
    void add(std::complex<Real> x)
    {
        re_.add(x.real());
        im_.add(x.imag());
    }

    std::complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<Real> re_;
    CompensatedSum<Real> im_;
};

} // namespace qclock

#endif // QCLOCK_SPECIAL_HPP
