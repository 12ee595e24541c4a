#ifndef QCLOCK_FOCK_HPP
#define QCLOCK_FOCK_HPP

// Two-mode Fock space: the fixed-total-quanta physical sector with its
// Schwinger spin operators, plus a truncated full two-mode space used to
// cross-check the sector constructions.

#include "qclock/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qclock {

/// Raised when E / (omega hbar) - 1 is not within tolerance of a
/// non-negative integer: the physical subspace is then empty.
class NullPhysicalSubspace : public std::domain_error {
public:
    NullPhysicalSubspace(double e_prime, double residual)
        : std::domain_error("null physical subspace: E' = " + std::to_string(e_prime) +
                            " is not a non-negative integer (residual " + std::to_string(residual) + ")"),
          e_prime_(e_prime),
          residual_(residual)
    {
    }

    double e_prime() const { return e_prime_; }
    double residual() const { return residual_; }

private:
    double e_prime_;
    double residual_;
};

/// Total quanta m' selected by the constraint a^dag a + b^dag b = E/(omega hbar) - 1.
template <typename Real>
int constraint_eigencheck(Real E, Real omega = 1, Real hbar = 1, Real tol = Real(1e-9))
{
    if (!(E > 0)) throw std::invalid_argument("constraint_eigencheck: E must be positive");
    if (!(omega > 0) || !(hbar > 0)) throw std::invalid_argument("constraint_eigencheck: omega and hbar must be positive");
    const Real e_prime = E / (omega * hbar) - Real(1);
    const Real nearest = std::round(e_prime);
    const Real residual = std::abs(e_prime - nearest);
    if (residual >= tol || nearest < 0)
        throw NullPhysicalSubspace(static_cast<double>(e_prime),
                                   nearest < 0 ? static_cast<double>(std::abs(e_prime)) : static_cast<double>(residual));
    return static_cast<int>(nearest);
}

/// Basis |n, m'-n>, n = 0..m', of the sector with m' total quanta; n counts
/// quanta in oscillator 1.
class PhysicalBasis {
public:
    explicit PhysicalBasis(int m_prime) : m_prime_(m_prime)
    {
        if (m_prime < 0) throw std::invalid_argument("PhysicalBasis: m' must be non-negative");
    }

    int m_prime() const { return m_prime_; }
    int dimension() const { return m_prime_ + 1; }
    Spin spin() const { return Spin::from_m_prime(m_prime_); }

    /// Occupations (n1, n2) of basis vector `index`.
    std::pair<int, int> occupations(int index) const { return {index, m_prime_ - index}; }

private:
    int m_prime_;
};

template <typename Real = double>
struct PhysicalState {
    int m_prime = 0;
    CVector<Real> amplitudes;

    PhysicalState() = default;
    PhysicalState(int m, CVector<Real> amps) : m_prime(m), amplitudes(std::move(amps))
    {
        if (amplitudes.size() != m + 1) throw std::invalid_argument("PhysicalState: amplitude count must be m' + 1");
    }

    Real norm() const { return amplitudes.norm(); }

    PhysicalState normalized() const
    {
        const Real n = norm();
        if (n == Real(0)) throw std::domain_error("PhysicalState: cannot normalize the zero vector");
        return {m_prime, amplitudes / n};
    }

    std::complex<Real> inner(const PhysicalState& ket) const
    {
        if (ket.m_prime != m_prime) throw std::invalid_argument("PhysicalState: inner product across sectors");
        return amplitudes.dot(ket.amplitudes);
    }
};

template <typename Real = double>
struct PhysOperator {
    int m_prime = 0;
    CMatrix<Real> entries;

    PhysOperator() = default;
    PhysOperator(int m, CMatrix<Real> e) : m_prime(m), entries(std::move(e))
    {
        if (entries.rows() != m + 1 || entries.cols() != m + 1)
            throw std::invalid_argument("PhysOperator: matrix must be (m'+1) x (m'+1)");
    }

    int dimension() const { return m_prime + 1; }

    static PhysOperator identity(int m) { return {m, CMatrix<Real>::Identity(m + 1, m + 1)}; }

    Real hermiticity_defect() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

    PhysicalState<Real> apply(const PhysicalState<Real>& psi) const
    {
        if (psi.m_prime != m_prime) throw std::invalid_argument("PhysOperator: state from a different sector");
        return {m_prime, entries * psi.amplitudes};
    }
};

template <typename Real>
Real max_abs_entry(const CMatrix<Real>& m)
{
    return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

template <typename Real>
CMatrix<Real> commutator(const CMatrix<Real>& x, const CMatrix<Real>& y)
{
    return x * y - y * x;
}

template <typename Real = double>
struct SpinOperators {
    PhysOperator<Real> S1, S2, S3;

    const PhysOperator<Real>& operator[](int i) const { return i == 0 ? S1 : (i == 1 ? S2 : S3); }
};

/// Schwinger generators restricted to the m' sector:
///   S1 = (a^dag b + a b^dag) / 2,  S2 = (a^dag b - a b^dag) / (2i),
///   S3 = (a^dag a - b^dag b) / 2.
/// a^dag b maps |n, m'-n> to sqrt((n+1)(m'-n)) |n+1, m'-n-1>.
template <typename Real = double>
SpinOperators<Real> spin_operators(int m_prime)
{
    const PhysicalBasis basis(m_prime);
    const int dim = basis.dimension();
    using C = std::complex<Real>;

    CMatrix<Real> raise = CMatrix<Real>::Zero(dim, dim);  // a^dag b
    CMatrix<Real> s3 = CMatrix<Real>::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        s3(n, n) = C(Real(n) - Real(m_prime) / Real(2));
        if (n + 1 < dim) raise(n + 1, n) = C(std::sqrt(Real(n + 1) * Real(m_prime - n)));
    }
    const CMatrix<Real> lower = raise.adjoint();  // a b^dag
    const C half(Real(0.5));
    CMatrix<Real> s1 = half * (raise + lower);
    CMatrix<Real> s2 = C(0, Real(-0.5)) * (raise - lower);
    return {{m_prime, std::move(s1)}, {m_prime, std::move(s2)}, {m_prime, std::move(s3)}};
}

/// S1^2 + S2^2 + S3^2 built by matrix products.
template <typename Real = double>
PhysOperator<Real> casimir(int m_prime)
{
    const auto s = spin_operators<Real>(m_prime);
    CMatrix<Real> c = s.S1.entries * s.S1.entries + s.S2.entries * s.S2.entries + s.S3.entries * s.S3.entries;
    return {m_prime, std::move(c)};
}

enum class Ladder { a, a_dag, b, b_dag };

/// Amplitudes on the basis |n, total - n>, n = 0..total. total = -1 is the
/// empty image of lowering the vacuum sector.
template <typename Real = double>
struct SectorState {
    int total = 0;
    CVector<Real> amplitudes;
};

/// Image of a physical state under one single-mode ladder operator. The
/// result always lies in the m' +/- 1 sector, i.e. outside the physical
/// subspace.
template <typename Real>
SectorState<Real> apply_full_ladder(const PhysicalState<Real>& state, Ladder which)
{
    const int m = state.m_prime;
    const bool raising = which == Ladder::a_dag || which == Ladder::b_dag;
    const int total = raising ? m + 1 : m - 1;
    SectorState<Real> out{total, CVector<Real>::Zero(std::max(total + 1, 0))};
    for (int n = 0; n <= m; ++n) {
        const std::complex<Real> c = state.amplitudes(n);
        switch (which) {
        case Ladder::a_dag:
            out.amplitudes(n + 1) += std::sqrt(Real(n + 1)) * c;
            break;
        case Ladder::a:
            if (n > 0) out.amplitudes(n - 1) += std::sqrt(Real(n)) * c;
            break;
        case Ladder::b_dag:
            out.amplitudes(n) += std::sqrt(Real(m - n + 1)) * c;
            break;
        case Ladder::b:
            if (m - n > 0) out.amplitudes(n) += std::sqrt(Real(m - n)) * c;
            break;
        }
    }
    return out;
}

/// Two-mode Fock space truncated at `cutoff` quanta per mode. States are
/// stored as vectors indexed by n1 * (cutoff + 1) + n2.
template <typename Real = double>
class TwoModeSpace {
public:
    explicit TwoModeSpace(int cutoff) : cutoff_(cutoff)
    {
        if (cutoff < 0) throw std::invalid_argument("TwoModeSpace: cutoff must be non-negative");
    }

    /// Cutoff that keeps the Poisson tail of a sector-m' cross-check below
    /// roughly 1e-12: m' + ceil(10 sqrt(m' + 1)).
    static int default_cutoff(int m_prime)
    {
        return m_prime + static_cast<int>(std::ceil(10.0 * std::sqrt(double(m_prime) + 1.0)));
    }

    int cutoff() const { return cutoff_; }
    int dimension() const { return (cutoff_ + 1) * (cutoff_ + 1); }
    int index(int n1, int n2) const { return n1 * (cutoff_ + 1) + n2; }

    CMatrix<Real> annihilation_a() const { return ladder(true); }
    CMatrix<Real> annihilation_b() const { return ladder(false); }

    CMatrix<Real> number() const
    {
        CMatrix<Real> n = CMatrix<Real>::Zero(dimension(), dimension());
        for (int n1 = 0; n1 <= cutoff_; ++n1)
            for (int n2 = 0; n2 <= cutoff_; ++n2) n(index(n1, n2), index(n1, n2)) = Real(n1 + n2);
        return n;
    }

    /// Orthogonal projector onto a^dag a + b^dag b = m'.
    CMatrix<Real> sector_projector(int m_prime) const
    {
        CMatrix<Real> p = CMatrix<Real>::Zero(dimension(), dimension());
        for (int n = 0; n <= m_prime; ++n)
            if (n <= cutoff_ && m_prime - n <= cutoff_) p(index(n, m_prime - n), index(n, m_prime - n)) = Real(1);
        return p;
    }

    /// Components of a full state on the sector basis |n, m'-n>.
    PhysicalState<Real> restrict_to_sector(const CVector<Real>& full, int m_prime) const
    {
        if (m_prime > cutoff_) throw std::invalid_argument("TwoModeSpace: sector above the cutoff");
        CVector<Real> amps(m_prime + 1);
        for (int n = 0; n <= m_prime; ++n) amps(n) = full(index(n, m_prime - n));
        return {m_prime, std::move(amps)};
    }

    /// Restriction of a full-space operator to the sector basis.
    PhysOperator<Real> restrict_to_sector(const CMatrix<Real>& op, int m_prime) const
    {
        if (m_prime > cutoff_) throw std::invalid_argument("TwoModeSpace: sector above the cutoff");
        CMatrix<Real> block(m_prime + 1, m_prime + 1);
        for (int n = 0; n <= m_prime; ++n)
            for (int k = 0; k <= m_prime; ++k) block(n, k) = op(index(n, m_prime - n), index(k, m_prime - k));
        return {m_prime, std::move(block)};
    }

private:
    CMatrix<Real> ladder(bool first_mode) const
    {
        CMatrix<Real> l = CMatrix<Real>::Zero(dimension(), dimension());
        for (int n1 = 0; n1 <= cutoff_; ++n1)
            for (int n2 = 0; n2 <= cutoff_; ++n2) {
                if (first_mode && n1 > 0) l(index(n1 - 1, n2), index(n1, n2)) = std::sqrt(Real(n1));
                if (!first_mode && n2 > 0) l(index(n1, n2 - 1), index(n1, n2)) = std::sqrt(Real(n2));
            }
        return l;
    }

    int cutoff_;
};

} // namespace qclock

#endif // QCLOCK_FOCK_HPP
