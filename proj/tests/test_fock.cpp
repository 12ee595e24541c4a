#include <doctest.h>

#include "oracles.hpp"
#include "qclock/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <vector>

using namespace qclock;

TEST_CASE("constraint eigencheck selects the sector")
{
    CHECK(constraint_eigencheck(3.0) == 2);
    CHECK(constraint_eigencheck(21.0) == 20);
    CHECK(Spin::from_m_prime(constraint_eigencheck(21.0)).value() == 10.0);
    CHECK(constraint_eigencheck(6.0, 2.0, 1.5) == 1);  // E' = 6 / 3 - 1

    try {
        constraint_eigencheck(3.5, 1.0, 1.0, 1e-9);
        FAIL("expected a null subspace");
    } catch (const NullPhysicalSubspace& e) {
        CHECK(e.residual() == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(constraint_eigencheck(0.4), NullPhysicalSubspace);  // below the zero-point energy
    CHECK_THROWS_AS(constraint_eigencheck(-1.0), std::invalid_argument);
}

TEST_CASE("spin operators at low spin")
{
    const auto s0 = spin_operators(0);
    for (int i = 0; i < 3; ++i) {
        CHECK(s0[i].entries.rows() == 1);
        CHECK(std::abs(s0[i].entries(0, 0)) == 0.0);
    }

    // m' = 1, basis {|0,1>, |1,0>}: S3 = diag(-1/2, +1/2).
    const auto s1 = spin_operators(1);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
    expected(0, 0) = -0.5;
    expected(1, 1) = 0.5;
    CHECK(max_abs_entry<double>(s1.S3.entries - expected) == 0.0);
    // Index 1 is the S3 = +1/2 state, so S2(up, down) = S2(1, 0) = -i/2.
    CHECK(std::abs(s1.S1.entries(0, 1) - 0.5) < 1e-16);
    CHECK(std::abs(s1.S2.entries(1, 0) - std::complex<double>(0, -0.5)) < 1e-16);
}

TEST_CASE("spin operator spectra are -j..j")
{
    for (int m : {1, 2, 7, 20, 60}) {
        const auto s = spin_operators(m);
        std::vector<double> expected;
        for (int k = 0; k <= m; ++k) expected.push_back(-0.5 * m + k);
        for (int i = 0; i < 3; ++i) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s[i].entries, Eigen::EigenvaluesOnly);
            std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
            std::sort(ev.begin(), ev.end());
            double worst = 0;
            for (int k = 0; k <= m; ++k) worst = std::max(worst, std::abs(ev[k] - expected[k]));
            CHECK(worst < 1e-10);
        }
    }
}

template <typename Real>
void check_su2_structure(int m, Real tol)
{
    const auto s = spin_operators<Real>(m);
    const std::complex<Real> i(0, 1);
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        CHECK(max_abs_entry<Real>(commutator<Real>(s[a].entries, s[b].entries) - i * s[c].entries) < tol);
        CHECK(s[a].hermiticity_defect() == 0);
    }
    const Real j = Real(m) / 2;
    const auto cas = casimir<Real>(m);
    CHECK(max_abs_entry<Real>(cas.entries - j * (j + 1) * CMatrix<Real>::Identity(m + 1, m + 1)) < Real(1e-12));
}

TEST_CASE("su(2) commutators, Casimir and Hermiticity")
{
    for (int m : {1, 2, 5, 20}) check_su2_structure<double>(m, 1e-13);
    // Products of entries reach j^2/4; at m' = 200 double rounding of the
    // stored sqrt entries alone leaves ~1e-12, so check in extended precision.
    for (int m : {100, 200}) check_su2_structure<long double>(m, 1e-13L);

    CHECK(max_abs_entry<double>(casimir(1).entries - 0.75 * Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
    CHECK(max_abs_entry<double>(casimir(2).entries - 2.0 * Eigen::MatrixXcd::Identity(3, 3)) < 1e-14);
    CHECK(max_abs_entry<double>(casimir(20).entries - 110.0 * Eigen::MatrixXcd::Identity(21, 21)) < 1e-12);
}

TEST_CASE("sector spin operators agree with the full two-mode Schwinger construction")
{
    const TwoModeSpace<double> space(6);
    const Eigen::MatrixXcd a = space.annihilation_a();
    const Eigen::MatrixXcd b = space.annihilation_b();
    const Eigen::MatrixXcd ad = a.adjoint(), bd = b.adjoint();
    const std::complex<double> half(0.5), minus_half_i(0, -0.5);
    const Eigen::MatrixXcd S1 = half * (ad * b + a * bd);
    const Eigen::MatrixXcd S2 = minus_half_i * (ad * b - a * bd);
    const Eigen::MatrixXcd S3 = half * (ad * a - bd * b);
    const Eigen::MatrixXcd N = space.number();

    // The generators conserve total quanta. Truncation breaks [S, N] = 0 only
    // on states with a mode at the cutoff, so compare inside the cutoff.
    const Eigen::MatrixXcd P = space.sector_projector(4);
    for (const auto* S : {&S1, &S2, &S3}) CHECK(max_abs_entry<double>(P * commutator<double>(*S, N) * P) == 0.0);

    for (int m = 0; m <= 6; ++m) {
        const auto s = spin_operators(m);
        CHECK(max_abs_entry<double>(space.restrict_to_sector(S1, m).entries - s.S1.entries) < 1e-14);
        CHECK(max_abs_entry<double>(space.restrict_to_sector(S2, m).entries - s.S2.entries) < 1e-14);
        CHECK(max_abs_entry<double>(space.restrict_to_sector(S3, m).entries - s.S3.entries) < 1e-14);
        // P^2 = P
        const Eigen::MatrixXcd Pm = space.sector_projector(m);
        CHECK(max_abs_entry<double>(Pm * Pm - Pm) == 0.0);
    }
}

TEST_CASE("single-mode ladders leave the physical sector")
{
    const int m = 4;
    for (int n = 0; n <= m; ++n) {
        CVector<double> e = CVector<double>::Zero(m + 1);
        e(n) = 1;
        const PhysicalState<double> ket(m, e);

        const auto up_a = apply_full_ladder(ket, Ladder::a_dag);
        CHECK(up_a.total == m + 1);
        CHECK(std::abs(up_a.amplitudes(n + 1) - std::sqrt(double(n + 1))) < 1e-15);
        CHECK(std::abs(up_a.amplitudes.norm() - std::sqrt(double(n + 1))) < 1e-15);

        const auto down_b = apply_full_ladder(ket, Ladder::b);
        CHECK(down_b.total == m - 1);
        if (m - n > 0) CHECK(std::abs(down_b.amplitudes(n) - std::sqrt(double(m - n))) < 1e-15);
        else CHECK(down_b.amplitudes.norm() == 0.0);

        const auto up_b = apply_full_ladder(ket, Ladder::b_dag);
        CHECK(std::abs(up_b.amplitudes(n) - std::sqrt(double(m - n + 1))) < 1e-15);
    }
    CVector<double> vac = CVector<double>::Zero(m + 1);
    vac(0) = 1;  // |0, m>
    CHECK(apply_full_ladder(PhysicalState<double>(m, vac), Ladder::a).amplitudes.norm() == 0.0);

    // Lowering the vacuum sector has nowhere to go.
    const auto none = apply_full_ladder(PhysicalState<double>(0, CVector<double>::Ones(1)), Ladder::a);
    CHECK(none.total == -1);
    CHECK(none.amplitudes.size() == 0);
}

TEST_CASE("physical state and operator contracts")
{
    CHECK_THROWS_AS(PhysicalState<double>(2, CVector<double>::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(PhysOperator<double>(1, CMatrix<double>::Zero(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalState<double>(1, CVector<double>::Zero(2)).normalized(), std::domain_error);
    CHECK_THROWS_AS(PhysicalBasis(-1), std::invalid_argument);
    const PhysicalBasis basis(3);
    CHECK(basis.dimension() == 4);
    CHECK(basis.occupations(1) == std::pair<int, int>{1, 2});
    CHECK(TwoModeSpace<double>::default_cutoff(0) == 10);
    CHECK(TwoModeSpace<double>::default_cutoff(3) == 23);
}
