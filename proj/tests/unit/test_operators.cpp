#include "doctest.h"
#include "support.hpp"

#include "dfsslab/operators.hpp"

using namespace dfsslab;
using namespace testing;

TEST_SUITE("operators") {

TEST_CASE("single qubit z is half sigma_z in ascending order") {
  const CMatrix z = site_operator(QubitCount(1), 1, Axis::z);
  CHECK(z.rows() == 2);
  CHECK(z(0, 0).real() == doctest::Approx(-0.5));
  CHECK(z(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(z(0, 1)) == 0.0);
}

TEST_CASE("site lowering acts on the excited qubit only") {
  const QubitCount n(2);
  CVector ket01 = CVector::Zero(4);
  ket01(1) = 1.0;  // qubit 2 excited
  const CVector lowered2 = site_operator(n, 2, Axis::minus) * ket01;
  CHECK(std::abs(lowered2(0) - 1.0) < 1e-15);
  CHECK(lowered2.tail(3).norm() == 0.0);
  CHECK((site_operator(n, 1, Axis::minus) * ket01).norm() == 0.0);
}

TEST_CASE("site operators match a Kronecker construction") {
  const CMatrix sm = sigma_minus();
  CMatrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int site = 1; site <= n; ++site) {
      CHECK(max_abs(site_operator(QubitCount(n), site, Axis::minus) - kron_site(n, site, sm)) == 0.0);
      CHECK(max_abs(site_operator(QubitCount(n), site, Axis::plus) -
                    kron_site(n, site, sm.adjoint())) == 0.0);
      CHECK(max_abs(site_operator(QubitCount(n), site, Axis::x) - kron_site(n, site, sx)) == 0.0);
      // sigma_+ = (sigma_x + i sigma_y) / 2 fixes the sign of sigma_y.
      const CMatrix plus = (kron_site(n, site, sx) + Complex(0, 1) * site_operator(QubitCount(n), site, Axis::y)) / 2.0;
      CHECK(max_abs(plus - kron_site(n, site, sm.adjoint())) < 1e-15);
    }
  }
}

TEST_CASE("site out of range") {
  CHECK_THROWS_AS(site_operator(QubitCount(3), 0, Axis::x), ArgumentError);
  CHECK_THROWS_AS(site_operator(QubitCount(3), 4, Axis::x), ArgumentError);
}

TEST_CASE("qubit count limits") {
  CHECK_THROWS_AS(QubitCount(0), ArgumentError);
  CHECK_THROWS_AS(QubitCount(5, 4), ArgumentError);
  CHECK(QubitCount(4, 4).dim() == 16);
}

TEST_CASE("collective operators satisfy su(2)") {
  for (int n = 1; n <= 6; ++n) {
    const auto ops = collective_operators(QubitCount(n));
    CHECK(max_abs(commutator(ops.plus, ops.minus) - 2.0 * ops.z) <= 1e-10);
    CHECK(max_abs(commutator(ops.z, ops.plus) - ops.plus) <= 1e-10);
    CHECK(max_abs(commutator(ops.z, ops.minus) + ops.minus) <= 1e-10);
    CHECK(max_abs(ops.plus - ops.minus.adjoint()) == 0.0);
    CHECK(max_abs(lowering_operator(QubitCount(n)) - ops.minus) == 0.0);
  }
}

TEST_CASE("collective lowering examples") {
  const auto ops2 = collective_operators(QubitCount(2));
  CVector ket11 = CVector::Zero(4);
  ket11(3) = 1.0;
  CVector expected = CVector::Zero(4);
  expected(1) = 1.0;
  expected(2) = 1.0;
  CHECK((ops2.minus * ket11 - expected).norm() == 0.0);

  const auto ops3 = collective_operators(QubitCount(3));
  CHECK(ops3.minus.col(0).norm() == 0.0);
}

TEST_CASE("hamiltonian equals the double sum of site operators") {
  Rng rng(101);
  for (int n = 1; n <= 4; ++n) {
    const DeltaMatrix delta = random_delta(rng, n);
    CMatrix oracle = CMatrix::Zero(Index{1} << n, Index{1} << n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        oracle += delta(i - 1, j - 1) * kron_site(n, i, sigma_minus().adjoint()) * kron_site(n, j, sigma_minus());
      }
    }
    CHECK(max_abs(hamiltonian(QubitCount(n), delta) - oracle) < 1e-14);
  }
}

TEST_CASE("hamiltonian examples") {
  const double d = 0.7;
  RMatrix m(2, 2);
  m << 0, d, d, 0;
  const CMatrix h = hamiltonian(QubitCount(2), DeltaMatrix(m));
  const CMatrix v1 = restrict(h, WeightSector(QubitCount(2), 1));
  CHECK(max_abs(v1 - m.cast<Complex>()) == 0.0);

  CHECK(max_abs(hamiltonian(QubitCount(3), DeltaMatrix::zero(3))) == 0.0);
  CHECK_THROWS_AS(hamiltonian(QubitCount(3), DeltaMatrix::zero(2)), ArgumentError);
}

TEST_CASE("three qubit restriction follows the site labels") {
  const double x1 = 1.0, x2 = 2.0, x3 = 3.0;
  const DeltaMatrix delta = three_qubit(x1, x2, x3);
  const WeightSector v1(QubitCount(3), 1);
  const CMatrix r = restrict(hamiltonian(QubitCount(3), delta), v1);
  for (Index a = 0; a < 3; ++a) {
    for (Index b = 0; b < 3; ++b) {
      const int i = v1.excited_sites(a).front();
      const int j = v1.excited_sites(b).front();
      CHECK(r(a, b).real() == delta(i - 1, j - 1));
    }
  }
  // paper pattern: Delta_12 = x3, Delta_13 = x2, Delta_23 = x1
  CHECK(delta(0, 1) == x3);
  CHECK(delta(0, 2) == x2);
  CHECK(delta(1, 2) == x1);
}

TEST_CASE("restriction of H to V1 is Delta for random Delta") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const DeltaMatrix delta = random_delta(rng, n);
    const WeightSector v1(QubitCount(n), 1);
    const CMatrix r = restrict(hamiltonian(QubitCount(n), delta), v1);
    double worst = 0.0;
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        const int i = v1.excited_sites(a).front() - 1;
        const int j = v1.excited_sites(b).front() - 1;
        worst = std::max(worst, std::abs(r(a, b) - delta(i, j)));
      }
    }
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("weight sectors") {
  const WeightSector v1(QubitCount(3), 1);
  CHECK(v1.count() == 3);
  CHECK(v1.indices() == std::vector<Index>{1, 2, 4});
  CHECK(v1.excited_sites(0) == std::vector<int>{3});
  CHECK(v1.excited_sites(2) == std::vector<int>{1});
  CHECK(WeightSector(QubitCount(4), 2).count() == 6);
  CHECK(WeightSector(QubitCount(3), 0).indices() == std::vector<Index>{0});
  CHECK_THROWS_AS(WeightSector(QubitCount(3), 4), ArgumentError);
  CHECK_THROWS_AS(WeightSector(QubitCount(3), -1), ArgumentError);
}

TEST_CASE("restrict identity and S_z") {
  for (int n = 1; n <= 5; ++n) {
    const QubitCount q(n);
    const auto ops = collective_operators(q);
    for (int m = 0; m <= n; ++m) {
      const WeightSector s(q, m);
      const CMatrix id = restrict(CMatrix::Identity(q.dim(), q.dim()), s);
      CHECK(max_abs(id - CMatrix::Identity(s.count(), s.count())) == 0.0);
      const CMatrix z = restrict(ops.z, s);
      // each excited qubit contributes +1/2, each ground qubit -1/2
      const double lambda = m - n / 2.0;
      CHECK(max_abs(z - lambda * CMatrix::Identity(s.count(), s.count())) < 1e-14);
    }
  }
  CHECK_THROWS_AS(restrict(CMatrix::Identity(4, 4), WeightSector(QubitCount(3), 1)), ArgumentError);
}

TEST_CASE("hamiltonian is Hermitian and preserves weight") {
  Rng rng(17);
  for (int n = 2; n <= 6; ++n) {
    const QubitCount q(n);
    const CMatrix h = hamiltonian(q, random_delta(rng, n));
    CHECK(is_hermitian(h));
    const CMatrix sm = lowering_operator(q);
    for (int m = 0; m <= n; ++m) {
      const CMatrix p = WeightSector(q, m).embed() * WeightSector(q, m).embed().adjoint();
      const CMatrix out = CMatrix::Identity(q.dim(), q.dim()) - p;
      CHECK(max_abs(out * h * p) <= 1e-10);
      if (m >= 1) {
        const CMatrix pm1 = WeightSector(q, m - 1).embed() * WeightSector(q, m - 1).embed().adjoint();
        CHECK(max_abs((CMatrix::Identity(q.dim(), q.dim()) - pm1) * sm * p) == 0.0);
      }
    }
  }
}

TEST_CASE("delta matrix validation") {
  RMatrix asym(2, 2);
  asym << 0, 1, 1.5, 0;
  CHECK_THROWS_AS(DeltaMatrix{asym}, ArgumentError);
  const DeltaMatrix sym(asym, true);
  CHECK(sym(0, 1) == 1.25);
  CHECK(sym(1, 0) == 1.25);
  RMatrix bad = RMatrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DeltaMatrix{bad}, ArgumentError);
  CHECK_THROWS_AS(DeltaMatrix{RMatrix::Zero(2, 3)}, ArgumentError);
}

}
