#include <array>

#include "doctest.h"
#include "support.hpp"

#include "dfsslab/resultant.hpp"
#include "dfsslab/subspace.hpp"

using namespace dfsslab;
using namespace testing;

namespace {

/// Direct evaluation for nonsingular Gamma(c): adj = det * inverse.
std::pair<double, double> fg_oracle(const DeltaMatrix& delta, double c) {
  const Index n = delta.size();
  const RMatrix gamma = gamma_matrix(delta, c);
  const RVector d = -delta.matrix().col(n - 1).head(n - 1);
  const double det = gamma.determinant();
  const RMatrix adj = det * gamma.inverse();
  const double f = d.dot(adj * d) + det * (c - delta(n - 1, n - 1));
  const double g = RVector::Ones(n - 1).dot(adj * d) + det;
  return {f, g};
}

double eigen_residual_oracle(const DeltaMatrix& delta, double c) {
  const Index n = delta.size();
  RMatrix a(n + 1, n);
  a.topRows(n) = delta.matrix() - c * RMatrix::Identity(n, n);
  a.row(n).setOnes();
  return Eigen::JacobiSVD<RMatrix>(a).singularValues()(n - 1);
}

}  // namespace

TEST_SUITE("resultant") {

TEST_CASE("gamma matrix") {
  const DeltaMatrix d3 = three_qubit(1.0, 2.0, 3.0);
  const RMatrix g0 = gamma_matrix(d3, 0.0);
  CHECK(g0.rows() == 2);
  CHECK(g0(0, 1) == 3.0);
  CHECK(g0(1, 0) == 3.0);
  CHECK(g0(0, 0) == 0.0);
  CHECK(gamma_matrix(d3, 1.5)(1, 1) == -1.5);
  RMatrix m(2, 2);
  m << 0.25, 1, 1, 0;
  const RMatrix g2 = gamma_matrix(DeltaMatrix(m), 2.0);
  CHECK(g2.rows() == 1);
  CHECK(g2(0, 0) == -1.75);
  CHECK_THROWS_AS(gamma_matrix(DeltaMatrix::zero(1), 0.0), ArgumentError);
}

TEST_CASE("Sylvester resultant examples") {
  const Polynomial c_minus_1({-1.0, 1.0});
  CHECK(resultant(c_minus_1, Polynomial({2.0, -3.0, 1.0})) == doctest::Approx(0.0));
  CHECK(resultant(c_minus_1, Polynomial({-2.0, 1.0})) == doctest::Approx(-1.0));
  CHECK(resultant(Polynomial({-1.0, 0.0, 1.0}), c_minus_1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(resultant(Polynomial(), Polynomial()), ArgumentError);
  CHECK(resultant(Polynomial(), c_minus_1) == 0.0);
}

TEST_CASE("polynomial basics") {
  const Polynomial p({2.0, -3.0, 1.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == 0.0);
  CHECK(p.magnitude_at(-1.0) == 6.0);
  auto roots = p.roots();
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(roots[0].real() == doctest::Approx(1.0));
  CHECK(roots[1].real() == doctest::Approx(2.0));
  CHECK(Polynomial().degree() == -1);
}

TEST_CASE("interpolated f and g match direct evaluation") {
  Rng rng(4);
  for (int n = 2; n <= 6; ++n) {
    const DeltaMatrix delta = random_delta(rng, n);
    const FgPair fg = build_fg(delta);
    CHECK(fg.f.degree() == n);
    CHECK(fg.g.degree() <= n - 1);
    for (double c : {-1.3, 0.37, 2.1}) {
      const auto [f, g] = fg_oracle(delta, c);
      CHECK(std::abs(fg.f(c) - f) <= 1e-9 * fg.f.magnitude_at(c));
      CHECK(std::abs(fg.g(c) - g) <= 1e-9 * fg.g.magnitude_at(c));
      // f is minus the characteristic polynomial
      const double charpoly = (delta.matrix() - c * RMatrix::Identity(n, n)).determinant();
      CHECK(std::abs(fg.f(c) + charpoly) <= 1e-9 * fg.f.magnitude_at(c));
    }
  }
}

TEST_CASE("two qubit common root is -d") {
  for (double d : {0.1, 1.0, 10.0}) {
    RMatrix m(2, 2);
    m << 0, d, d, 0;
    const FgPair fg = build_fg(DeltaMatrix(m));
    CHECK(std::abs(fg.f(-d)) <= 1e-12 * fg.f.magnitude_at(-d));
    CHECK(std::abs(fg.g(-d)) <= 1e-12 * fg.g.magnitude_at(-d));
    const ResultantReport r = cdfs_exists_v1(DeltaMatrix(m));
    CHECK(r.decision == Decision::cdfs_exists);
    REQUIRE(r.common_roots.size() == 1);
    CHECK(r.common_roots[0] == doctest::Approx(-d).epsilon(1e-10));
  }
}

TEST_CASE("three qubit shared root at -x2") {
  const double a = 1.3, x2 = -0.4;
  const DeltaMatrix delta = three_qubit(a, x2, a);
  const FgPair fg = build_fg(delta);
  CHECK(std::abs(fg.f(-x2)) <= 1e-12 * fg.f.magnitude_at(-x2));
  CHECK(std::abs(fg.g(-x2)) <= 1e-12 * fg.g.magnitude_at(-x2));
}

TEST_CASE("diagonal Delta: f and g share the roots of det Gamma") {
  RMatrix distinct = RMatrix::Zero(3, 3);
  distinct.diagonal() << 1.0, 2.0, 3.0;
  const FgPair fd = build_fg(DeltaMatrix(distinct));
  // d = 0: g = det Gamma = (1 - c)(2 - c), f = det Gamma (c - 3)
  for (double c : {-0.5, 0.7, 4.0}) {
    CHECK(fd.g(c) == doctest::Approx((1 - c) * (2 - c)));
    CHECK(fd.f(c) == doctest::Approx((1 - c) * (2 - c) * (c - 3)));
  }
  CHECK(std::abs(resultant(fd.f, fd.g)) < 1e-12);

  // The shared roots belong to basis eigenvectors with a nonzero sum.
  const ResultantReport rd = cdfs_exists_v1(DeltaMatrix(distinct));
  CHECK(rd.decision == Decision::none);
  CHECK(rd.rejected_roots > 0);
  CHECK(rd.common_roots.empty());

  RMatrix repeated = distinct;
  repeated(2, 2) = 1.0;
  const ResultantReport rr = cdfs_exists_v1(DeltaMatrix(repeated));
  CHECK(rr.degenerate_spectrum);
  CHECK(rr.decision == Decision::cdfs_exists);
  REQUIRE(rr.common_roots.size() == 1);
  CHECK(rr.common_roots[0] == doctest::Approx(1.0));
}

TEST_CASE("decision examples") {
  const ResultantReport none = cdfs_exists_v1(three_qubit(1.0, 2.0, 3.0));
  CHECK(none.decision == Decision::none);
  CHECK(none.common_roots.empty());

  const ResultantReport hit = cdfs_exists_v1(three_qubit(1.0, 2.0, 1.0));
  CHECK(hit.decision == Decision::cdfs_exists);
  REQUIRE(hit.common_roots.size() == 1);
  // e1 - e3 is an eigenvector with eigenvalue Delta_11 - Delta_13 = -x2
  CHECK(hit.common_roots[0] == doctest::Approx(-2.0).epsilon(1e-10));

  const ResultantReport scalar = cdfs_exists_v1(DeltaMatrix(0.5 * RMatrix::Identity(4, 4)));
  CHECK(scalar.degenerate_spectrum);
  CHECK(scalar.decision == Decision::cdfs_exists);
  CHECK(scalar.degeneracy.cdfs_lower_bound == 3);
}

TEST_CASE("random GOE samples have no common root") {
  Rng rng(31);
  int hits = 0;
  for (int i = 0; i < 500; ++i) hits += cdfs_exists_v1(random_delta(rng, 5)).decision == Decision::cdfs_exists;
  CHECK(hits == 0);
}

TEST_CASE("detector agreement outside the borderline band") {
  Rng rng(77);
  int disagreements = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 5;
    disagreements += detect_cdfs(random_delta(rng, n), Detector::both, false).disagreement;
  }
  const std::array kinds{EnsembleKind::all_equal, EnsembleKind::equal_offdiagonal_pair};
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 5;
    const DeltaMatrix d = sample_delta({kinds[static_cast<std::size_t>(i % 2)], n, 1.0, 0}, rng);
    disagreements += detect_cdfs(d, Detector::both, false).disagreement;
  }
  for (int i = 0; i < 100; ++i) {
    disagreements += detect_cdfs(sample_delta({EnsembleKind::square_lattice, 4, 1.0, 0}, rng), Detector::both,
                                 false)
                         .disagreement;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("scale covariance") {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const DeltaMatrix base = trial % 2 ? random_delta(rng, n)
                                       : sample_delta({EnsembleKind::equal_offdiagonal_pair, n, 1.0, 0}, rng);
    const ResultantReport r = cdfs_exists_v1(base);
    for (double s : {1e-3, 0.5, 7.0, 1e3}) {
      const ResultantReport rs = cdfs_exists_v1(base.scaled(s));
      CHECK(rs.decision == r.decision);
      if (r.normalized_resultant > 1e-10) {
        CHECK(rs.normalized_resultant == doctest::Approx(r.normalized_resultant).epsilon(1e-6));
      }
      REQUIRE(rs.common_roots.size() == r.common_roots.size());
      for (std::size_t k = 0; k < r.common_roots.size(); ++k) {
        CHECK(rs.common_roots[k] == doctest::Approx(s * r.common_roots[k]).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("reported roots are zero-sum eigenvalues") {
  Rng rng(44);
  int roots = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const auto kind = trial % 2 ? EnsembleKind::all_equal : EnsembleKind::equal_offdiagonal_pair;
    const DeltaMatrix delta = sample_delta({kind, n, 1.0, 0}, rng);
    const ResultantReport r = cdfs_exists_v1(delta);
    if (r.decision != Decision::cdfs_exists) continue;
    const double norm = delta.matrix().norm();
    for (double c : r.common_roots) {
      ++roots;
      CHECK(eigen_residual_oracle(delta, c) <= 1e-8 * norm);
      if (!r.degenerate_spectrum) {
        const double u = c / r.scale;
        CHECK(std::abs(r.f(u)) <= 1e-8 * r.f.magnitude_at(u));
        CHECK(std::abs(r.g(u)) <= 1e-8 * r.g.magnitude_at(u));
      }
    }
  }
  CHECK(roots > 0);
}

TEST_CASE("interpolation does not depend on the sample points") {
  Rng rng(9);
  for (int n = 2; n <= 6; ++n) {
    const DeltaMatrix delta = random_delta(rng, n);
    std::vector<double> a, b;
    for (int j = 0; j <= n; ++j) {
      a.push_back(-2.0 + 4.0 * j / n);
      b.push_back(-2.7 + 5.1 * j / n + 0.013);
    }
    const FgPair fa = build_fg(delta, a);
    const FgPair fb = build_fg(delta, b);
    REQUIRE(fa.f.degree() == fb.f.degree());
    REQUIRE(fa.g.degree() == fb.g.degree());
    for (std::size_t k = 0; k < fa.f.coeffs().size(); ++k) {
      CHECK(std::abs(fa.f.coeffs()[k] - fb.f.coeffs()[k]) <= 1e-9 * fa.f.sup_norm());
    }
    for (std::size_t k = 0; k < fa.g.coeffs().size(); ++k) {
      CHECK(std::abs(fa.g.coeffs()[k] - fb.g.coeffs()[k]) <= 1e-9 * fa.g.sup_norm());
    }
  }
  const std::vector<double> repeated{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(build_fg(DeltaMatrix::zero(2), repeated), ArgumentError);
  const std::vector<double> short_list{0.0, 1.0};
  CHECK_THROWS_AS(build_fg(DeltaMatrix::zero(2), short_list), ArgumentError);
}

TEST_CASE("normalized resultant ignores polynomial scaling") {
  const Polynomial f({-1.0, 0.5, 2.0});
  const Polynomial g({3.0, -1.0});
  const Polynomial f7({-7.0, 3.5, 14.0});
  const Polynomial g3({0.009, -0.003});
  CHECK(normalized_resultant(f, g) == doctest::Approx(normalized_resultant(f7, g3)));
}

}
