#include "dfsslab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

namespace dfsslab {

namespace {

Index site_bit(int n, int site) { return Index{1} << (n - site); }

Eigen::Matrix2cd single_qubit(Axis axis) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case Axis::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::y:
      m << 0.0, i, -i, 0.0;
      break;
    case Axis::z:
      m << -0.5, 0.0, 0.0, 0.5;
      break;
    case Axis::plus:
      m(1, 0) = 1.0;
      break;
    case Axis::minus:
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

}  // namespace

int default_n_max() {
  if (const char* env = std::getenv("DFSSLAB_NMAX")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 8;
}

QubitCount::QubitCount(int n, int n_max) : n_(n) {
  if (n < 1 || n > n_max) {
    throw ArgumentError("qubit count " + std::to_string(n) + " outside [1, " +
                        std::to_string(n_max) + "]");
  }
  if (n > 30) throw ArgumentError("qubit count too large for dense storage");
}

DeltaMatrix::DeltaMatrix(RMatrix m, bool symmetrize) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw ArgumentError("Delta must be a non-empty square matrix");
  }
  if (!m_.allFinite()) throw ArgumentError("Delta has non-finite entries");
  if (symmetrize) {
    const RMatrix t = m_.transpose();
    m_ = 0.5 * (m_ + t);
    return;
  }
  for (Index i = 0; i < m_.rows(); ++i) {
    for (Index j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw ArgumentError("Delta is not symmetric at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
      }
    }
  }
}

CMatrix site_operator(QubitCount n, int site, Axis axis) {
  if (site < 1 || site > n.n()) {
    throw ArgumentError("site " + std::to_string(site) + " outside [1, " +
                        std::to_string(n.n()) + "]");
  }
  const Eigen::Matrix2cd op = single_qubit(axis);
  const Index bit = site_bit(n.n(), site);
  CMatrix out = CMatrix::Zero(n.dim(), n.dim());
  for (Index col = 0; col < n.dim(); ++col) {
    const int c = (col & bit) ? 1 : 0;
    for (int r = 0; r < 2; ++r) {
      const Complex v = op(r, c);
      if (v == Complex(0.0)) continue;
      const Index row = r ? (col | bit) : (col & ~bit);
      out(row, col) = v;
    }
  }
  return out;
}

CollectiveOperators collective_operators(QubitCount n) {
  CollectiveOperators ops;
  ops.minus = CMatrix::Zero(n.dim(), n.dim());
  ops.z = CMatrix::Zero(n.dim(), n.dim());
  for (int site = 1; site <= n.n(); ++site) {
    ops.minus += site_operator(n, site, Axis::minus);
    ops.z += site_operator(n, site, Axis::z);
  }
  ops.plus = ops.minus.adjoint();
  return ops;
}

CMatrix lowering_operator(QubitCount n) {
  CMatrix out = CMatrix::Zero(n.dim(), n.dim());
  for (Index col = 0; col < n.dim(); ++col) {
    for (int site = 1; site <= n.n(); ++site) {
      const Index bit = site_bit(n.n(), site);
      if (col & bit) out(col & ~bit, col) += 1.0;
    }
  }
  return out;
}

CMatrix hamiltonian(QubitCount n, const DeltaMatrix& delta) {
  if (delta.size() != n.n()) {
    throw ArgumentError("Delta is " + std::to_string(delta.size()) + "x" +
                        std::to_string(delta.size()) + " but there are " +
                        std::to_string(n.n()) + " qubits");
  }
  const int nq = n.n();
  CMatrix h = CMatrix::Zero(n.dim(), n.dim());
  for (Index col = 0; col < n.dim(); ++col) {
    for (int j = 1; j <= nq; ++j) {
      const Index bj = site_bit(nq, j);
      if (!(col & bj)) continue;
      const Index lowered = col & ~bj;
      for (int i = 1; i <= nq; ++i) {
        const Index bi = site_bit(nq, i);
        if (lowered & bi) continue;
        h(lowered | bi, col) += delta(i - 1, j - 1);
      }
    }
  }
  return h;
}

WeightSector::WeightSector(QubitCount n, int m) : n_(n.n()), m_(m) {
  if (m < 0 || m > n.n()) {
    throw ArgumentError("weight " + std::to_string(m) + " outside [0, " +
                        std::to_string(n.n()) + "]");
  }
  for (Index idx = 0; idx < n.dim(); ++idx) {
    if (std::popcount(static_cast<unsigned long long>(idx)) == m) indices_.push_back(idx);
  }
}

std::vector<int> WeightSector::excited_sites(Index k) const {
  std::vector<int> sites;
  const Index idx = indices_.at(static_cast<std::size_t>(k));
  for (int site = 1; site <= n_; ++site) {
    if (idx & site_bit(n_, site)) sites.push_back(site);
  }
  return sites;
}

CMatrix WeightSector::embed() const {
  CMatrix e = CMatrix::Zero(Index{1} << n_, count());
  for (Index k = 0; k < count(); ++k) e(indices_[static_cast<std::size_t>(k)], k) = 1.0;
  return e;
}

CMatrix restrict(const CMatrix& op, const WeightSector& sector) {
  return restrict(op, sector, sector);
}

CMatrix restrict(const CMatrix& op, const WeightSector& from, const WeightSector& to) {
  const Index dim = Index{1} << from.qubits();
  if (op.rows() != dim || op.cols() != dim || to.qubits() != from.qubits()) {
    throw ArgumentError("operator dimension does not match the weight sector");
  }
  CMatrix out(to.count(), from.count());
  for (Index c = 0; c < from.count(); ++c) {
    for (Index r = 0; r < to.count(); ++r) {
      out(r, c) = op(to.indices()[static_cast<std::size_t>(r)],
                     from.indices()[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& a, double tol_rel) {
  if (a.rows() != a.cols()) return false;
  const double scale = max_abs(a);
  const CMatrix diff = a - a.adjoint();
  return max_abs(diff) <= tol_rel * std::max(scale, 1e-300);
}

}  // namespace dfsslab
