#pragma once

#include <cstdint>

#include <unsupported/Eigen/KroneckerProduct>

#include "dfsslab/ensemble.hpp"
#include "dfsslab/model.hpp"

namespace testing {

using namespace dfsslab;

inline DeltaMatrix random_delta(Rng& rng, int n, double scale = 1.0) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = scale * rng.normal();
      m(j, i) = m(i, j);
    }
  }
  return DeltaMatrix(std::move(m));
}

/// Paper layout for N = 3: Delta_12 = x3, Delta_13 = x2, Delta_23 = x1, zero diagonal.
inline DeltaMatrix three_qubit(double x1, double x2, double x3) {
  RMatrix m = RMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = x3;
  m(0, 2) = m(2, 0) = x2;
  m(1, 2) = m(2, 1) = x1;
  return DeltaMatrix(std::move(m));
}

inline DeltaMatrix square_lattice(double side, double diagonal) {
  RMatrix m = RMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    m(i, j) = m(j, i) = side;
  }
  m(0, 2) = m(2, 0) = diagonal;
  m(1, 3) = m(3, 1) = diagonal;
  return DeltaMatrix(std::move(m));
}

/// Kronecker-product construction of a single-site operator, independent of
/// the bit-loop used by the library.
inline CMatrix kron_site(int n, int site, const CMatrix& op) {
  CMatrix acc = CMatrix::Identity(1, 1);
  for (int q = 1; q <= n; ++q) {
    const CMatrix factor = q == site ? op : CMatrix::Identity(2, 2);
    CMatrix next = Eigen::kroneckerProduct(acc, factor).eval();
    acc = next;
  }
  return acc;
}

inline CMatrix sigma_minus() {
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

inline CMatrix random_density(Rng& rng, Index dim) {
  CMatrix a(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace testing
