#pragma once

#include <limits>

#include "dfsslab/types.hpp"

namespace dfsslab {

/// Orthonormal kernel basis of a matrix together with the singular-value
/// evidence that produced it.
struct NullSpace {
  CMatrix basis;                ///< cols x k, orthonormal columns
  RVector singular_values;      ///< descending, length min(rows, cols)
  double tol = 0.0;             ///< cutoff actually applied
  /// Smallest singular value kept out of the kernel; +inf if none.
  double smallest_retained = std::numeric_limits<double>::infinity();
};

/// Default rank cutoff: max(rows, cols) * eps * scale.
double default_rank_tol(Index rows, Index cols, double scale);

/// Kernel of `a` via a full SVD. Singular values <= tol are treated as zero;
/// columns beyond min(rows, cols) are always kernel directions.
NullSpace null_space(const CMatrix& a, double tol);

/// Orthonormal basis for the column span of `a` (singular values > tol).
CMatrix orthonormal_range(const CMatrix& a, double tol);

/// max-entry norm of (I - B B^H) A: how far the columns of A stick out of
/// span(B). B must have orthonormal columns.
double projection_residual(const CMatrix& a, const CMatrix& b);

/// Infinity norm (max absolute row sum); a cheap upper bound on ||A||_2.
double inf_norm(const CMatrix& a);

}  // namespace dfsslab
