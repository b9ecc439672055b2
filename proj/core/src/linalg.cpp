#include "dfsslab/linalg.hpp"

#include <algorithm>

namespace dfsslab {

double default_rank_tol(Index rows, Index cols, double scale) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * scale;
}

NullSpace null_space(const CMatrix& a, double tol) {
  NullSpace out;
  out.tol = tol;
  const Index cols = a.cols();
  if (cols == 0) {
    out.basis = CMatrix(0, 0);
    return out;
  }
  if (a.rows() == 0) {
    out.basis = CMatrix::Identity(cols, cols);
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values(i);
    if (s > tol) {
      ++rank;
      out.smallest_retained = std::min(out.smallest_retained, s);
    }
  }
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

CMatrix orthonormal_range(const CMatrix& a, double tol) {
  if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

double projection_residual(const CMatrix& a, const CMatrix& b) {
  if (a.cols() == 0) return 0.0;
  if (b.cols() == 0) return max_abs(a);
  const CMatrix outside = a - b * (b.adjoint() * a);
  return max_abs(outside);
}

double inf_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace dfsslab
