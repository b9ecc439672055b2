#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dfsslab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Bad caller input: out-of-range sites, malformed matrices, failed preconditions.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity violated an invariant beyond its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested object would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical thresholds shared by every module. Defaults are the library
/// defaults; every field can be overridden from the CLI.
struct Tolerances {
  /// Hermiticity check, relative to the largest entry.
  double herm_rel = 1e-10;
  /// Absolute threshold for "structurally zero" residuals.
  double zero = 1e-10;
  /// Absolute singular-value cutoff for null spaces. Unset means
  /// max(rows, cols) * eps * scale, with scale chosen per call site.
  std::optional<double> rank;
  /// Eigenvalue clustering gap, relative to the spectral norm of Delta.
  double cluster_rel = 1e-8;
  /// Normalized resultant below this counts as a common root.
  double resultant = 1e-8;
  /// Upper edge of the band reported as borderline instead of decided.
  double resultant_borderline = 1e-6;
  /// Relative polynomial residual accepted at a common root, and the
  /// eigenpair/zero-sum residual used to validate it.
  double root = 1e-8;
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : static_cast<double>(a.cwiseAbs().maxCoeff());
}

}  // namespace dfsslab
