#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dfsslab/operators.hpp"
#include "dfsslab/subspace.hpp"

namespace dfsslab {

/// Real polynomial with coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  /// Trailing coefficients with |a_k| <= tol_trim * max|a| are dropped.
  explicit Polynomial(std::vector<double> coeffs, double tol_trim = 0.0);

  const std::vector<double>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  double operator()(double x) const;
  double sup_norm() const;
  /// sum_k |a_k| |x|^k, the natural scale for a residual at x.
  double magnitude_at(double x) const;
  /// Complex roots from the companion matrix.
  std::vector<Complex> roots() const;

 private:
  std::vector<double> coeffs_;
};

/// Gamma(c)_ij = Delta_ij - c delta_ij, 1 <= i, j <= N-1.
RMatrix gamma_matrix(const DeltaMatrix& delta, double c);

struct FgPair {
  Polynomial f;  ///< d^T adj(Gamma) d + det(Gamma) (c - Delta_NN), degree N
  Polynomial g;  ///< 1^T adj(Gamma) d + det(Gamma), degree <= N-1
};

/// Values of f and g at one point, evaluated through an eigendecomposition of
/// Gamma(c) so the adjugate stays defined when Gamma(c) is singular.
std::pair<double, double> evaluate_fg(const DeltaMatrix& delta, double c);

/// Recovers f and g by sampling at N+1 points and interpolating. Without
/// explicit points, Chebyshev nodes on [-R, R] with R = 1 + ||Delta||_inf are used.
FgPair build_fg(const DeltaMatrix& delta, std::span<const double> points = {});

/// Determinant of the Sylvester matrix. For f = c - 1, g = c - 2 this is -1.
/// Throws ArgumentError when both inputs are zero.
double resultant(const Polynomial& f, const Polynomial& g);

/// |Res(f, g)| / (||f||^deg g * ||g||^deg f) with coefficient sup-norms.
/// Invariant under rescaling either polynomial.
double normalized_resultant(const Polynomial& f, const Polynomial& g);

enum class Decision { cdfs_exists, none, borderline };

std::string_view to_string(Decision d);

struct ResultantReport {
  Polynomial f;  ///< for Delta / scale
  Polynomial g;
  double scale = 1.0;                ///< max |Delta_ij| used to normalize
  double resultant_value = 0.0;      ///< Res(f, g) of the normalized pair
  double normalized_resultant = 0.0; ///< see normalized_resultant()
  Decision decision = Decision::none;
  std::vector<double> common_roots;  ///< in the units of the input Delta
  int rejected_roots = 0;            ///< shared roots without a zero-sum eigenvector
  bool degenerate_spectrum = false;  ///< routed through degeneracy_witness
  DegeneracyReport degeneracy;
};

/// Algebraic CDFS existence test for the single-excitation sector.
ResultantReport cdfs_exists_v1(const DeltaMatrix& delta, const Tolerances& tol = {});

/// True if Delta has an eigenvector with eigenvalue near `c` whose
/// components sum to zero. Returns the normalized eigenvector residual.
double zero_sum_eigen_residual(const DeltaMatrix& delta, double c);

}  // namespace dfsslab
