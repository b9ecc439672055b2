#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dfsslab/model.hpp"

namespace dfsslab {

/// Orthonormal basis of a linear subspace of the 2^N-dimensional space.
struct Subspace {
  CMatrix basis;      ///< ambient_dim x k; k = 0 is the zero subspace
  double tol = 0.0;   ///< rank cutoff of the last null-space step
  std::string label;
  /// min over the null-space steps of (smallest kept singular value / tol).
  /// Values near 1 mean the answer would flip under a small change of tol.
  double margin = std::numeric_limits<double>::infinity();

  Index ambient_dim() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }
  bool empty() const { return basis.cols() == 0; }
  CMatrix projector() const { return basis * basis.adjoint(); }

  static Subspace zero(Index ambient_dim, std::string label = {});
};

/// Direct sum of subspaces with mutually orthogonal spans (e.g. per sector).
Subspace direct_sum(const std::vector<Subspace>& parts, std::string label = {});

/// True if span(inner) lies in span(outer) within `tol` (max-entry residual).
bool contains(const Subspace& outer, const Subspace& inner, double tol);

/// Mutual projection residual; +inf when the dimensions differ.
double subspace_distance(const Subspace& a, const Subspace& b);

/// ker(S-) inside the weight sector V_m, embedded in the full space.
/// For m = 1 this is the zero-component-sum subspace of dimension N-1.
Subspace dfs_basis(const LindbladModel& model, int m, const Tolerances& tol = {});

/// Maximal H-invariant subspace of `dfs`, by shrinking W_{k+1} = W_k ∩ H^{-1} W_k
/// from the full DFS until the dimension stabilizes. `dfs` must lie in ker(S-).
Subspace cdfs_invariant(const LindbladModel& model, const Subspace& dfs,
                        const Tolerances& tol = {});

/// The same maximal CDFS from the commutator conditions [H^n, S-] w = 0,
/// n = 1..max_order, as one stacked null-space problem on `dfs`.
Subspace cdfs_commutator(const LindbladModel& model, const Subspace& dfs, int max_order,
                         const Tolerances& tol = {});

/// cdfs_invariant applied to dfs_basis(model, m).
Subspace cdfs_sector(const LindbladModel& model, int m, const Tolerances& tol = {});

/// ⊕_m ∩_{j<order_k} ker(ad(H)^j(S-)) restricted to V_m. order_k = 1 gives the
/// full DFS; the result shrinks monotonically with order_k.
Subspace robust_subspace(const LindbladModel& model, int order_k, const Tolerances& tol = {});

/// The operators S-, [H,S-], [H,[H,S-]], ... up to ad(H)^(count-1)(S-),
/// each rescaled to unit max-entry norm (zero operators stay zero).
std::vector<CMatrix> nested_commutators(const CMatrix& h, const CMatrix& s, int count);

struct EigenCluster {
  double value;
  int multiplicity;
};

struct DegeneracyReport {
  std::vector<EigenCluster> eigenvalues;  ///< ascending
  double cluster_tol = 0.0;
  int cdfs_lower_bound = 0;  ///< sum over clusters of (multiplicity - 1)
};

/// Clusters the spectrum of Delta by consecutive gaps <= cluster_tol. Unset
/// cluster_tol means tol.cluster_rel * ||Delta||_2.
DegeneracyReport degeneracy_witness(const DeltaMatrix& delta,
                                    std::optional<double> cluster_tol = std::nullopt,
                                    const Tolerances& tol = {});

struct CompatibilityReport {
  bool invariant = false;       ///< H_c w ⊆ w
  double invariant_residual = 0.0;
  bool commutes = false;        ///< [H_c, H_d] = 0
  double commutator_residual = 0.0;
  bool robust = false;          ///< w annihilated by ad(H_d)^j(S-), j < order_k
  double robust_residual = 0.0;
  bool all() const { return invariant && commutes && robust; }
};

CompatibilityReport verify_control_compatibility(const LindbladModel& model,
                                                 const CMatrix& h_control, const Subspace& w,
                                                 int order_k, const Tolerances& tol = {});

}  // namespace dfsslab
