#include "dfsslab/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "dfsslab/linalg.hpp"

namespace dfsslab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double cutoff(const Tolerances& tol, Index rows, Index cols, double scale) {
  return tol.rank ? *tol.rank : default_rank_tol(rows, cols, scale);
}

double margin_of(const NullSpace& ns) {
  if (!std::isfinite(ns.smallest_retained)) return std::numeric_limits<double>::infinity();
  if (ns.tol <= 0.0) return std::numeric_limits<double>::infinity();
  return ns.smallest_retained / ns.tol;
}

void require_dfs(const LindbladModel& model, const Subspace& dfs, const Tolerances& tol) {
  if (dfs.ambient_dim() != model.dim()) {
    throw ArgumentError("subspace ambient dimension does not match the model");
  }
  if (dfs.empty()) return;
  const double residual = max_abs(CMatrix(model.lowering() * dfs.basis));
  if (residual > tol.zero * std::max(1.0, static_cast<double>(model.n()))) {
    throw ArgumentError("subspace is not annihilated by S- (residual " +
                        std::to_string(residual) + ")");
  }
}

// Commutators that are zero in exact arithmetic come out as rounding noise;
// rescaling that noise to unit size would invent constraints.
bool negligible(const CMatrix& c, double a_norm, double b_norm, Index dim) {
  return max_abs(c) <= 64.0 * kEps * static_cast<double>(dim) * a_norm * b_norm;
}

CMatrix stack(const std::vector<CMatrix>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  CMatrix z(rows, cols);
  Index r = 0;
  for (const auto& b : blocks) {
    z.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return z;
}

}  // namespace

Subspace Subspace::zero(Index ambient_dim, std::string label) {
  Subspace s;
  s.basis = CMatrix(ambient_dim, 0);
  s.label = std::move(label);
  return s;
}

Subspace direct_sum(const std::vector<Subspace>& parts, std::string label) {
  if (parts.empty()) throw ArgumentError("direct_sum of no subspaces");
  Subspace out;
  out.label = std::move(label);
  Index cols = 0;
  for (const auto& p : parts) {
    if (p.ambient_dim() != parts.front().ambient_dim()) {
      throw ArgumentError("direct_sum: ambient dimensions differ");
    }
    cols += p.dim();
    out.tol = std::max(out.tol, p.tol);
    out.margin = std::min(out.margin, p.margin);
  }
  out.basis = CMatrix(parts.front().ambient_dim(), cols);
  Index c = 0;
  for (const auto& p : parts) {
    out.basis.middleCols(c, p.dim()) = p.basis;
    c += p.dim();
  }
  return out;
}

bool contains(const Subspace& outer, const Subspace& inner, double tol) {
  if (outer.ambient_dim() != inner.ambient_dim()) return false;
  return projection_residual(inner.basis, outer.basis) <= tol;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(projection_residual(a.basis, b.basis), projection_residual(b.basis, a.basis));
}

Subspace dfs_basis(const LindbladModel& model, int m, const Tolerances& tol) {
  const WeightSector sector(model.qubits(), m);
  Subspace out;
  out.label = "dfs:" + std::to_string(m);
  if (m == 0) {
    out.basis = sector.embed();
    return out;
  }
  const WeightSector below(model.qubits(), m - 1);
  const CMatrix a = restrict(model.lowering(), sector, below);
  const NullSpace ns = null_space(a, cutoff(tol, a.rows(), a.cols(), inf_norm(a)));
  out.basis = sector.embed() * ns.basis;
  out.tol = ns.tol;
  out.margin = margin_of(ns);
  return out;
}

namespace {

struct Shrunk {
  CMatrix w;
  double tol = 0.0;
  double margin = std::numeric_limits<double>::infinity();
};

// Top-down fixed point: drop the part of span(w) that H maps outside it.
Shrunk shrink_to_invariant(const CMatrix& h, CMatrix w, double tol) {
  Shrunk out;
  out.tol = tol;
  const Index start = w.cols();
  for (Index pass = 0; pass <= start && w.cols() > 0; ++pass) {
    const CMatrix hw = h * w;
    const CMatrix outside = hw - w * (w.adjoint() * hw);
    const NullSpace ns = null_space(outside, tol);
    out.margin = std::min(out.margin, margin_of(ns));
    if (ns.basis.cols() == w.cols()) break;
    w = w * ns.basis;
  }
  out.w = std::move(w);
  return out;
}

// H is Hermitian, so an invariant subspace is spanned by eigenvectors. For
// each Ritz cluster of the candidate, take the near-null directions of
// (H - theta) on the whole DFS. One SVD per cluster, no error carried over
// from earlier passes.
CMatrix refine_candidate(const CMatrix& h, const CMatrix& dfs, const CMatrix& candidate, double cluster) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(candidate.adjoint() * h * candidate);
  const RVector& theta = es.eigenvalues();
  std::vector<CMatrix> pieces;
  Index cols = 0;
  for (Index i = 0; i < theta.size();) {
    Index j = i + 1;
    while (j < theta.size() && theta(j) - theta(j - 1) <= cluster) ++j;
    const double centre = theta.segment(i, j - i).mean();
    const CMatrix shifted = h * dfs - centre * dfs;
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const Index c = std::min(j - i, dfs.cols());
    pieces.push_back(dfs * svd.matrixV().rightCols(c));
    cols += c;
    i = j;
  }
  CMatrix all(dfs.rows(), cols);
  Index at = 0;
  for (const auto& piece : pieces) {
    all.middleCols(at, piece.cols()) = piece;
    at += piece.cols();
  }
  return orthonormal_range(all, 0.5);
}

}  // namespace

Subspace cdfs_invariant(const LindbladModel& model, const Subspace& dfs, const Tolerances& tol) {
  require_dfs(model, dfs, tol);
  const CMatrix& h = model.hamiltonian();
  const double scale = inf_norm(h);

  Subspace out;
  out.label = "cdfs(" + dfs.label + ")";
  out.tol = dfs.tol;
  out.margin = dfs.margin;
  if (dfs.empty()) {
    out.basis = CMatrix::Zero(dfs.basis.rows(), 0);
    return out;
  }

  // H conserves the excitation number, so the iteration runs on the sectors
  // the DFS touches.
  std::vector<bool> weight_used(static_cast<std::size_t>(model.n()) + 1, false);
  for (Index i = 0; i < dfs.basis.rows(); ++i) {
    if (dfs.basis.row(i).cwiseAbs().maxCoeff() > 0.0) {
      weight_used[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(i)))] = true;
    }
  }
  std::vector<Index> rows;
  for (Index i = 0; i < dfs.basis.rows(); ++i) {
    if (weight_used[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(i)))]) rows.push_back(i);
  }
  const CMatrix hs = h(rows, rows);
  const CMatrix w0 = dfs.basis(rows, Eigen::all);

  const double strict = cutoff(tol, model.dim(), w0.cols(), scale);
  Shrunk best = shrink_to_invariant(hs, w0, strict);

  // Near a degenerate spectrum the intermediate spaces of the shrink are badly
  // conditioned and rounding can push a genuine direction over the cutoff.
  // Redo the shrink from a refined candidate found at a looser cutoff.
  const double loose = std::max(std::sqrt(kEps) * scale, 1e3 * strict);
  const Shrunk candidate = shrink_to_invariant(hs, w0, loose);
  if (candidate.w.cols() > best.w.cols()) {
    const CMatrix refined = refine_candidate(hs, w0, candidate.w, loose);
    Shrunk again = shrink_to_invariant(hs, refined, strict);
    if (again.w.cols() > best.w.cols()) best = std::move(again);
  }

  out.tol = best.tol;
  out.margin = std::min(out.margin, best.margin);
  out.basis = CMatrix::Zero(dfs.basis.rows(), best.w.cols());
  out.basis(rows, Eigen::all) = best.w;
  return out;
}

Subspace cdfs_commutator(const LindbladModel& model, const Subspace& dfs, int max_order,
                         const Tolerances& tol) {
  require_dfs(model, dfs, tol);
  Subspace out = dfs;
  out.label = "cdfs_comm(" + dfs.label + ")";
  const double scale = inf_norm(model.hamiltonian());
  if (max_order <= 0 || dfs.empty() || scale == 0.0) return out;

  const CMatrix hn = model.hamiltonian() / scale;
  const CMatrix& s = model.lowering();
  const double s_norm = max_abs(s);
  std::vector<CMatrix> blocks;
  CMatrix power = CMatrix::Identity(model.dim(), model.dim());
  for (int n = 1; n <= max_order; ++n) {
    power = power * hn;
    const CMatrix c = power * s - s * power;
    if (negligible(c, max_abs(power), s_norm, model.dim())) continue;
    blocks.push_back(c * dfs.basis / max_abs(c));
  }
  if (blocks.empty()) return out;
  const CMatrix z = stack(blocks, dfs.dim());
  const NullSpace ns = null_space(z, cutoff(tol, z.rows(), z.cols(), 1.0));
  out.basis = dfs.basis * ns.basis;
  out.tol = ns.tol;
  out.margin = std::min(dfs.margin, margin_of(ns));
  return out;
}

Subspace cdfs_sector(const LindbladModel& model, int m, const Tolerances& tol) {
  Subspace c = cdfs_invariant(model, dfs_basis(model, m, tol), tol);
  c.label = "cdfs:" + std::to_string(m);
  return c;
}

std::vector<CMatrix> nested_commutators(const CMatrix& h, const CMatrix& s, int count) {
  std::vector<CMatrix> ops;
  if (count <= 0) return ops;
  const double h_norm = max_abs(h);
  const double s_norm = max_abs(s);
  ops.push_back(s_norm > 0.0 ? CMatrix(s / s_norm) : s);
  for (int j = 1; j < count; ++j) {
    const CMatrix& prev = ops.back();
    CMatrix c = h * prev - prev * h;
    const double c_norm = max_abs(c);
    if (c_norm == 0.0 || negligible(c, h_norm, max_abs(prev), h.rows())) {
      c.setZero();
    } else {
      c /= c_norm;
    }
    ops.push_back(std::move(c));
  }
  return ops;
}

Subspace robust_subspace(const LindbladModel& model, int order_k, const Tolerances& tol) {
  if (order_k < 1) throw ArgumentError("robust order must be >= 1");
  const std::vector<CMatrix> ops = nested_commutators(model.hamiltonian(), model.lowering(), order_k);
  std::vector<Subspace> parts;
  for (int m = 0; m <= model.n(); ++m) {
    const WeightSector sector(model.qubits(), m);
    const CMatrix embed = sector.embed();
    std::vector<CMatrix> blocks;
    blocks.reserve(ops.size());
    for (const auto& op : ops) blocks.push_back(op * embed);
    const CMatrix z = stack(blocks, embed.cols());
    const NullSpace ns = null_space(z, cutoff(tol, z.rows(), z.cols(), 1.0));
    Subspace part;
    part.basis = embed * ns.basis;
    part.tol = ns.tol;
    part.margin = margin_of(ns);
    parts.push_back(std::move(part));
  }
  return direct_sum(parts, "robust:" + std::to_string(order_k));
}

DegeneracyReport degeneracy_witness(const DeltaMatrix& delta, std::optional<double> cluster_tol,
                                    const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(delta.matrix(), Eigen::EigenvaluesOnly);
  const RVector values = eig.eigenvalues();  // ascending
  const double norm = values.cwiseAbs().maxCoeff();

  DegeneracyReport report;
  report.cluster_tol = cluster_tol ? *cluster_tol : tol.cluster_rel * (norm > 0.0 ? norm : 1.0);

  Index start = 0;
  for (Index i = 1; i <= values.size(); ++i) {
    if (i < values.size() && values(i) - values(i - 1) <= report.cluster_tol) continue;
    const Index count = i - start;
    report.eigenvalues.push_back(
        {values.segment(start, count).mean(), static_cast<int>(count)});
    report.cdfs_lower_bound += static_cast<int>(count) - 1;
    start = i;
  }
  return report;
}

CompatibilityReport verify_control_compatibility(const LindbladModel& model,
                                                 const CMatrix& h_control, const Subspace& w,
                                                 int order_k, const Tolerances& tol) {
  if (h_control.rows() != model.dim() || h_control.cols() != model.dim()) {
    throw ArgumentError("control Hamiltonian has the wrong dimension");
  }
  if (!is_hermitian(h_control, tol.herm_rel)) {
    throw ArgumentError("control Hamiltonian is not Hermitian");
  }
  if (w.ambient_dim() != model.dim()) {
    throw ArgumentError("subspace ambient dimension does not match the model");
  }
  const CMatrix& hd = model.hamiltonian();
  const double hc_norm = max_abs(h_control);

  CompatibilityReport r;
  r.invariant_residual = projection_residual(h_control * w.basis, w.basis);
  r.invariant = r.invariant_residual <= tol.zero * std::max(1.0, hc_norm);

  const CMatrix comm = h_control * hd - hd * h_control;
  r.commutator_residual = max_abs(comm);
  r.commutes = r.commutator_residual <= tol.zero * std::max(1.0, hc_norm * max_abs(hd));

  for (const auto& op : nested_commutators(hd, model.lowering(), order_k)) {
    if (w.empty()) break;
    r.robust_residual = std::max(r.robust_residual, max_abs(CMatrix(op * w.basis)));
  }
  r.robust = r.robust_residual <= tol.zero;
  return r;
}

}  // namespace dfsslab
