#pragma once

#include <vector>

#include "dfsslab/types.hpp"

namespace dfsslab {

/// Largest qubit count accepted by default: 8, or DFSSLAB_NMAX when set.
int default_n_max();

/// Number of qubits N together with the Hilbert-space dimension 2^N.
class QubitCount {
 public:
  explicit QubitCount(int n) : QubitCount(n, default_n_max()) {}
  QubitCount(int n, int n_max);

  int n() const { return n_; }
  Index dim() const { return Index{1} << n_; }

  friend bool operator==(const QubitCount&, const QubitCount&) = default;

 private:
  int n_;
};

/// Real symmetric N x N coupling matrix of the Hamiltonian
/// H = sum_ij Delta_ij S+^i S-^j.
class DeltaMatrix {
 public:
  /// Throws ArgumentError unless `m` is square, finite and exactly symmetric.
  /// With `symmetrize` the matrix is replaced by (m + m^T) / 2 first.
  explicit DeltaMatrix(RMatrix m, bool symmetrize = false);

  static DeltaMatrix zero(int n) { return DeltaMatrix(RMatrix::Zero(n, n)); }

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const RMatrix& matrix() const { return m_; }

  DeltaMatrix scaled(double s) const { return DeltaMatrix(m_ * s); }

 private:
  RMatrix m_;
};

enum class Axis { x, y, z, plus, minus };

/// I^(site-1) (x) op (x) I^(n-site) with site 1 the most significant bit.
///
/// Bit value 1 marks an excited qubit. The single-qubit matrices are
/// sigma_- = |0><1|, sigma_+ = |1><0| = (sigma_x + i sigma_y)/2 and
/// sigma_z/2 = (|1><1| - |0><0|)/2, which makes [S+, S-] = 2 S_z and
/// [S_z, S+-] = +-S+- hold for the collective sums.
CMatrix site_operator(QubitCount n, int site, Axis axis);

struct CollectiveOperators {
  CMatrix minus;
  CMatrix plus;
  CMatrix z;
};

CollectiveOperators collective_operators(QubitCount n);

/// Collective lowering operator only, built directly from bit flips.
CMatrix lowering_operator(QubitCount n);

/// H = sum_ij Delta_ij S+^i S-^j, assembled entrywise. Block diagonal over
/// weight sectors.
CMatrix hamiltonian(QubitCount n, const DeltaMatrix& delta);

/// Span of the computational basis states with exactly m excitations.
class WeightSector {
 public:
  WeightSector(QubitCount n, int m);

  int qubits() const { return n_; }
  int m() const { return m_; }
  Index count() const { return static_cast<Index>(indices_.size()); }
  /// Ascending computational-basis indices.
  const std::vector<Index>& indices() const { return indices_; }
  /// 1-based qubit labels excited in the k-th basis state, ascending.
  std::vector<int> excited_sites(Index k) const;
  /// dim x count matrix of standard basis columns.
  CMatrix embed() const;

 private:
  int n_;
  int m_;
  std::vector<Index> indices_;
};

inline WeightSector weight_sector(QubitCount n, int m) { return WeightSector(n, m); }

/// embed^T * op * embed.
CMatrix restrict(const CMatrix& op, const WeightSector& sector);

/// Block of `op` mapping sector `from` into sector `to`.
CMatrix restrict(const CMatrix& op, const WeightSector& from, const WeightSector& to);

bool is_hermitian(const CMatrix& a, double tol_rel = 1e-10);

}  // namespace dfsslab
