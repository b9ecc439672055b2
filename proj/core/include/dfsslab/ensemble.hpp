#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "dfsslab/operators.hpp"
#include "dfsslab/resultant.hpp"

namespace dfsslab {

/// Portable seeded source: std::mt19937_64 (fully specified by the standard),
/// uniforms from the top 53 bits, normals by the Box-Muller transform. The
/// standard distributions are avoided because their algorithms are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

enum class EnsembleKind { gaussian_symmetric, equal_offdiagonal_pair, all_equal, square_lattice, user_matrix };

std::string_view to_string(EnsembleKind k);
EnsembleKind parse_ensemble_kind(std::string_view s);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::gaussian_symmetric;
  int n = 3;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::optional<DeltaMatrix> user;  ///< required for user_matrix
};

/// One Delta from the ensemble:
///  - gaussian_symmetric: i.i.d. normal(0, scale^2) upper triangle, mirrored;
///  - equal_offdiagonal_pair: Gaussian, then qubits 1 and 2 made exchange
///    symmetric (Delta_22 = Delta_11, Delta_k2 = Delta_k1), so e1 - e2 is an
///    eigenvector; for N = 3 with zero diagonal this is x1 = x2;
///  - all_equal: one diagonal value and one off-diagonal value;
///  - square_lattice (N = 4): sides a, diagonals b, zero diagonal;
///  - user_matrix: the supplied matrix.
/// Tied entries are bit-identical copies.
DeltaMatrix sample_delta(const EnsembleSpec& spec, Rng& rng);

enum class Detector { subspace, resultant, both };

std::string_view to_string(Detector d);
Detector parse_detector(std::string_view s);

struct RarityReport {
  EnsembleSpec ensemble;
  int samples = 0;
  int hits = 0;
  double hit_fraction = 0.0;
  int borderline = 0;
  Detector detector = Detector::both;
  bool all_sectors = false;
  /// Sample indices where the two detectors disagreed outside their
  /// borderline bands. Expected to stay empty.
  std::vector<int> disagreements;
  /// Histogram of the subspace detector's CDFS dimension.
  std::map<Index, int> cdfs_dim_counts;
  Tolerances tolerances;
};

/// Per-sample verdict, exposed for tests and the CLI.
struct SampleVerdict {
  bool hit = false;
  bool borderline = false;
  bool disagreement = false;
  Index cdfs_dim = 0;
  double subspace_margin = 0.0;
  Decision resultant = Decision::none;
};

/// Detects a CDFS for one Delta. The resultant detector only covers V1; with
/// all_sectors the subspace detector also scans m = 2..N.
SampleVerdict detect_cdfs(const DeltaMatrix& delta, Detector detector, bool all_sectors,
                          const Tolerances& tol = {});

/// A subspace answer within this factor of the rank cutoff is borderline.
inline constexpr double kBorderlineMarginFactor = 10.0;

RarityReport rarity_study(const EnsembleSpec& spec, int samples, Detector detector,
                          bool all_sectors = false, const Tolerances& tol = {});

}  // namespace dfsslab
