#include "dfsslab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dfsslab/subspace.hpp"

namespace dfsslab {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

std::string_view to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::gaussian_symmetric:
      return "gaussian_symmetric";
    case EnsembleKind::equal_offdiagonal_pair:
      return "equal_offdiagonal_pair";
    case EnsembleKind::all_equal:
      return "all_equal";
    case EnsembleKind::square_lattice:
      return "square_lattice";
    case EnsembleKind::user_matrix:
      return "user_matrix";
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(std::string_view s) {
  for (auto k : {EnsembleKind::gaussian_symmetric, EnsembleKind::equal_offdiagonal_pair,
                 EnsembleKind::all_equal, EnsembleKind::square_lattice, EnsembleKind::user_matrix}) {
    if (s == to_string(k)) return k;
  }
  throw ArgumentError("unknown ensemble kind '" + std::string(s) + "'");
}

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::subspace:
      return "subspace";
    case Detector::resultant:
      return "resultant";
    case Detector::both:
      return "both";
  }
  return "unknown";
}

Detector parse_detector(std::string_view s) {
  for (auto d : {Detector::subspace, Detector::resultant, Detector::both}) {
    if (s == to_string(d)) return d;
  }
  throw ArgumentError("unknown detector '" + std::string(s) + "'");
}

DeltaMatrix sample_delta(const EnsembleSpec& spec, Rng& rng) {
  const int n = spec.n;
  if (n < 1) throw ArgumentError("ensemble size must be >= 1");
  if (!(spec.scale > 0.0)) throw ArgumentError("ensemble scale must be positive");
  RMatrix m = RMatrix::Zero(n, n);

  switch (spec.kind) {
    case EnsembleKind::gaussian_symmetric:
    case EnsembleKind::equal_offdiagonal_pair:
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          m(i, j) = spec.scale * rng.normal();
          m(j, i) = m(i, j);
        }
      }
      if (spec.kind == EnsembleKind::equal_offdiagonal_pair) {
        if (n < 2) throw ArgumentError("equal_offdiagonal_pair needs N >= 2");
        m(1, 1) = m(0, 0);
        for (int k = 2; k < n; ++k) {
          m(k, 1) = m(k, 0);
          m(1, k) = m(k, 0);
        }
      }
      break;
    case EnsembleKind::all_equal: {
      const double diag = spec.scale * rng.normal();
      const double off = spec.scale * rng.normal();
      m.setConstant(off);
      m.diagonal().setConstant(diag);
      break;
    }
    case EnsembleKind::square_lattice: {
      if (n != 4) throw ArgumentError("square_lattice needs N = 4");
      const double side = spec.scale * rng.normal();
      const double diagonal = spec.scale * rng.normal();
      // corners 1-2-3-4 in cyclic order
      for (int i = 0; i < 4; ++i) {
        const int next = (i + 1) % 4;
        m(i, next) = side;
        m(next, i) = side;
      }
      m(0, 2) = m(2, 0) = diagonal;
      m(1, 3) = m(3, 1) = diagonal;
      break;
    }
    case EnsembleKind::user_matrix:
      if (!spec.user) throw ArgumentError("user_matrix ensemble needs a matrix");
      if (spec.user->size() != n) throw ArgumentError("user matrix size does not match N");
      return *spec.user;
  }
  return DeltaMatrix(std::move(m));
}

SampleVerdict detect_cdfs(const DeltaMatrix& delta, Detector detector, bool all_sectors,
                          const Tolerances& tol) {
  SampleVerdict v;
  const int n = delta.size();
  bool sub_hit = false;
  bool sub_border = false;
  bool sub_hit_v1 = false;
  bool sub_border_v1 = false;
  if (detector != Detector::resultant) {
    const LindbladModel model(QubitCount(n), delta);
    v.subspace_margin = std::numeric_limits<double>::infinity();
    const int last = all_sectors ? n : std::min(1, n);
    for (int m = 1; m <= last; ++m) {
      const Subspace c = cdfs_sector(model, m, tol);
      v.cdfs_dim += c.dim();
      v.subspace_margin = std::min(v.subspace_margin, c.margin);
      const bool border = c.margin < kBorderlineMarginFactor;
      sub_border = sub_border || border;
      sub_hit = sub_hit || c.dim() > 0;
      if (m == 1) {
        sub_hit_v1 = c.dim() > 0;
        sub_border_v1 = border;
      }
    }
  }
  bool res_hit = false;
  bool res_border = false;
  if (detector != Detector::subspace && n >= 2) {
    v.resultant = cdfs_exists_v1(delta, tol).decision;
    res_hit = v.resultant == Decision::cdfs_exists;
    res_border = v.resultant == Decision::borderline;
  }

  switch (detector) {
    case Detector::subspace:
      v.borderline = sub_border;
      v.hit = sub_hit && !sub_border;
      break;
    case Detector::resultant:
      v.borderline = res_border;
      v.hit = res_hit;
      break;
    case Detector::both:
      v.borderline = sub_border || res_border;
      if (!sub_border_v1 && !res_border && sub_hit_v1 != res_hit) v.disagreement = true;
      v.hit = sub_hit && !v.borderline;
      break;
  }
  return v;
}

RarityReport rarity_study(const EnsembleSpec& spec, int samples, Detector detector,
                          bool all_sectors, const Tolerances& tol) {
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  RarityReport report;
  report.ensemble = spec;
  report.samples = samples;
  report.detector = detector;
  report.all_sectors = all_sectors;
  report.tolerances = tol;

  Rng rng(spec.seed);
  for (int i = 0; i < samples; ++i) {
    const DeltaMatrix delta = sample_delta(spec, rng);
    const SampleVerdict v = detect_cdfs(delta, detector, all_sectors, tol);
    if (v.borderline) {
      ++report.borderline;
    } else if (v.hit) {
      ++report.hits;
    }
    if (v.disagreement) report.disagreements.push_back(i);
    if (detector != Detector::resultant) ++report.cdfs_dim_counts[v.cdfs_dim];
  }
  report.hit_fraction = static_cast<double>(report.hits) / static_cast<double>(samples);
  return report;
}

}  // namespace dfsslab
