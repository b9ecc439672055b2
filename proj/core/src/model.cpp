#include "dfsslab/model.hpp"

#include <cmath>

namespace dfsslab {

LindbladModel::LindbladModel(QubitCount n, DeltaMatrix delta, double kappa)
    : n_(n), delta_(std::move(delta)), kappa_(kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ArgumentError("kappa must be finite and non-negative");
  }
  h_ = dfsslab::hamiltonian(n_, delta_);
  s_minus_ = lowering_operator(n_);
}

LindbladModel LindbladModel::with_hamiltonian_scale(double s) const {
  return LindbladModel(n_, delta_.scaled(s), kappa_);
}

LindbladModel LindbladModel::with_kappa(double kappa) const {
  return LindbladModel(n_, delta_, kappa);
}

}  // namespace dfsslab
