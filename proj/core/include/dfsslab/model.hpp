#pragma once

#include "dfsslab/operators.hpp"

namespace dfsslab {

/// Open-system specification (N, Delta, kappa) with the derived H and S-.
/// A single collective Lindblad generator S- is assumed throughout.
class LindbladModel {
 public:
  LindbladModel(QubitCount n, DeltaMatrix delta, double kappa = 1.0);

  QubitCount qubits() const { return n_; }
  int n() const { return n_.n(); }
  Index dim() const { return n_.dim(); }
  const DeltaMatrix& delta() const { return delta_; }
  double kappa() const { return kappa_; }
  const CMatrix& hamiltonian() const { return h_; }
  const CMatrix& lowering() const { return s_minus_; }
  CMatrix raising() const { return s_minus_.adjoint(); }

  /// Same model with H -> s H (Delta -> s Delta).
  LindbladModel with_hamiltonian_scale(double s) const;
  LindbladModel with_kappa(double kappa) const;

 private:
  QubitCount n_;
  DeltaMatrix delta_;
  double kappa_;
  CMatrix h_;
  CMatrix s_minus_;
};

}  // namespace dfsslab
