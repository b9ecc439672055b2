#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dfsslab/model.hpp"
#include "dfsslab/subspace.hpp"

namespace dfsslab {

/// Hermitian, unit-trace, positive semidefinite matrix (within tolerance).
class DensityMatrix {
 public:
  /// Validates with the default tolerances (1e-10).
  explicit DensityMatrix(CMatrix data);
  /// Wraps without validation; used for trajectory outputs that are checked
  /// with trajectory tolerances instead.
  static DensityMatrix unchecked(CMatrix data);
  static DensityMatrix pure(const CVector& psi);

  const CMatrix& data() const { return data_; }
  Index dim() const { return data_.rows(); }
  Complex trace() const { return data_.trace(); }
  double purity() const { return (data_ * data_).trace().real(); }
  double min_eigenvalue() const;

 private:
  struct NoCheck {};
  DensityMatrix(CMatrix data, NoCheck) : data_(std::move(data)) {}
  CMatrix data_;
};

/// kappa (S- rho S+ - 1/2 {S+ S-, rho}).
CMatrix dissipator(const LindbladModel& model, const CMatrix& rho);

/// -i [H, rho] + dissipator(rho).
CMatrix lindblad_rhs(const LindbladModel& model, const CMatrix& rho);

/// Column-stacking vectorization: vec(A X B) = (B^T ⊗ A) vec(X).
CVector vectorize(const CMatrix& m);
CMatrix devectorize(const CVector& v, Index dim);

/// Default memory budget for a dense superoperator: 1 GiB.
inline constexpr std::size_t kDefaultSuperoperatorBudget = std::size_t{1} << 30;

/// L with vec(d rho / dt) = L vec(rho):
///   L = -i (I ⊗ H - H^T ⊗ I) + kappa (conj(S-) ⊗ S- - 1/2 I ⊗ S+S- - 1/2 (S+S-)^T ⊗ I).
/// Throws ResourceError if the dim^2 x dim^2 matrix exceeds `budget_bytes`.
CMatrix superoperator(const LindbladModel& model,
                      std::size_t budget_bytes = kDefaultSuperoperatorBudget);

enum class Backend { expm, ode };

struct EvolveOptions {
  Backend backend = Backend::expm;
  double ode_rtol = 1e-12;
  double ode_atol = 1e-13;
  bool validate = true;
  double trace_tol = 1e-9;
  double positivity_tol = 1e-8;
  double hermiticity_tol = 1e-9;
  std::size_t budget_bytes = kDefaultSuperoperatorBudget;
};

/// rho(t_k) for ascending times with times[0] >= 0. The expm backend applies
/// exp(L t_k) to vec(rho0); the ode backend integrates lindblad_rhs with an
/// adaptive Dormand-Prince stepper and never forms L. Throws NumericalError
/// when an output violates the trajectory tolerances.
std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  std::span<const double> times, const EvolveOptions& opts = {});

/// exp(-i H t) psi.
CVector unitary_evolve(const LindbladModel& model, const CVector& psi, double t);

enum class Regime { exact, weak_unitary, strong_unitary };

std::string_view to_string(Regime r);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;  ///< F^2(t)
  std::string initial_state;
  Regime regime = Regime::exact;
  double epsilon = 1.0;

  double max_deficit() const;
};

/// F^2(t) = <psi(t)| rho(t) |psi(t)>, psi(t) = exp(-iHt) psi0, rho(0) = |psi0><psi0|.
FidelityTrace fidelity_trace(const LindbladModel& model, const CVector& psi0,
                             std::span<const double> times, std::string initial_state = {},
                             const EvolveOptions& opts = {});

/// CSV with header "t,F2" and 17 significant digits per value.
void write_csv(std::ostream& os, const FidelityTrace& trace);

/// Least-squares fit of log y = log C + p log x over points with y > floor.
struct PowerLawFit {
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double ci_low = std::numeric_limits<double>::quiet_NaN();   ///< 95% interval
  double ci_high = std::numeric_limits<double>::quiet_NaN();
  double prefactor = std::numeric_limits<double>::quiet_NaN();
  int points_used = 0;
  /// Every y was at or below the floor: the quantity is protected to
  /// working precision and the exponent is reported as +inf.
  bool below_floor = false;
};

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys,
                          double floor = 1e-12);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

struct RegimeRow {
  double epsilon;
  double deficit;  ///< 1 - F^2(t_fixed)
};

struct RegimeTable {
  Regime regime = Regime::weak_unitary;
  double t_fixed = 1.0;
  std::vector<RegimeRow> rows;
  PowerLawFit fit;  ///< deficit ~ C eps^p
  /// weak_unitary: p >= 1.9 (second order or faster);
  /// strong_unitary: p within 1 +- 0.2, or deficit zero throughout (exactly stable).
  bool consistent = false;
};

/// weak_unitary scales H -> eps H, strong_unitary scales kappa -> eps kappa,
/// and records the fidelity deficit at t_fixed. psi0 must be decoherence free.
RegimeTable regime_experiment(const LindbladModel& model, const CVector& psi0, Regime regime,
                              std::span<const double> epsilons, double t_fixed,
                              const EvolveOptions& opts = {}, const Tolerances& tol = {});

struct OrderCheck {
  int order_k = 0;
  CVector psi0;          ///< state drawn from robust_subspace(order_k)
  bool strictly_order_k; ///< psi0 lies outside robust_subspace(order_k + 1)
  FidelityTrace trace;
  PowerLawFit fit;       ///< 1 - F^2 ~ C t^p
};

/// Fits the small-t exponent of 1 - F^2 for a state protected to order k.
/// The state is taken from the part of robust_subspace(order_k) orthogonal to
/// robust_subspace(order_k + 1) in the lowest excited sector that has one.
/// Default times: 24 log-spaced points on [1e-3, 1e-1] / kappa.
OrderCheck robustness_order_check(const LindbladModel& model, int order_k,
                                  std::span<const double> times = {},
                                  const EvolveOptions& opts = {}, const Tolerances& tol = {});

}  // namespace dfsslab
