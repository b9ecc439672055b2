#include "dfsslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "dfsslab/linalg.hpp"

namespace dfsslab {

namespace {

const Complex kI(0.0, 1.0);

void check_times(std::span<const double> times) {
  if (times.empty()) return;
  if (!(times.front() >= 0.0)) throw ArgumentError("times must start at t >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] >= times[k - 1])) throw ArgumentError("times must be ascending");
  }
}

void check_trajectory_point(const CMatrix& rho, double t, const EvolveOptions& opts) {
  const double trace_err = std::abs(rho.trace() - Complex(1.0));
  const double herm_err = max_abs(CMatrix(rho - rho.adjoint()));
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (trace_err > opts.trace_tol || herm_err > opts.hermiticity_tol ||
      min_eig < -opts.positivity_tol) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "density matrix invariant violated at t=%.6g: |tr-1|=%.3e, "
                  "hermiticity=%.3e, min eigenvalue=%.3e",
                  t, trace_err, herm_err, min_eig);
    throw NumericalError(buf);
  }
}

/// Spectral decomposition of H, reused for exp(-iHt) at many t.
class UnitaryPropagator {
 public:
  explicit UnitaryPropagator(const CMatrix& h) : eig_(h) {}

  CVector apply(const CVector& psi, double t) const {
    const CVector coeffs = eig_.eigenvectors().adjoint() * psi;
    CVector phased(coeffs.size());
    for (Index k = 0; k < coeffs.size(); ++k) {
      phased(k) = std::exp(-kI * eig_.eigenvalues()(k) * t) * coeffs(k);
    }
    return eig_.eigenvectors() * phased;
  }

 private:
  Eigen::SelfAdjointEigenSolver<CMatrix> eig_;
};

void require_unit(const CVector& psi, Index dim) {
  if (psi.size() != dim) throw ArgumentError("state vector has the wrong dimension");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ArgumentError("state vector is not normalized");
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) throw ArgumentError("density matrix must be square");
  if (max_abs(CMatrix(data_ - data_.adjoint())) > 1e-10) {
    throw ArgumentError("density matrix is not Hermitian");
  }
  if (std::abs(data_.trace() - Complex(1.0)) > 1e-10) {
    throw ArgumentError("density matrix trace differs from 1");
  }
  if (min_eigenvalue() < -1e-10) throw ArgumentError("density matrix is not positive");
}

DensityMatrix DensityMatrix::unchecked(CMatrix data) { return DensityMatrix(std::move(data), NoCheck{}); }

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ArgumentError("state vector is not normalized");
  return DensityMatrix(CMatrix(psi * psi.adjoint()), NoCheck{});
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

CMatrix dissipator(const LindbladModel& model, const CMatrix& rho) {
  const CMatrix& s = model.lowering();
  const CMatrix sp = s.adjoint();
  const CMatrix number = sp * s;
  return model.kappa() * (s * rho * sp - 0.5 * (number * rho + rho * number));
}

CMatrix lindblad_rhs(const LindbladModel& model, const CMatrix& rho) {
  const CMatrix& h = model.hamiltonian();
  return -kI * (h * rho - rho * h) + dissipator(model, rho);
}

CVector vectorize(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix devectorize(const CVector& v, Index dim) {
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

CMatrix superoperator(const LindbladModel& model, std::size_t budget_bytes) {
  const Index d = model.dim();
  const double bytes = std::pow(static_cast<double>(d), 4) * sizeof(Complex);
  if (bytes > static_cast<double>(budget_bytes)) {
    throw ResourceError("superoperator for N=" + std::to_string(model.n()) + " needs " +
                        std::to_string(bytes / (1 << 20)) + " MiB, over budget");
  }
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix& h = model.hamiltonian();
  const CMatrix& s = model.lowering();
  const CMatrix number = s.adjoint() * s;

  CMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  if (model.kappa() != 0.0) {
    l += model.kappa() * (kron(s.conjugate(), s) - 0.5 * kron(id, number) -
                          0.5 * kron(number.transpose(), id));
  }
  return l;
}

std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  std::span<const double> times, const EvolveOptions& opts) {
  check_times(times);
  const Index d = model.dim();
  if (rho0.dim() != d) throw ArgumentError("initial state has the wrong dimension");

  std::vector<DensityMatrix> out;
  out.reserve(times.size());

  if (opts.backend == Backend::expm) {
    const CMatrix l = superoperator(model, opts.budget_bytes);
    const CVector v0 = vectorize(rho0.data());
    for (double t : times) {
      const CMatrix prop = (l * t).exp();
      out.push_back(DensityMatrix::unchecked(devectorize(prop * v0, d)));
    }
  } else {
    using State = std::vector<double>;
    namespace odeint = boost::numeric::odeint;
    const Index n2 = d * d;
    auto rhs = [&](const State& x, State& dxdt, double /*t*/) {
      const Eigen::Map<const CMatrix> rho(reinterpret_cast<const Complex*>(x.data()), d, d);
      Eigen::Map<CMatrix> drho(reinterpret_cast<Complex*>(dxdt.data()), d, d);
      drho = lindblad_rhs(model, rho);
    };
    State x(static_cast<std::size_t>(2 * n2));
    Eigen::Map<CMatrix>(reinterpret_cast<Complex*>(x.data()), d, d) = rho0.data();

    std::vector<CMatrix> snapshots;
    auto observe = [&](const State& s, double) {
      snapshots.emplace_back(
          Eigen::Map<const CMatrix>(reinterpret_cast<const Complex*>(s.data()), d, d));
    };
    if (!times.empty()) {
      const double span = std::max(times.back() - times.front(), 1e-12);
      auto stepper = odeint::make_dense_output(opts.ode_atol, opts.ode_rtol,
                                               odeint::runge_kutta_dopri5<State>());
      odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), span * 1e-3, observe);
    }
    for (auto& snap : snapshots) out.push_back(DensityMatrix::unchecked(std::move(snap)));
  }

  if (opts.validate) {
    for (std::size_t k = 0; k < out.size(); ++k) check_trajectory_point(out[k].data(), times[k], opts);
  }
  return out;
}

CVector unitary_evolve(const LindbladModel& model, const CVector& psi, double t) {
  return UnitaryPropagator(model.hamiltonian()).apply(psi, t);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::exact:
      return "exact";
    case Regime::weak_unitary:
      return "weak_unitary";
    case Regime::strong_unitary:
      return "strong_unitary";
  }
  return "unknown";
}

double FidelityTrace::max_deficit() const {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, 1.0 - v);
  return worst;
}

FidelityTrace fidelity_trace(const LindbladModel& model, const CVector& psi0,
                             std::span<const double> times, std::string initial_state,
                             const EvolveOptions& opts) {
  require_unit(psi0, model.dim());
  const auto rhos = evolve(model, DensityMatrix::pure(psi0), times, opts);
  const UnitaryPropagator u(model.hamiltonian());

  FidelityTrace trace;
  trace.initial_state = std::move(initial_state);
  trace.times.assign(times.begin(), times.end());
  trace.values.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const CVector psi_t = u.apply(psi0, times[k]);
    const double f2 = psi_t.dot(rhos[k].data() * psi_t).real();
    trace.values.push_back(times[k] == 0.0 ? 1.0 : f2);
  }
  return trace;
}

void write_csv(std::ostream& os, const FidelityTrace& trace) {
  os << "t,F2\n";
  char buf[64];
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,", trace.times[k]);
    os << buf;
    std::snprintf(buf, sizeof buf, "%.17g\n", trace.values[k]);
    os << buf;
  }
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys, double floor) {
  if (xs.size() != ys.size()) throw ArgumentError("fit_power_law: size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] > 0.0 && ys[k] > floor) {
      lx.push_back(std::log(xs[k]));
      ly.push_back(std::log(ys[k]));
    }
  }
  PowerLawFit fit;
  fit.points_used = static_cast<int>(lx.size());
  if (lx.empty()) {
    fit.below_floor = true;
    fit.exponent = std::numeric_limits<double>::infinity();
    return fit;
  }
  if (lx.size() < 2) return fit;

  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) return fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  if (lx.size() > 2) {
    double sse = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      const double r = ly[k] - (my + fit.exponent * (lx[k] - mx));
      sse += r * r;
    }
    const double se = std::sqrt(sse / (n - 2.0) / sxx);
    const boost::math::students_t dist(n - 2.0);
    const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
    fit.ci_low = fit.exponent - q * se;
    fit.ci_high = fit.exponent + q * se;
  } else {
    fit.ci_low = fit.ci_high = fit.exponent;
  }
  return fit;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw ArgumentError("log_spaced: bad range");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < count; ++k) out.push_back(std::exp(a + (b - a) * k / (count - 1)));
  out.back() = hi;
  out.front() = lo;
  return out;
}

RegimeTable regime_experiment(const LindbladModel& model, const CVector& psi0, Regime regime,
                              std::span<const double> epsilons, double t_fixed,
                              const EvolveOptions& opts, const Tolerances& tol) {
  require_unit(psi0, model.dim());
  if (regime == Regime::exact) throw ArgumentError("regime_experiment needs weak or strong");
  if (max_abs(CMatrix(model.lowering() * psi0)) > tol.zero) {
    throw ArgumentError("initial state is not decoherence free (S- psi0 != 0)");
  }
  if (!(t_fixed > 0.0)) throw ArgumentError("t_fixed must be positive");

  RegimeTable table;
  table.regime = regime;
  table.t_fixed = t_fixed;
  std::vector<double> xs;
  std::vector<double> ys;
  const double at[] = {t_fixed};
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw ArgumentError("epsilons must be positive");
    const LindbladModel scaled = regime == Regime::weak_unitary
                                     ? model.with_hamiltonian_scale(eps)
                                     : model.with_kappa(model.kappa() * eps);
    const FidelityTrace tr = fidelity_trace(scaled, psi0, at, {}, opts);
    const double deficit = 1.0 - tr.values.front();
    table.rows.push_back({eps, deficit});
    xs.push_back(eps);
    ys.push_back(deficit);
  }
  table.fit = fit_power_law(xs, ys);
  if (regime == Regime::weak_unitary) {
    table.consistent = table.fit.below_floor || table.fit.exponent >= 1.9;
  } else {
    table.consistent = table.fit.below_floor || std::abs(table.fit.exponent - 1.0) <= 0.2;
  }
  return table;
}

OrderCheck robustness_order_check(const LindbladModel& model, int order_k,
                                  std::span<const double> times, const EvolveOptions& opts,
                                  const Tolerances& tol) {
  if (order_k < 1) throw ArgumentError("robust order must be >= 1");
  const Subspace robust = robust_subspace(model, order_k, tol);
  const Subspace tighter = robust_subspace(model, order_k + 1, tol);

  OrderCheck check;
  check.order_k = order_k;
  check.strictly_order_k = false;
  bool found = false;
  for (int m = 1; m <= model.n() && !check.strictly_order_k; ++m) {
    const CMatrix embed = WeightSector(model.qubits(), m).embed();
    std::vector<Index> cols;
    for (Index c = 0; c < robust.dim(); ++c) {
      if ((embed.adjoint() * robust.basis.col(c)).norm() > 0.5) cols.push_back(c);
    }
    if (cols.empty()) continue;
    CMatrix part(model.dim(), static_cast<Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) part.col(static_cast<Index>(i)) = robust.basis.col(cols[i]);
    if (!found) {
      check.psi0 = part.col(0);
      found = true;
    }
    const CMatrix outside = part - tighter.basis * (tighter.basis.adjoint() * part);
    const CMatrix strict = orthonormal_range(outside, 1e-8);
    if (strict.cols() > 0) {
      check.psi0 = strict.col(0);
      check.strictly_order_k = true;
    }
  }
  if (!found) {
    throw ArgumentError("robust subspace of order " + std::to_string(order_k) +
                        " has no excited states");
  }
  check.psi0.normalize();

  std::vector<double> grid;
  if (times.empty()) {
    const double k = model.kappa() > 0.0 ? model.kappa() : 1.0;
    grid = log_spaced(1e-3 / k, 1e-1 / k, 24);
    times = grid;
  }
  check.trace = fidelity_trace(model, check.psi0, times, "robust:" + std::to_string(order_k), opts);
  std::vector<double> deficits;
  for (double v : check.trace.values) deficits.push_back(1.0 - v);
  check.fit = fit_power_law(check.trace.times, deficits);
  return check;
}

}  // namespace dfsslab
