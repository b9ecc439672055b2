#include "dfsslab/resultant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace dfsslab {

Polynomial::Polynomial(std::vector<double> coeffs, double tol_trim) : coeffs_(std::move(coeffs)) {
  double big = 0.0;
  for (double a : coeffs_) big = std::max(big, std::abs(a));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol_trim * big) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::sup_norm() const {
  double big = 0.0;
  for (double a : coeffs_) big = std::max(big, std::abs(a));
  return big;
}

double Polynomial::magnitude_at(double x) const {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

std::vector<Complex> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  RMatrix companion = RMatrix::Zero(n, n);
  const double lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<RMatrix> es(companion, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

RMatrix gamma_matrix(const DeltaMatrix& delta, double c) {
  const Index k = delta.size() - 1;
  if (k < 1) throw ArgumentError("gamma_matrix needs N >= 2");
  RMatrix g = delta.matrix().topLeftCorner(k, k);
  g.diagonal().array() -= c;
  return g;
}

std::pair<double, double> evaluate_fg(const DeltaMatrix& delta, double c) {
  const Index n = delta.size();
  const Index k = n - 1;
  const RMatrix gamma = gamma_matrix(delta, c);
  const RVector d = -delta.matrix().col(n - 1).head(k);

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(gamma);
  const RVector lambda = eig.eigenvalues();
  const RMatrix& q = eig.eigenvectors();
  double det = 1.0;
  for (Index i = 0; i < k; ++i) det *= lambda(i);
  // adj(Gamma) = Q diag(prod_{j != i} lambda_j) Q^T
  RVector cofactor(k);
  for (Index i = 0; i < k; ++i) {
    double p = 1.0;
    for (Index j = 0; j < k; ++j) {
      if (j != i) p *= lambda(j);
    }
    cofactor(i) = p;
  }
  const RVector qd = q.transpose() * d;
  const RVector q1 = q.transpose() * RVector::Ones(k);
  const double quad = (qd.array().square() * cofactor.array()).sum();
  const double lin = (q1.array() * qd.array() * cofactor.array()).sum();
  const double f = quad + det * (c - delta(n - 1, n - 1));
  const double g = lin + det;
  return {f, g};
}

FgPair build_fg(const DeltaMatrix& delta, std::span<const double> points) {
  const Index n = delta.size();
  if (n < 2) throw ArgumentError("build_fg needs N >= 2");
  const Index npts = n + 1;

  std::vector<double> xs;
  if (points.empty()) {
    const double radius = 1.0 + delta.matrix().cwiseAbs().rowwise().sum().maxCoeff();
    for (Index j = 0; j < npts; ++j) {
      xs.push_back(radius * std::cos((2.0 * static_cast<double>(j) + 1.0) * std::numbers::pi /
                                     (2.0 * static_cast<double>(npts))));
    }
  } else {
    if (static_cast<Index>(points.size()) != npts) {
      throw ArgumentError("build_fg needs exactly N+1 sample points");
    }
    xs.assign(points.begin(), points.end());
  }
  double radius = 0.0;
  for (double x : xs) radius = std::max(radius, std::abs(x));
  if (radius == 0.0) throw ArgumentError("build_fg sample points must be distinct");

  // Interpolate in u = x / radius to keep the Vandermonde system tame.
  RMatrix vander(npts, npts);
  RMatrix values(npts, 2);
  for (Index i = 0; i < npts; ++i) {
    const double u = xs[static_cast<std::size_t>(i)] / radius;
    double p = 1.0;
    for (Index j = 0; j < npts; ++j) {
      vander(i, j) = p;
      p *= u;
    }
    const auto [f, g] = evaluate_fg(delta, xs[static_cast<std::size_t>(i)]);
    values(i, 0) = f;
    values(i, 1) = g;
  }
  Eigen::FullPivLU<RMatrix> lu(vander);
  if (!lu.isInvertible()) throw ArgumentError("build_fg sample points must be distinct");
  const RMatrix scaled = lu.solve(values);

  std::vector<double> fc(static_cast<std::size_t>(npts));
  std::vector<double> gc(static_cast<std::size_t>(n));  // deg g <= N-1
  double rpow = 1.0;
  for (Index j = 0; j < npts; ++j) {
    fc[static_cast<std::size_t>(j)] = scaled(j, 0) / rpow;
    if (j < n) gc[static_cast<std::size_t>(j)] = scaled(j, 1) / rpow;
    rpow *= radius;
  }
  return {Polynomial(std::move(fc)), Polynomial(std::move(gc))};
}

double resultant(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() && g.is_zero()) {
    throw ArgumentError("resultant of two zero polynomials is undefined");
  }
  if (f.is_zero() || g.is_zero()) return 0.0;
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  if (size == 0) return 1.0;
  RMatrix s = RMatrix::Zero(size, size);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) s(i, i + k) = f.coeffs()[static_cast<std::size_t>(m - k)];
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) s(n + i, i + k) = g.coeffs()[static_cast<std::size_t>(n - k)];
  }
  return s.fullPivLu().determinant();
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::cdfs_exists:
      return "cdfs_exists";
    case Decision::none:
      return "none";
    case Decision::borderline:
      return "borderline";
  }
  return "unknown";
}

double normalized_resultant(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0.0;
  const double denom = std::pow(f.sup_norm(), g.degree()) * std::pow(g.sup_norm(), f.degree());
  return std::abs(resultant(f, g)) / denom;
}

double zero_sum_eigen_residual(const DeltaMatrix& delta, double c) {
  const Index n = delta.size();
  RMatrix a(n + 1, n);
  a.topRows(n) = delta.matrix();
  a.topRows(n).diagonal().array() -= c;
  a.row(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  const double scale = std::max(1.0, delta.matrix().cwiseAbs().maxCoeff());
  Eigen::JacobiSVD<RMatrix> svd(a);
  return svd.singularValues()(n - 1) / scale;
}

ResultantReport cdfs_exists_v1(const DeltaMatrix& delta, const Tolerances& tol) {
  ResultantReport report;
  const Index n = delta.size();
  report.degeneracy = degeneracy_witness(delta, std::nullopt, tol);
  if (n < 2) {
    report.decision = Decision::none;
    return report;
  }
  report.scale = delta.matrix().cwiseAbs().maxCoeff();
  if (report.scale == 0.0) {
    report.degenerate_spectrum = true;
    report.decision = Decision::cdfs_exists;
    report.common_roots.push_back(0.0);
    report.scale = 1.0;
    return report;
  }
  const DeltaMatrix unit = delta.scaled(1.0 / report.scale);
  FgPair fg = build_fg(unit);
  report.f = fg.f;
  report.g = fg.g;
  report.resultant_value = resultant(fg.f, fg.g);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(unit.matrix(), Eigen::EigenvaluesOnly);
  const RVector spectrum = eig.eigenvalues();
  report.normalized_resultant = normalized_resultant(fg.f, fg.g);

  // The derivation assumes a simple spectrum; degenerate eigenvalues always
  // carry a zero-sum eigenvector.
  if (report.degeneracy.cdfs_lower_bound > 0) {
    report.degenerate_spectrum = true;
    report.decision = Decision::cdfs_exists;
    for (const auto& cl : report.degeneracy.eigenvalues) {
      if (cl.multiplicity > 1) report.common_roots.push_back(cl.value);
    }
    return report;
  }

  if (report.normalized_resultant > tol.resultant_borderline) {
    report.decision = Decision::none;
    return report;
  }

  std::vector<double> accepted;
  for (const Complex z : fg.g.roots()) {
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
    const double r = z.real();
    if (std::abs(fg.f(r)) > tol.root * std::max(fg.f.magnitude_at(r), 1.0)) continue;
    Index nearest = 0;
    (spectrum.array() - r).abs().minCoeff(&nearest);
    const double lambda = spectrum(nearest);
    const bool duplicate = std::any_of(accepted.begin(), accepted.end(),
                                       [&](double a) { return a == lambda; });
    if (duplicate) continue;
    if (zero_sum_eigen_residual(unit, lambda) <= tol.root) {
      accepted.push_back(lambda);
    } else {
      ++report.rejected_roots;
    }
  }
  for (double a : accepted) report.common_roots.push_back(a * report.scale);

  if (report.normalized_resultant <= tol.resultant) {
    report.decision = accepted.empty() ? Decision::none : Decision::cdfs_exists;
  } else {
    report.decision = Decision::borderline;
  }
  return report;
}

}  // namespace dfsslab
