#include "dfsslab/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace dfsslab {

using nlohmann::json;

namespace {

json complex_entry(Complex z) { return json::array({z.real(), z.imag()}); }

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::size_t parse_index(std::string_view s, std::string_view what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument("bad");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ArgumentError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
}

}  // namespace

DeltaMatrix delta_from_json(const json& j, bool symmetrize) {
  if (!j.is_object() || !j.contains("delta")) {
    throw ArgumentError("Delta file must be an object with a \"delta\" field");
  }
  const json& rows = j.at("delta");
  if (!rows.is_array() || rows.empty()) throw ArgumentError("\"delta\" must be a non-empty array");
  const auto n = static_cast<Index>(rows.size());
  if (j.contains("n") && j.at("n").get<Index>() != n) {
    throw ArgumentError("\"n\" does not match the number of rows in \"delta\"");
  }
  RMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw ArgumentError("\"delta\" must be square");
    }
    for (Index k = 0; k < n; ++k) {
      const json& v = row.at(static_cast<std::size_t>(k));
      if (!v.is_number()) throw ArgumentError("\"delta\" entries must be numbers");
      m(i, k) = v.get<double>();
    }
  }
  return DeltaMatrix(std::move(m), symmetrize);
}

DeltaMatrix load_delta(const std::filesystem::path& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
  return delta_from_json(j, symmetrize);
}

json delta_to_json(const DeltaMatrix& delta) {
  json rows = json::array();
  for (Index i = 0; i < delta.size(); ++i) {
    json row = json::array();
    for (Index k = 0; k < delta.size(); ++k) row.push_back(delta(i, k));
    rows.push_back(std::move(row));
  }
  return {{"n", delta.size()}, {"delta", std::move(rows)}};
}

CVector parse_state(std::string_view spec, const LindbladModel& model, const Tolerances& tol) {
  const Index dim = model.dim();
  if (spec == "ground") {
    CVector v = CVector::Zero(dim);
    v(0) = 1.0;
    return v;
  }
  if (spec.starts_with("basis:")) {
    const std::string_view bits = spec.substr(6);
    if (static_cast<int>(bits.size()) != model.n()) {
      throw ArgumentError("basis state needs exactly " + std::to_string(model.n()) + " bits");
    }
    Index idx = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw ArgumentError("basis state must be a bitstring");
      idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    CVector v = CVector::Zero(dim);
    v(idx) = 1.0;
    return v;
  }
  if (spec.starts_with("dfs:") || spec.starts_with("cdfs:")) {
    const bool complete = spec.starts_with("cdfs:");
    const std::string_view rest = spec.substr(complete ? 5 : 4);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ArgumentError("expected KIND:m:INDEX");
    const auto m = static_cast<int>(parse_index(rest.substr(0, colon), "sector"));
    const auto k = parse_index(rest.substr(colon + 1), "index");
    const Subspace s = complete ? cdfs_sector(model, m, tol) : dfs_basis(model, m, tol);
    if (k >= static_cast<std::size_t>(s.dim())) {
      throw ArgumentError(std::string(complete ? "CDFS" : "DFS") + " in sector " +
                          std::to_string(m) + " has dimension " + std::to_string(s.dim()));
    }
    return s.basis.col(static_cast<Index>(k));
  }
  if (spec.starts_with("[")) {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw ArgumentError(std::string("bad amplitude vector: ") + e.what());
    }
    if (static_cast<Index>(j.size()) != dim) {
      throw ArgumentError("amplitude vector needs " + std::to_string(dim) + " entries");
    }
    CVector v(dim);
    for (Index i = 0; i < dim; ++i) {
      const json& a = j.at(static_cast<std::size_t>(i));
      if (a.is_number()) {
        v(i) = a.get<double>();
      } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        v(i) = Complex(a[0].get<double>(), a[1].get<double>());
      } else {
        throw ArgumentError("amplitudes must be numbers or [re, im] pairs");
      }
    }
    const double norm = v.norm();
    if (!(norm > 0.0)) throw ArgumentError("amplitude vector is zero");
    return v / norm;
  }
  throw ArgumentError("unrecognized state spec '" + std::string(spec) + "'");
}

json to_json(const Subspace& s, bool with_basis) {
  json j = {{"dim", s.dim()},
            {"ambient_dim", s.ambient_dim()},
            {"tol", s.tol},
            {"margin", finite_or_null(s.margin)},
            {"label", s.label}};
  if (with_basis) {
    json cols = json::array();
    for (Index c = 0; c < s.dim(); ++c) {
      json col = json::array();
      for (Index r = 0; r < s.ambient_dim(); ++r) col.push_back(complex_entry(s.basis(r, c)));
      cols.push_back(std::move(col));
    }
    j["basis"] = std::move(cols);
  }
  return j;
}

json to_json(const DegeneracyReport& r) {
  json values = json::array();
  for (const auto& c : r.eigenvalues) {
    values.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  }
  return {{"eigenvalues", std::move(values)},
          {"cluster_tol", r.cluster_tol},
          {"cdfs_lower_bound", r.cdfs_lower_bound}};
}

json to_json(const Polynomial& p) { return {{"coeffs", p.coeffs()}, {"degree", p.degree()}}; }

json to_json(const ResultantReport& r) {
  return {{"f", to_json(r.f)},
          {"g", to_json(r.g)},
          {"scale", r.scale},
          {"resultant_value", r.resultant_value},
          {"normalized_resultant", r.normalized_resultant},
          {"decision", std::string(to_string(r.decision))},
          {"common_roots", r.common_roots},
          {"rejected_roots", r.rejected_roots},
          {"degenerate_spectrum", r.degenerate_spectrum},
          {"degeneracy", to_json(r.degeneracy)}};
}

json to_json(const CompatibilityReport& r) {
  return {{"invariant", r.invariant},
          {"invariant_residual", r.invariant_residual},
          {"commutes", r.commutes},
          {"commutator_residual", r.commutator_residual},
          {"robust", r.robust},
          {"robust_residual", r.robust_residual}};
}

json to_json(const Tolerances& t) {
  return {{"herm_rel", t.herm_rel},
          {"zero", t.zero},
          {"rank", t.rank ? json(*t.rank) : json("auto: max(rows,cols)*eps*scale")},
          {"cluster_rel", t.cluster_rel},
          {"resultant", t.resultant},
          {"resultant_borderline", t.resultant_borderline},
          {"root", t.root},
          {"borderline_margin_factor", kBorderlineMarginFactor}};
}

json to_json(const EnsembleSpec& s) {
  json j = {{"kind", std::string(to_string(s.kind))},
            {"n", s.n},
            {"scale", s.scale},
            {"seed", s.seed}};
  if (s.user) j["user"] = delta_to_json(*s.user);
  return j;
}

json to_json(const RarityReport& r) {
  json dims = json::object();
  for (const auto& [dim, count] : r.cdfs_dim_counts) dims[std::to_string(dim)] = count;
  return {{"schema", kReportSchema},
          {"kind", "rarity"},
          {"ensemble", to_json(r.ensemble)},
          {"samples", r.samples},
          {"hits", r.hits},
          {"hit_fraction", r.hit_fraction},
          {"borderline", r.borderline},
          {"detector", std::string(to_string(r.detector))},
          {"all_sectors", r.all_sectors},
          {"disagreements", r.disagreements},
          {"errors", r.disagreements.size()},
          {"cdfs_dim_counts", std::move(dims)},
          {"tolerances", to_json(r.tolerances)}};
}

json to_json(const RegimeTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back({{"epsilon", row.epsilon}, {"deficit", row.deficit}});
  return {{"regime", std::string(to_string(t.regime))},
          {"t_fixed", t.t_fixed},
          {"rows", std::move(rows)},
          {"exponent", finite_or_null(t.fit.exponent)},
          {"below_floor", t.fit.below_floor},
          {"consistent", t.consistent}};
}

json analyze_report(const LindbladModel& model, std::optional<int> sector, int robust_order,
                    const Tolerances& tol) {
  if (robust_order < 1) throw ArgumentError("robust order must be >= 1");
  json sectors = json::array();
  const int lo = sector ? *sector : 0;
  const int hi = sector ? *sector : model.n();
  if (lo < 0 || hi > model.n()) throw ArgumentError("sector outside [0, N]");
  for (int m = lo; m <= hi; ++m) {
    const Subspace dfs = dfs_basis(model, m, tol);
    const Subspace cdfs = cdfs_invariant(model, dfs, tol);
    sectors.push_back({{"m", m},
                       {"sector_dim", WeightSector(model.qubits(), m).count()},
                       {"dfs_dim", dfs.dim()},
                       {"cdfs_dim", cdfs.dim()},
                       {"dfs", to_json(dfs)},
                       {"cdfs", to_json(cdfs)}});
  }
  json robust = json::array();
  for (int k = 1; k <= robust_order; ++k) {
    robust.push_back({{"order", k}, {"dim", robust_subspace(model, k, tol).dim()}});
  }
  return {{"schema", kReportSchema},
          {"kind", "analysis"},
          {"input", delta_to_json(model.delta())},
          {"sectors", std::move(sectors)},
          {"degeneracy", to_json(degeneracy_witness(model.delta(), std::nullopt, tol))},
          {"robust", std::move(robust)},
          {"tolerances", to_json(tol)}};
}

json resultant_report(const DeltaMatrix& delta, const Tolerances& tol) {
  json j = to_json(cdfs_exists_v1(delta, tol));
  j["schema"] = kReportSchema;
  j["kind"] = "resultant";
  j["input"] = delta_to_json(delta);
  j["tolerances"] = to_json(tol);
  return j;
}

}  // namespace dfsslab
