#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dfsslab/dynamics.hpp"
#include "dfsslab/ensemble.hpp"
#include "dfsslab/resultant.hpp"
#include "dfsslab/subspace.hpp"

namespace dfsslab {

/// Version stamped into every JSON report as "schema".
inline constexpr int kReportSchema = 1;

/// Parses {"n": N, "delta": [[...], ...]} (row-major). The matrix must be
/// exactly symmetric unless `symmetrize` is set.
DeltaMatrix delta_from_json(const nlohmann::json& j, bool symmetrize = false);
DeltaMatrix load_delta(const std::filesystem::path& path, bool symmetrize = false);
nlohmann::json delta_to_json(const DeltaMatrix& delta);

/// State mini-language:
///   ground             |0...0>
///   basis:BITSTRING    qubit 1 first, '1' = excited
///   dfs:m:INDEX        INDEX-th basis vector of dfs_basis(m)
///   cdfs:m:INDEX       INDEX-th basis vector of the CDFS in V_m
///   [a, b, ...]        JSON amplitudes, each a number or [re, im]; normalized
CVector parse_state(std::string_view spec, const LindbladModel& model, const Tolerances& tol = {});

nlohmann::json to_json(const Subspace& s, bool with_basis = true);
nlohmann::json to_json(const DegeneracyReport& r);
nlohmann::json to_json(const Polynomial& p);
nlohmann::json to_json(const ResultantReport& r);
nlohmann::json to_json(const CompatibilityReport& r);
nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const EnsembleSpec& s);
nlohmann::json to_json(const RarityReport& r);
nlohmann::json to_json(const RegimeTable& t);

/// Full analysis: per-sector DFS/CDFS dimensions and bases, the degeneracy
/// report, and robust-subspace dimensions for orders 1..robust_order.
/// `sector` restricts the per-sector part to one weight.
nlohmann::json analyze_report(const LindbladModel& model, std::optional<int> sector,
                              int robust_order, const Tolerances& tol = {});

/// Resultant report wrapped with schema and input.
nlohmann::json resultant_report(const DeltaMatrix& delta, const Tolerances& tol = {});

}  // namespace dfsslab
