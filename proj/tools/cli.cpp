#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dfsslab/dynamics.hpp"
#include "dfsslab/ensemble.hpp"
#include "dfsslab/io.hpp"

namespace dfsslab::cli {

namespace {

struct Common {
  bool symmetrize = false;
  int nmax = 0;
  std::string output;
  Tolerances tol;
  double rank = 0.0;
};

void add_common(CLI::App& app, Common& c) {
  app.add_flag("--symmetrize", c.symmetrize, "Replace Delta by (Delta + Delta^T)/2 instead of rejecting it");
  app.add_option("--nmax", c.nmax, "Largest accepted qubit count (overrides DFSSLAB_NMAX)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", c.output, "Write the result to FILE instead of stdout");
  app.add_option("--tol-herm", c.tol.herm_rel, "Relative Hermiticity tolerance")->capture_default_str();
  app.add_option("--tol-zero", c.tol.zero, "Zero / invariance residual tolerance")->capture_default_str();
  app.add_option("--tol-rank", c.rank, "Absolute rank cutoff (default: max(rows,cols)*eps*scale)");
  app.add_option("--tol-cluster", c.tol.cluster_rel, "Relative eigenvalue clustering tolerance")
      ->capture_default_str();
  app.add_option("--tol-resultant", c.tol.resultant, "Normalized resultant threshold")->capture_default_str();
  app.add_option("--tol-borderline", c.tol.resultant_borderline, "Upper end of the resultant borderline band")
      ->capture_default_str();
  app.add_option("--tol-root", c.tol.root, "Common-root and eigenvector residual tolerance")
      ->capture_default_str();
}

Tolerances finish(const Common& c) {
  if (c.nmax > 0) {
    const std::string v = std::to_string(c.nmax);
    ::setenv("DFSSLAB_NMAX", v.c_str(), 1);
  }
  Tolerances tol = c.tol;
  if (c.rank > 0.0) tol.rank = c.rank;
  return tol;
}

template <class F>
void emit(const Common& c, std::ostream& out, F&& write) {
  if (c.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw ArgumentError("cannot write " + c.output);
  write(file);
}

std::vector<double> linear_times(double tmax, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = tmax * i / (points - 1);
  return t;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence-free subspace laboratory", "dfsslab"};
  app.require_subcommand(1);

  Common common;

  auto* analyze = app.add_subcommand("analyze", "DFS/CDFS dimensions and bases per weight sector");
  std::string delta_file;
  std::string sector = "all";
  int robust_order = 1;
  analyze->add_option("--delta", delta_file, "Delta JSON file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--sector", sector, "Weight m or 'all'")->capture_default_str();
  analyze->add_option("--robust-order", robust_order, "Report robust subspaces up to this order")
      ->capture_default_str();
  add_common(*analyze, common);

  auto* resultant = app.add_subcommand("resultant", "Algebraic CDFS test in the single-excitation sector");
  resultant->add_option("--delta", delta_file, "Delta JSON file")->required()->check(CLI::ExistingFile);
  add_common(*resultant, common);

  auto* evolve = app.add_subcommand("evolve", "Fidelity trace F^2(t) as CSV");
  double kappa = 1.0;
  std::string state = "ground";
  double tmax = 1.0;
  int points = 101;
  std::string regime;
  std::vector<double> eps;
  std::string backend = "expm";
  evolve->add_option("--delta", delta_file, "Delta JSON file")->required()->check(CLI::ExistingFile);
  evolve->add_option("--kappa", kappa, "Decay rate")->capture_default_str();
  evolve->add_option("--state", state, "ground | basis:BITS | dfs:m:I | cdfs:m:I | JSON amplitudes")
      ->capture_default_str();
  evolve->add_option("--tmax", tmax, "Final time (also the fixed time of a regime scan)")
      ->capture_default_str();
  evolve->add_option("--points", points, "Number of equally spaced times in [0, tmax]")
      ->capture_default_str();
  evolve->add_option("--regime", regime, "Scan epsilon instead: weak (H -> eps H) or strong (kappa -> eps kappa)")
      ->check(CLI::IsMember({"weak", "strong"}));
  evolve->add_option("--eps", eps, "Comma separated epsilons for --regime")->delimiter(',');
  evolve->add_option("--backend", backend, "expm or ode")
      ->check(CLI::IsMember({"expm", "ode"}))
      ->capture_default_str();
  add_common(*evolve, common);

  auto* sample = app.add_subcommand("sample", "Monte-Carlo CDFS rarity study");
  std::string ensemble;
  int n = 3;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::string detector = "both";
  double scale = 1.0;
  bool all_sectors = false;
  std::string user_file;
  sample->add_option("--ensemble", ensemble,
                     "gaussian_symmetric | equal_offdiagonal_pair | all_equal | square_lattice | user_matrix")
      ->required();
  sample->add_option("--n", n, "Number of qubits")->required();
  sample->add_option("--samples", samples, "Number of samples")->required();
  sample->add_option("--seed", seed, "Generator seed")->required();
  sample->add_option("--detector", detector, "subspace | resultant | both")->capture_default_str();
  sample->add_option("--scale", scale, "Standard deviation of the random entries")->capture_default_str();
  sample->add_flag("--all-sectors", all_sectors, "Also scan weights 2..N with the subspace detector");
  sample->add_option("--user", user_file, "Delta JSON file for user_matrix")->check(CLI::ExistingFile);
  add_common(*sample, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const Tolerances tol = finish(common);

    if (analyze->parsed()) {
      const DeltaMatrix delta = load_delta(delta_file, common.symmetrize);
      std::optional<int> m;
      if (sector != "all") {
        try {
          std::size_t pos = 0;
          m = std::stoi(sector, &pos);
          if (pos != sector.size()) throw std::invalid_argument(sector);
        } catch (const std::logic_error&) {
          throw ArgumentError("--sector must be an integer or 'all'");
        }
      }
      const LindbladModel model(QubitCount(delta.size()), delta);
      const auto report = analyze_report(model, m, robust_order, tol);
      emit(common, out, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
    } else if (resultant->parsed()) {
      const DeltaMatrix delta = load_delta(delta_file, common.symmetrize);
      const auto report = resultant_report(delta, tol);
      emit(common, out, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
    } else if (evolve->parsed()) {
      const DeltaMatrix delta = load_delta(delta_file, common.symmetrize);
      const LindbladModel model(QubitCount(delta.size()), delta, kappa);
      const CVector psi0 = parse_state(state, model, tol);
      EvolveOptions opts;
      opts.backend = backend == "ode" ? Backend::ode : Backend::expm;
      if (!(tmax > 0.0)) throw ArgumentError("--tmax must be positive");
      if (regime.empty()) {
        if (points < 2) throw ArgumentError("--points must be >= 2");
        const auto times = linear_times(tmax, points);
        const FidelityTrace trace = fidelity_trace(model, psi0, times, state, opts);
        emit(common, out, [&](std::ostream& os) { write_csv(os, trace); });
      } else {
        if (eps.empty()) throw ArgumentError("--regime needs --eps");
        const Regime r = regime == "weak" ? Regime::weak_unitary : Regime::strong_unitary;
        const RegimeTable table = regime_experiment(model, psi0, r, eps, tmax, opts, tol);
        emit(common, out, [&](std::ostream& os) {
          char line[64];
          os << "eps,deficit\n";
          for (const auto& row : table.rows) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", row.epsilon, row.deficit);
            os << line;
          }
        });
      }
    } else if (sample->parsed()) {
      EnsembleSpec spec;
      spec.kind = parse_ensemble_kind(ensemble);
      spec.n = n;
      spec.scale = scale;
      spec.seed = seed;
      if (!user_file.empty()) spec.user = load_delta(user_file, common.symmetrize);
      QubitCount{n};  // validates n against n_max
      const RarityReport report = rarity_study(spec, samples, parse_detector(detector), all_sectors, tol);
      emit(common, out, [&](std::ostream& os) { os << to_json(report).dump(2) << "\n"; });
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dfsslab::cli
