// Copyright 2026 The tomobias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tomobias: simulate, bootstrap, witness, reconstruct, schemes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tomobias/harness.h"
#include "tomobias/io.h"
#include "tomobias/scheme.h"

namespace {

using namespace tomobias;

constexpr int kExitConfig = 2;
constexpr int kExitTrials = 3;

struct Common {
  std::string state = "ghz:4@F=0.8";
  std::vector<std::int64_t> ns;
  int trials = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> estimators;
  std::vector<std::string> functionals;
  std::vector<double> gammas{0.68, 0.99};
  std::string out;
  std::string format = "csv";
  int jobs = 0;
  SolverOptions solver;
};

void add_common(CLI::App* app, Common& c, bool experiment) {
  app->add_option("--state", c.state, "family:n@F=value, e.g. ghz:4@F=0.8")
      ->capture_default_str();
  app->add_option("--functionals", c.functionals, "fid, fid:<family>, purity, entropy, neg:01|23, qfi:jz")
      ->delimiter(',');
  app->add_option("--gamma", c.gammas, "confidence levels for Hoeffding bounds")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--ml-tol", c.solver.target_tol, "relative target tolerance")->capture_default_str();
  app->add_option("--cert-tol", c.solver.cert_tol, "certificate tolerance")->capture_default_str();
  app->add_option("--max-iter", c.solver.max_iterations, "iteration cap")->capture_default_str();
  app->add_option("--ls-restarts", c.solver.ls_restarts, "LS starts")->capture_default_str();
  app->add_option("--prob-floor", c.solver.prob_floor, "probability floor")->capture_default_str();
  if (!experiment) return;
  app->add_option("--ns", c.ns, "events per setting (a list sweeps)")->delimiter(',');
  app->add_option("--trials", c.trials, "simulated datasets")->capture_default_str();
  app->add_option("--seed", c.seed, "master seed")->capture_default_str();
  app->add_option("--estimators", c.estimators, "LIN, ML, LS, PROJ")->delimiter(',');
  app->add_option("--out", c.out, "output directory (default: records to stdout)");
  app->add_option("--format", c.format, "records format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--jobs", c.jobs, "worker threads (default: TOMOBIAS_JOBS, else all cores)");
}

ExperimentConfig base_config(const Common& c) {
  ExperimentConfig cfg;
  try {
    cfg.state = parse_state_spec(c.state);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!c.ns.empty()) cfg.events = c.ns;
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  if (!c.estimators.empty()) {
    cfg.estimators.clear();
    for (const std::string& e : c.estimators) {
      try {
        cfg.estimators.push_back(parse_method(e));
      } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
      }
    }
  }
  if (!c.functionals.empty()) cfg.functionals = c.functionals;
  cfg.gammas = c.gammas;
  cfg.solver = c.solver;
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  cfg.jobs = c.jobs > 0 ? c.jobs : jobs_from_env(hw);
  return cfg;
}

void print_aggregates(const ExperimentResult& r) {
  for (const AggregateStats& a : r.aggregates) {
    std::fprintf(stderr, "%-16s N_s=%-5lld %-12s %-16s mean %.5f  std %.5f  bias %+.5f  sem %.5f\n",
                 a.state.c_str(), static_cast<long long>(a.events), a.estimator.c_str(),
                 a.functional.c_str(), a.mean, a.sample_std, a.bias, a.sem);
  }
  for (const BootstrapSummary& b : r.bootstrap) {
    std::fprintf(stderr, "bootstrap %-4s %-8s grand mean %.5f  spread %.5f  error bar %.5f\n",
                 b.estimator.c_str(), b.functional.c_str(), b.after.mean, b.after.sample_std,
                 b.mean_error_bar);
  }
  for (const std::string& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int emit(const ExperimentResult& r, const Common& c) {
  if (c.out.empty()) {
    if (c.format == "json") {
      write_records_json(std::cout, r);
    } else {
      write_records_csv(std::cout, r);
    }
  } else {
    std::filesystem::create_directories(c.out);
    const std::filesystem::path dir(c.out);
    std::ofstream records(dir / (c.format == "json" ? "records.json" : "records.csv"));
    std::ofstream summary(dir / "summary.json");
    if (!records || !summary) throw std::runtime_error("cannot write into " + c.out);
    if (c.format == "json") {
      write_records_json(records, r);
    } else {
      write_records_csv(records, r);
    }
    write_summary_json(summary, r);
  }
  print_aggregates(r);
  if (!r.ok()) {
    std::fprintf(stderr, "error: %.1f%% of trials failed to converge (limit 5%%)\n",
                 100.0 * r.failure_fraction());
    return kExitTrials;
  }
  return 0;
}

nlohmann::ordered_json scheme_diagnostics(int n) {
  auto scheme = build_scheme(n);
  nlohmann::ordered_json j;
  j["n"] = n;
  j["settings"] = scheme->num_settings();
  j["outcomes_per_setting"] = scheme->dim();
  j["paulis"] = scheme->num_paulis();
  j["b_nonzeros"] = scheme->b_matrix().nonZeros();
  const SparseMatrix gram = scheme->b_matrix().transpose() * scheme->b_matrix();
  const Eigen::VectorXd diag = Eigen::MatrixXd(gram).diagonal();
  j["gram_diagonal_min"] = diag.minCoeff();
  j["gram_diagonal_max"] = diag.maxCoeff();
  j["gram_offdiagonal_max"] =
      (Eigen::MatrixXd(gram) - Eigen::MatrixXd(diag.asDiagonal())).cwiseAbs().maxCoeff();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  RVector coords(static_cast<Eigen::Index>(scheme->num_paulis()));
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) = normal(rng);
  RVector probs;
  scheme->probabilities_from_coords(coords, probs);
  j["pinv_round_trip_error"] = (scheme->b_pinv() * probs - coords).cwiseAbs().maxCoeff();
  if (n <= 3) {
    const Eigen::MatrixXd svd = pseudo_inverse(build_b_matrix(*scheme));
    j["pinv_vs_svd_max_diff"] = (svd - Eigen::MatrixXd(scheme->b_pinv())).cwiseAbs().maxCoeff();
  }
  nlohmann::ordered_json bases = nlohmann::ordered_json::array();
  for (const Setting& s : scheme->settings()) bases.push_back(s.bases);
  j["setting_order"] = bases;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias of quantum state tomography estimators: simulation and analysis."};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common sim, boot, wit, rec;
  auto* simulate = app.add_subcommand("simulate", "bias experiment or sweep");
  add_common(simulate, sim, true);
  std::string sweep = "none";
  std::vector<int> qubits;
  std::vector<double> fidelities;
  simulate->add_option("--sweep", sweep, "sweep axis")
      ->check(CLI::IsMember({"none", "ns", "n", "fidelity"}))
      ->capture_default_str();
  simulate->add_option("--qubits", qubits, "qubit counts for --sweep n")->delimiter(',');
  simulate->add_option("--fidelities", fidelities, "fidelities for --sweep fidelity")->delimiter(',');

  auto* bootstrap = app.add_subcommand("bootstrap", "parametric or nonparametric bootstrap");
  add_common(bootstrap, boot, true);
  std::string kind = "parametric";
  int resamples = 100;
  bootstrap->add_option("--kind", kind, "resampling distribution")
      ->check(CLI::IsMember({"parametric", "nonparametric"}))
      ->capture_default_str();
  bootstrap->add_option("--resamples", resamples, "resamples per dataset")->capture_default_str();

  auto* witness = app.add_subcommand("witness", "two-stage witness protocol");
  add_common(witness, wit, true);

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "reconstruct a counts file");
  add_common(reconstruct_cmd, rec, false);
  std::string counts_path, estimator = "ML", report_path;
  bool state_given = false;
  reconstruct_cmd->add_option("--counts", counts_path, "counts JSON file")->required();
  reconstruct_cmd->add_option("--estimator", estimator, "LIN, ML, LS or PROJ")->capture_default_str();
  reconstruct_cmd->add_option("--out", report_path, "report file (default: stdout)");

  auto* schemes = app.add_subcommand("schemes", "scheme diagnostics");
  std::vector<int> scheme_qubits{1, 2, 3};
  schemes->add_option("--qubits", scheme_qubits, "qubit counts")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) {
      ExperimentConfig cfg = base_config(sim);
      if (sweep == "ns") {
        cfg.mode = Mode::kSweepNs;
        if (sim.ns.empty()) cfg.events = {25, 50, 100, 200, 500};
      } else if (sweep == "n") {
        cfg.mode = Mode::kSweepN;
        cfg.qubits = qubits.empty() ? std::vector<int>{2, 3, 4, 5, 6} : qubits;
      } else if (sweep == "fidelity") {
        cfg.mode = Mode::kSweepFidelity;
        cfg.fidelities = fidelities.empty()
                             ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 0.9, 0.95}
                             : fidelities;
      }
      return emit(run_experiment(cfg), sim);
    }
    if (*bootstrap) {
      ExperimentConfig cfg = base_config(boot);
      cfg.mode = Mode::kBootstrap;
      cfg.bootstrap = kind == "parametric" ? BootstrapKind::kParametric : BootstrapKind::kNonparametric;
      cfg.resamples = resamples;
      if (boot.estimators.empty()) cfg.estimators = {Method::kMl, Method::kLs};
      return emit(run_experiment(cfg), boot);
    }
    if (*witness) {
      ExperimentConfig cfg = base_config(wit);
      cfg.mode = Mode::kWitness;
      if (wit.estimators.empty()) cfg.estimators = {Method::kMl, Method::kLs};
      if (wit.functionals.empty()) {
        // Default cut: first half of the qubits against the rest.
        std::string a, b;
        for (int q = 0; q < cfg.state.n_qubits; ++q) (q < cfg.state.n_qubits / 2 ? a : b) += char('0' + q);
        if (a.empty()) throw ConfigError("negativity needs at least 2 qubits");
        cfg.functionals = {"neg:" + a + "|" + b};
      }
      return emit(run_experiment(cfg), wit);
    }
    if (*reconstruct_cmd) {
      state_given = reconstruct_cmd->count("--state") > 0;
      const CountsFile header = load_counts(counts_path);
      StateSpec state;
      if (state_given) {
        try {
          state = parse_state_spec(rec.state);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      } else {
        state.n_qubits = header.num_qubits;
      }
      Method method;
      try {
        method = parse_method(estimator);
        rec.solver.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      for (double g : rec.gammas) {
        if (!(g >= 0.0 && g < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
      }
      const std::vector<std::string> functionals =
          rec.functionals.empty() ? std::vector<std::string>{"fid", "purity"} : rec.functionals;
      const FileReport report =
          reconstruct_from_file(counts_path, method, functionals, state, rec.gammas, rec.solver);
      const std::string text = report_to_json(report, counts_path);
      if (report_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write " + report_path);
        out << text;
      }
      return report.result.converged ? 0 : kExitTrials;
    }
    if (*schemes) {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (int n : scheme_qubits) {
        if (n < 1 || n > 6) throw ConfigError("n must lie in [1, 6]");
        all.push_back(scheme_diagnostics(n));
      }
      std::cout << all.dump(1) << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const CountsFormatError& e) {
    std::fprintf(stderr, "counts error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
