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

#ifndef TOMOBIAS_HARNESS_H_
#define TOMOBIAS_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tomobias/estimators.h"
#include "tomobias/functionals.h"
#include "tomobias/states.h"

namespace tomobias {

inline constexpr std::string_view kVersion = "0.1.0";

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Mode { kBias, kSweepNs, kSweepN, kSweepFidelity, kBootstrap, kWitness };
enum class BootstrapKind { kParametric, kNonparametric };

std::string_view mode_name(Mode m);
std::string_view bootstrap_name(BootstrapKind k);

struct ExperimentConfig {
  StateSpec state;
  /// Events per setting; more than one value is an N_s sweep.
  std::vector<std::int64_t> events{100};
  /// Qubit counts for kSweepN (the state's family and fidelity are kept).
  std::vector<int> qubits;
  /// Target fidelities for kSweepFidelity.
  std::vector<double> fidelities;
  int trials = 500;
  std::vector<Method> estimators{Method::kLin, Method::kMl, Method::kLs};
  /// Functional mini-language entries, parsed against each sweep point's state.
  std::vector<std::string> functionals{"fid"};
  std::uint64_t seed = 1;
  Mode mode = Mode::kBias;
  BootstrapKind bootstrap = BootstrapKind::kParametric;
  int resamples = 100;
  std::vector<double> gammas{0.68, 0.99};
  SolverOptions solver;
  /// Worker threads; results do not depend on it.
  int jobs = 1;

  /// Throws ConfigError: T < 2, empty or non-increasing sweep lists, B < 2,
  /// gamma outside [0, 1), unparseable functionals, jobs < 1.
  void validate() const;
};

/// One number produced by one trial.
struct TrialRecord {
  std::string state;
  int n = 0;
  std::int64_t events = 0;
  int trial = 0;
  std::string estimator;
  std::string functional;
  double value = 0.0;
  bool converged = true;
  double cert_residual = 0.0;
};

struct AggregateStats {
  std::string state;
  int n = 0;
  std::int64_t events = 0;
  std::string estimator;
  std::string functional;
  int count = 0;
  double true_value = 0.0;
  double mean = 0.0;
  double sample_std = 0.0;  // denominator T - 1
  double sem = 0.0;
  double bias = 0.0;
  double population_variance = 0.0;  // denominator T
  double mse = 0.0;                  // mean of (x - true_value)^2
};

/// Statistics of `values` about `true_value`. Sums are compensated; mse is
/// accumulated directly, so mse = population_variance + bias^2 holds to
/// rounding of the final operations.
AggregateStats aggregate(std::span<const double> values, double true_value);

/// A monotonicity check between consecutive sweep points.
struct SweepStep {
  std::string estimator;
  std::string functional;
  double from = 0.0;  // sweep coordinate
  double to = 0.0;
  double abs_bias_from = 0.0;
  double abs_bias_to = 0.0;
  /// 2 sqrt(sem_from^2 + sem_to^2).
  double two_sem = 0.0;
  bool expected_direction = false;
  bool significant = false;
};

struct BootstrapSummary {
  std::string estimator;
  std::string functional;
  double true_value = 0.0;
  AggregateStats before;     // seed estimates over the T datasets
  AggregateStats after;      // per-seed bootstrap means
  double mean_error_bar = 0.0;  // average per-seed bootstrap std
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<AggregateStats> aggregates;
  std::vector<SweepStep> sweep_steps;
  std::vector<BootstrapSummary> bootstrap;
  /// Witness runs whose anchor had no negative eigenspace.
  int trivial_witnesses = 0;
  int failed_trials = 0;
  int total_trials = 0;
  std::vector<std::string> warnings;

  double failure_fraction() const {
    return total_trials > 0 ? static_cast<double>(failed_trials) / total_trials : 0.0;
  }
  /// False when more than 5% of trials had a non-converged reconstruction.
  bool ok() const { return failure_fraction() <= 0.05; }
};

/// Runs fn(i) for i in [0, count) on `jobs` threads. Exceptions are rethrown
/// (the one from the lowest index).
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

/// Worker count from TOMOBIAS_JOBS, or `fallback`.
int jobs_from_env(int fallback = 1);

ExperimentResult run_bias_experiment(const ExperimentConfig& config);
/// Dispatches on config.mode among the three sweeps.
ExperimentResult run_sweep(const ExperimentConfig& config);
/// For each of T datasets, B resamples from the estimator's own fit
/// (parametric) or from the observed frequencies (nonparametric).
ExperimentResult run_bootstrap(const ExperimentConfig& config);
/// Stage 1: ML anchor and witness; stage 2: LIN contraction with Hoeffding
/// bounds, plus ML/LS (and LIN where defined) evaluated on stage 2 data.
ExperimentResult run_witness_experiment(const ExperimentConfig& config);
/// Dispatches on config.mode.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct FileReport {
  ReconstructionResult result;
  std::vector<std::pair<std::string, double>> functionals;
  /// (label, gamma, bound) for witness bounds on LIN estimates.
  struct Bound {
    std::string functional;
    double gamma = 0.0;
    double linear_value = 0.0;
    double bound = 0.0;
    std::string direction;
  };
  std::vector<Bound> bounds;
};

/// Loads a counts file, reconstructs with `method` and evaluates the
/// functionals (parsed against `state`, which supplies targets). For LIN,
/// every linearizable functional also gets Hoeffding bounds at `gammas`;
/// the anchor is the ML estimate of the same data.
FileReport reconstruct_from_file(const std::string& counts_path, Method method,
                                 const std::vector<std::string>& functionals,
                                 const StateSpec& state, const std::vector<double>& gammas,
                                 const SolverOptions& options = {});

}  // namespace tomobias

#endif  // TOMOBIAS_HARNESS_H_
