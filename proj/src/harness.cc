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

#include "tomobias/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <thread>
#include <tuple>

#include "tomobias/io.h"
#include "tomobias/sampling.h"
#include "tomobias/witness.h"

namespace tomobias {
namespace {

// One (state, N_s) grid point with everything the trials share.
struct Point {
  StateSpec spec;
  std::string state_label;
  std::int64_t events = 0;
  std::shared_ptr<const TomographyScheme> scheme;
  QuantumState truth;
  RVector probs;
  std::vector<FunctionalSpec> functionals;
  std::vector<double> true_values;
  double coordinate = 0.0;  // position along the swept axis
  int group = 0;            // points sharing every other coordinate
};

std::vector<StateSpec> swept_states(const ExperimentConfig& c) {
  std::vector<StateSpec> out;
  if (c.mode == Mode::kSweepN) {
    for (int n : c.qubits) {
      StateSpec s = c.state;
      s.n_qubits = n;
      out.push_back(s);
    }
  } else if (c.mode == Mode::kSweepFidelity) {
    for (double f : c.fidelities) {
      StateSpec s = c.state;
      s.target_fidelity = f;
      out.push_back(s);
    }
  } else {
    out.push_back(c.state);
  }
  return out;
}

std::vector<Point> build_points(const ExperimentConfig& c) {
  std::map<int, std::shared_ptr<const TomographyScheme>> schemes;
  const std::vector<StateSpec> states = swept_states(c);
  std::vector<Point> points;
  for (std::size_t si = 0; si < states.size(); ++si) {
    const StateSpec& spec = states[si];
    auto& scheme = schemes[spec.n_qubits];
    if (!scheme) scheme = build_scheme(spec.n_qubits);
    const QuantumState truth = make_state(spec);
    const RVector probs = born_probabilities(truth, *scheme);
    std::vector<FunctionalSpec> fs;
    std::vector<double> tv;
    for (const std::string& text : c.functionals) {
      fs.push_back(parse_functional(text, spec));
      tv.push_back(evaluate(fs.back(), truth.op()));
    }
    for (std::size_t ei = 0; ei < c.events.size(); ++ei) {
      Point p;
      p.spec = spec;
      p.state_label = spec.to_string();
      p.events = c.events[ei];
      p.scheme = scheme;
      p.truth = truth;
      p.probs = probs;
      p.functionals = fs;
      p.true_values = tv;
      if (c.mode == Mode::kSweepN) {
        p.coordinate = spec.n_qubits;
        p.group = static_cast<int>(ei);
      } else if (c.mode == Mode::kSweepFidelity) {
        p.coordinate = spec.target_fidelity;
        p.group = static_cast<int>(ei);
      } else {
        p.coordinate = static_cast<double>(p.events);
        p.group = static_cast<int>(si);
      }
      points.push_back(std::move(p));
    }
  }
  return points;
}

std::string stream_label(const char* stage, const Point& p) {
  return std::string(stage) + ":" + p.state_label + ":" + std::to_string(p.events);
}

FrequencyData toss(const Point& p, const ExperimentConfig& c, const char* stage, int trial) {
  return toss_frequencies(p.probs, p.scheme->num_settings(), p.events,
                          SeedPolicy{c.seed, static_cast<std::uint64_t>(trial), stream_label(stage, p)});
}

TrialRecord make_record(const Point& p, int trial, std::string estimator, std::string functional,
                        double value, bool converged, double residual) {
  TrialRecord r;
  r.state = p.state_label;
  r.n = p.spec.n_qubits;
  r.events = p.events;
  r.trial = trial;
  r.estimator = std::move(estimator);
  r.functional = std::move(functional);
  r.value = value;
  r.converged = converged;
  r.cert_residual = residual;
  return r;
}

// LIN estimates are not states, so state-only functionals are skipped there.
bool applies(Method m, const FunctionalSpec& f) {
  return !(m == Method::kLin && f.requires_state());
}

// Per-trial output collected in trial order.
struct TrialOutput {
  std::vector<TrialRecord> records;
  int failed = 0;
  int units = 0;
  bool trivial = false;
  std::vector<std::string> warnings;
};

bool is_error_bar(const std::string& label) {
  return label.ends_with("/bs_std");
}

// Aggregates every (point, estimator, functional) group in first-seen order.
// Bootstrap error bars have no true value and are summarized separately.
std::vector<AggregateStats> aggregate_records(const std::vector<TrialRecord>& records,
                                              const std::vector<Point>& points) {
  std::map<std::tuple<std::string, std::int64_t, std::string, std::string>, std::size_t> index;
  std::vector<std::vector<double>> values;
  std::vector<const TrialRecord*> first;
  for (const TrialRecord& r : records) {
    if (is_error_bar(r.functional)) continue;
    const auto key = std::make_tuple(r.state, r.events, r.estimator, r.functional);
    auto [it, inserted] = index.emplace(key, values.size());
    if (inserted) {
      values.emplace_back();
      first.push_back(&r);
    }
    values[it->second].push_back(r.value);
  }
  std::vector<AggregateStats> out;
  for (std::size_t g = 0; g < values.size(); ++g) {
    const TrialRecord& r = *first[g];
    // "fid/bs_mean" aggregates against the truth of "fid".
    const std::string base = r.functional.substr(0, r.functional.find('/'));
    double truth = std::nan("");
    for (const Point& p : points) {
      if (p.state_label != r.state || p.events != r.events) continue;
      for (std::size_t k = 0; k < p.functionals.size(); ++k) {
        if (p.functionals[k].label == base) truth = p.true_values[k];
      }
    }
    AggregateStats a = aggregate(values[g], truth);
    a.state = r.state;
    a.n = r.n;
    a.events = r.events;
    a.estimator = r.estimator;
    a.functional = r.functional;
    out.push_back(std::move(a));
  }
  return out;
}

ExperimentResult collect(const ExperimentConfig& config, const std::vector<Point>& points,
                         std::vector<TrialOutput>& outputs) {
  ExperimentResult result;
  result.config = config;
  for (TrialOutput& o : outputs) {
    for (TrialRecord& r : o.records) result.records.push_back(std::move(r));
    result.failed_trials += o.failed;
    result.total_trials += o.units;
    result.trivial_witnesses += o.trivial ? 1 : 0;
    for (std::string& w : o.warnings) result.warnings.push_back(std::move(w));
  }
  result.aggregates = aggregate_records(result.records, points);
  if (result.failed_trials > 0) {
    result.warnings.push_back(std::to_string(result.failed_trials) + " of " +
                              std::to_string(result.total_trials) +
                              " trials had a reconstruction that missed the certificate");
  }
  return result;
}

std::vector<SweepStep> sweep_steps(const ExperimentConfig& config, const std::vector<Point>& points,
                                   const std::vector<AggregateStats>& aggregates) {
  std::vector<SweepStep> steps;
  if (config.mode != Mode::kSweepNs && config.mode != Mode::kSweepN &&
      config.mode != Mode::kSweepFidelity) {
    return steps;
  }
  // Bias magnitude falls with N_s and grows with n and with F.
  const bool expect_increase = config.mode != Mode::kSweepNs;
  auto find = [&](const Point& p, const std::string& est, const std::string& fun) {
    for (const AggregateStats& a : aggregates) {
      if (a.state == p.state_label && a.events == p.events && a.estimator == est &&
          a.functional == fun) {
        return &a;
      }
    }
    return static_cast<const AggregateStats*>(nullptr);
  };
  std::vector<std::pair<std::string, std::string>> series;
  for (const AggregateStats& a : aggregates) {
    const auto key = std::make_pair(a.estimator, a.functional);
    if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
  }
  for (const auto& [est, fun] : series) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (points[j].group != points[i].group) continue;
        const AggregateStats* a = find(points[i], est, fun);
        const AggregateStats* b = find(points[j], est, fun);
        if (a && b) {
          SweepStep s;
          s.estimator = est;
          s.functional = fun;
          s.from = points[i].coordinate;
          s.to = points[j].coordinate;
          s.abs_bias_from = std::abs(a->bias);
          s.abs_bias_to = std::abs(b->bias);
          s.two_sem = 2.0 * std::sqrt(a->sem * a->sem + b->sem * b->sem);
          const double change = s.abs_bias_to - s.abs_bias_from;
          s.expected_direction = expect_increase ? change > 0.0 : change < 0.0;
          s.significant = std::abs(change) > s.two_sem;
          steps.push_back(s);
        }
        break;
      }
    }
  }
  return steps;
}

TrialOutput bias_trial(const ExperimentConfig& c, const Point& p, int trial) {
  TrialOutput out;
  out.units = 1;
  const FrequencyData data = toss(p, c, "tomo", trial);
  bool ok = true;
  for (Method m : c.estimators) {
    const ReconstructionResult r = reconstruct(m, data, *p.scheme, c.solver);
    ok = ok && r.converged;
    for (std::size_t k = 0; k < p.functionals.size(); ++k) {
      if (!applies(m, p.functionals[k])) continue;
      out.records.push_back(make_record(p, trial, std::string(method_name(m)),
                                        p.functionals[k].label,
                                        evaluate(p.functionals[k], r.estimate), r.converged,
                                        r.certificate_residual));
    }
  }
  out.failed = ok ? 0 : 1;
  return out;
}

// Resampling distribution of a LIN fit: negative probabilities clipped, each
// setting renormalized.
RVector clipped_probabilities(const HermitianOperator& estimate, const TomographyScheme& scheme) {
  RVector coords, probs;
  scheme.paulis().to_coords(estimate.matrix(), coords);
  scheme.probabilities_from_coords(coords, probs);
  const int d = scheme.dim();
  for (int s = 0; s < scheme.num_settings(); ++s) {
    auto block = probs.segment(static_cast<Eigen::Index>(s) * d, d);
    block = block.cwiseMax(0.0);
    const double total = block.sum();
    if (total <= 0.0) {
      block.setConstant(1.0 / d);
    } else {
      block /= total;
    }
  }
  return probs;
}

double sample_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

TrialOutput bootstrap_trial(const ExperimentConfig& c, const Point& p, int trial) {
  TrialOutput out;
  const FrequencyData observed = toss(p, c, "tomo", trial);
  const int settings = p.scheme->num_settings();
  const std::string kind(bootstrap_name(c.bootstrap));
  std::vector<bool> unit_ok(c.resamples + 1, true);
  for (Method m : c.estimators) {
    const std::string est(method_name(m));
    const ReconstructionResult seed = reconstruct(m, observed, *p.scheme, c.solver);
    unit_ok[0] = unit_ok[0] && seed.converged;
    RVector source;
    if (c.bootstrap == BootstrapKind::kNonparametric) {
      source = observed.frequencies();
    } else if (seed.is_physical()) {
      source = born_probabilities(seed.state(), *p.scheme);
    } else {
      source = clipped_probabilities(seed.estimate, *p.scheme);
    }
    std::vector<std::vector<double>> values(p.functionals.size());
    const std::string label = "bootstrap:" + kind + ":" + est + ":" + p.state_label + ":" +
                              std::to_string(p.events);
    for (int b = 0; b < c.resamples; ++b) {
      const std::uint64_t index =
          static_cast<std::uint64_t>(trial) * static_cast<std::uint64_t>(c.resamples) + b;
      const FrequencyData resampled =
          toss_frequencies(source, settings, p.events, SeedPolicy{c.seed, index, label});
      const ReconstructionResult r = reconstruct(m, resampled, *p.scheme, c.solver);
      unit_ok[b + 1] = unit_ok[b + 1] && r.converged;
      for (std::size_t k = 0; k < p.functionals.size(); ++k) {
        if (applies(m, p.functionals[k])) {
          values[k].push_back(evaluate(p.functionals[k], r.estimate));
        }
      }
    }
    for (std::size_t k = 0; k < p.functionals.size(); ++k) {
      const FunctionalSpec& f = p.functionals[k];
      if (!applies(m, f)) continue;
      double mean = 0.0;
      for (double x : values[k]) mean += x;
      mean /= static_cast<double>(values[k].size());
      out.records.push_back(make_record(p, trial, est, f.label, evaluate(f, seed.estimate),
                                        seed.converged, seed.certificate_residual));
      out.records.push_back(
          make_record(p, trial, est, f.label + "/bs_mean", mean, seed.converged, 0.0));
      out.records.push_back(make_record(p, trial, est, f.label + "/bs_std",
                                        sample_std(values[k]), seed.converged, 0.0));
    }
  }
  out.units = static_cast<int>(unit_ok.size());
  out.failed = static_cast<int>(std::count(unit_ok.begin(), unit_ok.end(), false));
  return out;
}

std::string bound_label(double gamma) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, gamma);
  return "BOUND@" + std::string(buf, res.ptr);
}

TrialOutput witness_trial(const ExperimentConfig& c, const Point& p, int trial) {
  TrialOutput out;
  out.units = 1;
  const FrequencyData stage1 = toss(p, c, "stage1", trial);
  const ReconstructionResult anchor_fit = ml_reconstruct(stage1, *p.scheme, c.solver);
  bool ok = anchor_fit.converged;
  const QuantumState anchor = anchor_fit.state();

  const FrequencyData stage2 = toss(p, c, "stage2", trial);
  const HermitianOperator lin = linear_inversion(stage2, *p.scheme);
  for (const FunctionalSpec& f : p.functionals) {
    WitnessOperator w;
    switch (f.kind) {
      case FunctionalKind::kFidelityMixed:
        continue;
      case FunctionalKind::kNegativity:
      case FunctionalKind::kFidelityPure:
        w = linearize(f, anchor, *p.scheme);
        break;
      default:
        w = linearize(f, regularize_anchor(anchor), *p.scheme);
        break;
    }
    if (w.trivial) {
      out.trivial = true;
      out.warnings.push_back("trial " + std::to_string(trial) + " " + f.label +
                             ": anchor has no negative eigenspace, bound is 0");
    }
    out.records.push_back(make_record(p, trial, "WITNESS", f.label, w.value(lin),
                                      anchor_fit.converged, anchor_fit.certificate_residual));
    for (double gamma : c.gammas) {
      const double bound = w.direction == BoundDirection::kUpper
                               ? hoeffding_upper_bound(lin, w, gamma, p.events)
                               : hoeffding_bound(lin, w, gamma, p.events);
      out.records.push_back(make_record(p, trial, bound_label(gamma), f.label, bound,
                                        anchor_fit.converged, anchor_fit.certificate_residual));
    }
  }
  for (Method m : c.estimators) {
    const ReconstructionResult r = reconstruct(m, stage2, *p.scheme, c.solver);
    ok = ok && r.converged;
    for (const FunctionalSpec& f : p.functionals) {
      if (!applies(m, f)) continue;
      out.records.push_back(make_record(p, trial, std::string(method_name(m)), f.label,
                                        evaluate(f, r.estimate), r.converged,
                                        r.certificate_residual));
    }
  }
  out.failed = ok ? 0 : 1;
  return out;
}

using TrialFn = TrialOutput (*)(const ExperimentConfig&, const Point&, int);

ExperimentResult run_trials(const ExperimentConfig& config, TrialFn fn) {
  config.validate();
  const std::vector<Point> points = build_points(config);
  const int total = static_cast<int>(points.size()) * config.trials;
  std::vector<TrialOutput> outputs(total);
  parallel_for(total, config.jobs, [&](int i) {
    outputs[i] = fn(config, points[i / config.trials], i % config.trials);
  });
  ExperimentResult result = collect(config, points, outputs);
  result.sweep_steps = sweep_steps(config, points, result.aggregates);
  return result;
}

// Neumaier summation of f(x) over values.
template <typename F>
double compensated_sum(std::span<const double> values, F f) {
  double sum = 0.0, carry = 0.0;
  for (double x : values) {
    const double y = f(x);
    const double t = sum + y;
    carry += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
    sum = t;
  }
  return sum + carry;
}

template <typename T>
bool strictly_increasing(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kBias: return "bias";
    case Mode::kSweepNs: return "sweep_ns";
    case Mode::kSweepN: return "sweep_n";
    case Mode::kSweepFidelity: return "sweep_fidelity";
    case Mode::kBootstrap: return "bootstrap";
    case Mode::kWitness: return "witness";
  }
  return "?";
}

std::string_view bootstrap_name(BootstrapKind k) {
  return k == BootstrapKind::kParametric ? "parametric" : "nonparametric";
}

void ExperimentConfig::validate() const {
  if (trials < 2) throw ConfigError("trials must be >= 2");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (estimators.empty()) throw ConfigError("no estimators requested");
  if (functionals.empty()) throw ConfigError("no functionals requested");
  if (events.empty() || !strictly_increasing(events)) {
    throw ConfigError("N_s list must be non-empty and strictly increasing");
  }
  if (events.front() < 1) throw ConfigError("N_s must be >= 1");
  if (mode == Mode::kSweepN && (qubits.empty() || !strictly_increasing(qubits))) {
    throw ConfigError("qubit sweep list must be non-empty and strictly increasing");
  }
  if (mode == Mode::kSweepFidelity && (fidelities.empty() || !strictly_increasing(fidelities))) {
    throw ConfigError("fidelity sweep list must be non-empty and strictly increasing");
  }
  if (mode == Mode::kBootstrap && resamples < 2) throw ConfigError("resamples must be >= 2");
  for (double g : gammas) {
    if (!(g >= 0.0 && g < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  }
  try {
    solver.validate();
    for (const StateSpec& s : swept_states(*this)) {
      if (s.n_qubits < 1 || s.n_qubits > 6) throw ConfigError("n must lie in [1, 6]");
      make_state(s);
      for (const std::string& f : functionals) parse_functional(f, s);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

AggregateStats aggregate(std::span<const double> values, double true_value) {
  AggregateStats a;
  a.count = static_cast<int>(values.size());
  a.true_value = true_value;
  if (values.empty()) return a;
  const double t = static_cast<double>(values.size());
  a.mean = compensated_sum(values, [](double x) { return x; }) / t;
  const double m = a.mean;
  const double ss = compensated_sum(values, [m](double x) { return (x - m) * (x - m); });
  const double se =
      compensated_sum(values, [true_value](double x) { return (x - true_value) * (x - true_value); });
  a.population_variance = ss / t;
  a.sample_std = values.size() > 1 ? std::sqrt(ss / (t - 1.0)) : 0.0;
  a.sem = a.sample_std / std::sqrt(t);
  a.bias = a.mean - true_value;
  a.mse = se / t;
  return a;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(jobs, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int jobs_from_env(int fallback) {
  const char* v = std::getenv("TOMOBIAS_JOBS");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw ConfigError(std::string("TOMOBIAS_JOBS must be a positive integer, got '") + v + "'");
  }
  return static_cast<int>(n);
}

ExperimentResult run_bias_experiment(const ExperimentConfig& config) {
  return run_trials(config, bias_trial);
}

ExperimentResult run_sweep(const ExperimentConfig& config) {
  if (config.mode != Mode::kSweepNs && config.mode != Mode::kSweepN &&
      config.mode != Mode::kSweepFidelity) {
    throw ConfigError("run_sweep needs a sweep mode");
  }
  return run_trials(config, bias_trial);
}

ExperimentResult run_bootstrap(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.mode = Mode::kBootstrap;
  ExperimentResult result = run_trials(c, bootstrap_trial);
  for (const AggregateStats& before : result.aggregates) {
    if (before.functional.find('/') != std::string::npos) continue;
    BootstrapSummary s;
    s.estimator = before.estimator;
    s.functional = before.functional;
    s.true_value = before.true_value;
    s.before = before;
    for (const AggregateStats& a : result.aggregates) {
      if (a.state != before.state || a.events != before.events || a.estimator != before.estimator) {
        continue;
      }
      if (a.functional == before.functional + "/bs_mean") s.after = a;
    }
    double bars = 0.0;
    int count = 0;
    for (const TrialRecord& r : result.records) {
      if (r.state == before.state && r.events == before.events && r.estimator == before.estimator &&
          r.functional == before.functional + "/bs_std") {
        bars += r.value;
        ++count;
      }
    }
    s.mean_error_bar = count > 0 ? bars / count : 0.0;
    result.bootstrap.push_back(std::move(s));
  }
  return result;
}

ExperimentResult run_witness_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.mode = Mode::kWitness;
  ExperimentResult result = run_trials(c, witness_trial);
  for (const std::string& f : c.functionals) {
    if (parse_functional(f, c.state).kind == FunctionalKind::kFidelityMixed) {
      result.warnings.push_back(f + ": the Uhlmann fidelity has no witness, skipped");
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.mode) {
    case Mode::kBias: return run_bias_experiment(config);
    case Mode::kSweepNs:
    case Mode::kSweepN:
    case Mode::kSweepFidelity: return run_sweep(config);
    case Mode::kBootstrap: return run_bootstrap(config);
    case Mode::kWitness: return run_witness_experiment(config);
  }
  throw ConfigError("unknown mode");
}

FileReport reconstruct_from_file(const std::string& counts_path, Method method,
                                 const std::vector<std::string>& functionals,
                                 const StateSpec& state, const std::vector<double>& gammas,
                                 const SolverOptions& options) {
  const CountsFile file = load_counts(counts_path);
  if (state.n_qubits != file.num_qubits) {
    throw ConfigError("state has " + std::to_string(state.n_qubits) + " qubits, counts have " +
                      std::to_string(file.num_qubits));
  }
  auto scheme = build_scheme(file.num_qubits);
  FileReport report;
  report.result = reconstruct(method, file.data, *scheme, options);
  std::vector<FunctionalSpec> specs;
  for (const std::string& text : functionals) {
    try {
      specs.push_back(parse_functional(text, state));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  for (const FunctionalSpec& f : specs) {
    if (applies(method, f)) {
      report.functionals.emplace_back(f.label, evaluate(f, report.result.estimate));
    }
  }
  if (method != Method::kLin || gammas.empty()) return report;

  const ReconstructionResult anchor_fit = ml_reconstruct(file.data, *scheme, options);
  const QuantumState anchor = anchor_fit.state();
  for (const FunctionalSpec& f : specs) {
    if (f.kind == FunctionalKind::kFidelityMixed) continue;
    const bool exact = f.kind == FunctionalKind::kNegativity || f.kind == FunctionalKind::kFidelityPure;
    const WitnessOperator w = linearize(f, exact ? anchor : regularize_anchor(anchor), *scheme);
    for (double gamma : gammas) {
      FileReport::Bound b;
      b.functional = f.label;
      b.gamma = gamma;
      b.linear_value = w.value(report.result.estimate);
      const bool upper = w.direction == BoundDirection::kUpper;
      b.bound = upper ? hoeffding_upper_bound(report.result.estimate, w, gamma, file.events_per_setting)
                      : hoeffding_bound(report.result.estimate, w, gamma, file.events_per_setting);
      b.direction = upper ? "upper" : "lower";
      report.bounds.push_back(std::move(b));
    }
  }
  return report;
}

}  // namespace tomobias
