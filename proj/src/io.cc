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

#include "tomobias/io.h"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace tomobias {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw CountsFormatError(source + ": " + what);
}

std::int64_t integer_field(const json& j, const std::string& field, const std::string& source) {
  if (!j.is_number_integer()) fail(source, "field '" + field + "' must be an integer");
  return j.get<std::int64_t>();
}

ordered_json stats_json(const AggregateStats& a) {
  ordered_json j;
  j["state"] = a.state;
  j["n"] = a.n;
  j["N_s"] = a.events;
  j["estimator"] = a.estimator;
  j["functional"] = a.functional;
  j["count"] = a.count;
  j["true_value"] = a.true_value;
  j["mean"] = a.mean;
  j["sample_std"] = a.sample_std;
  j["sem"] = a.sem;
  j["bias"] = a.bias;
  j["population_variance"] = a.population_variance;
  j["mse"] = a.mse;
  return j;
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["mode"] = mode_name(c.mode);
  j["state"] = c.state.to_string();
  j["N_s"] = c.events;
  j["qubits"] = c.qubits;
  j["fidelities"] = c.fidelities;
  j["trials"] = c.trials;
  ordered_json est = ordered_json::array();
  for (Method m : c.estimators) est.push_back(method_name(m));
  j["estimators"] = est;
  j["functionals"] = c.functionals;
  j["seed"] = c.seed;
  if (c.mode == Mode::kBootstrap) {
    j["bootstrap"] = bootstrap_name(c.bootstrap);
    j["resamples"] = c.resamples;
  }
  j["gamma"] = c.gammas;
  ordered_json s;
  s["max_iterations"] = c.solver.max_iterations;
  s["target_tol"] = c.solver.target_tol;
  s["cert_tol"] = c.solver.cert_tol;
  s["prob_floor"] = c.solver.prob_floor;
  s["ls_restarts"] = c.solver.ls_restarts;
  j["solver"] = s;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CountsFile parse_counts(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(source, "top level must be an object");
  for (const char* key : {"n", "N_s", "settings"}) {
    if (!j.contains(key)) fail(source, std::string("missing field '") + key + "'");
  }
  const std::int64_t n = integer_field(j["n"], "n", source);
  const std::int64_t events = integer_field(j["N_s"], "N_s", source);
  if (n < 1 || n > 6) fail(source, "field 'n' must lie in [1, 6], got " + std::to_string(n));
  if (events < 1) fail(source, "field 'N_s' must be >= 1");
  if (!j["settings"].is_array()) fail(source, "field 'settings' must be an array");

  auto scheme = build_scheme(static_cast<int>(n));
  const int dim = scheme->dim();
  const int num_settings = scheme->num_settings();
  const auto& settings = j["settings"];
  if (static_cast<int>(settings.size()) != num_settings) {
    fail(source, "expected " + std::to_string(num_settings) + " settings, found " +
                     std::to_string(settings.size()));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(num_settings) * dim, 0);
  std::vector<bool> seen(num_settings, false);
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const std::string where = "settings[" + std::to_string(k) + "]";
    const auto& s = settings[k];
    if (!s.is_object() || !s.contains("bases") || !s.contains("counts")) {
      fail(source, where + " needs 'bases' and 'counts'");
    }
    if (!s["bases"].is_string()) fail(source, where + ".bases must be a string");
    const std::string bases = s["bases"].get<std::string>();
    if (static_cast<std::int64_t>(bases.size()) != n) {
      fail(source, where + ".bases '" + bases + "' must have " + std::to_string(n) + " letters");
    }
    for (std::size_t q = 0; q < bases.size(); ++q) {
      const char c = bases[q];
      if (c != 'X' && c != 'Y' && c != 'Z') {
        fail(source, where + ".bases '" + bases + "': unknown basis '" + std::string(1, c) +
                         "' at position " + std::to_string(q));
      }
    }
    const int index = scheme->setting_index(bases);
    if (seen[index]) fail(source, where + ": setting " + bases + " appears twice");
    seen[index] = true;
    const auto& c = s["counts"];
    if (!c.is_array() || static_cast<int>(c.size()) != dim) {
      fail(source, where + ".counts (setting " + bases + ") must be an array of " +
                       std::to_string(dim) + " integers");
    }
    std::int64_t sum = 0;
    for (int r = 0; r < dim; ++r) {
      const std::int64_t v =
          integer_field(c[r], where + ".counts[" + std::to_string(r) + "]", source);
      if (v < 0) fail(source, where + ".counts (setting " + bases + ") has a negative entry");
      counts[scheme->outcome_index(index, r)] = v;
      sum += v;
    }
    if (sum != events) {
      fail(source, "setting " + bases + " (" + where + "): counts sum to " +
                       std::to_string(sum) + ", expected N_s = " + std::to_string(events));
    }
  }
  CountsFile out;
  out.num_qubits = static_cast<int>(n);
  out.events_per_setting = events;
  out.data = FrequencyData::FromCounts(std::move(counts), num_settings, events);
  return out;
}

CountsFile load_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CountsFormatError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_counts(ss.str(), path);
}

std::string counts_to_json(const FrequencyData& data, const TomographyScheme& scheme) {
  if (!data.has_counts()) throw std::invalid_argument("data carries no counts");
  if (data.num_settings() != scheme.num_settings()) {
    throw std::invalid_argument("data does not match the scheme");
  }
  ordered_json j;
  j["n"] = scheme.num_qubits();
  j["N_s"] = data.events_per_setting();
  ordered_json settings = ordered_json::array();
  for (const Setting& s : scheme.settings()) {
    ordered_json row;
    row["bases"] = s.bases;
    ordered_json c = ordered_json::array();
    for (int r = 0; r < scheme.dim(); ++r) c.push_back(data.counts()[scheme.outcome_index(s.index, r)]);
    row["counts"] = c;
    settings.push_back(row);
  }
  j["settings"] = settings;
  return j.dump(1) + "\n";
}

void save_counts(const std::string& path, const FrequencyData& data,
                 const TomographyScheme& scheme) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << counts_to_json(data, scheme);
}

void write_records_csv(std::ostream& out, const ExperimentResult& result) {
  const std::string_view mode = mode_name(result.config.mode);
  out << "mode,state,n,N_s,trial,estimator,functional,value,converged,cert_residual\n";
  for (const TrialRecord& r : result.records) {
    out << mode << ',' << r.state << ',' << r.n << ',' << r.events << ',' << r.trial << ','
        << r.estimator << ',' << r.functional << ',' << format_double(r.value) << ','
        << (r.converged ? 1 : 0) << ',' << format_double(r.cert_residual) << '\n';
  }
}

void write_records_json(std::ostream& out, const ExperimentResult& result) {
  const std::string mode(mode_name(result.config.mode));
  ordered_json rows = ordered_json::array();
  for (const TrialRecord& r : result.records) {
    ordered_json j;
    j["mode"] = mode;
    j["state"] = r.state;
    j["n"] = r.n;
    j["N_s"] = r.events;
    j["trial"] = r.trial;
    j["estimator"] = r.estimator;
    j["functional"] = r.functional;
    j["value"] = r.value;
    j["converged"] = r.converged;
    j["cert_residual"] = r.cert_residual;
    rows.push_back(std::move(j));
  }
  out << rows.dump(1) << '\n';
}

void write_summary_json(std::ostream& out, const ExperimentResult& result) {
  ordered_json j;
  j["version"] = kVersion;
  j["seed"] = result.config.seed;
  j["config"] = config_json(result.config);
  j["total_trials"] = result.total_trials;
  j["failed_trials"] = result.failed_trials;
  j["failure_fraction"] = result.failure_fraction();
  ordered_json aggs = ordered_json::array();
  for (const auto& a : result.aggregates) aggs.push_back(stats_json(a));
  j["aggregates"] = aggs;
  if (!result.sweep_steps.empty()) {
    ordered_json steps = ordered_json::array();
    for (const SweepStep& s : result.sweep_steps) {
      ordered_json k;
      k["estimator"] = s.estimator;
      k["functional"] = s.functional;
      k["from"] = s.from;
      k["to"] = s.to;
      k["abs_bias_from"] = s.abs_bias_from;
      k["abs_bias_to"] = s.abs_bias_to;
      k["two_sem"] = s.two_sem;
      k["expected_direction"] = s.expected_direction;
      k["significant"] = s.significant;
      steps.push_back(std::move(k));
    }
    j["sweep_steps"] = steps;
  }
  if (!result.bootstrap.empty()) {
    ordered_json bs = ordered_json::array();
    for (const BootstrapSummary& b : result.bootstrap) {
      ordered_json k;
      k["estimator"] = b.estimator;
      k["functional"] = b.functional;
      k["true_value"] = b.true_value;
      k["before"] = stats_json(b.before);
      k["after"] = stats_json(b.after);
      k["grand_mean"] = b.after.mean;
      k["mean_error_bar"] = b.mean_error_bar;
      bs.push_back(std::move(k));
    }
    j["bootstrap"] = bs;
  }
  if (result.config.mode == Mode::kWitness) j["trivial_witnesses"] = result.trivial_witnesses;
  j["warnings"] = result.warnings;
  out << j.dump(1) << '\n';
}

std::string report_to_json(const FileReport& report, const std::string& counts_path) {
  ordered_json j;
  j["version"] = kVersion;
  j["counts"] = counts_path;
  const ReconstructionResult& r = report.result;
  j["estimator"] = method_name(r.method);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["cert_residual"] = r.certificate_residual;
  j["target_value"] = r.target_value;
  j["physical"] = r.is_physical();
  const CMatrix& m = r.estimate.matrix();
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    ordered_json row_re = ordered_json::array(), row_im = ordered_json::array();
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      row_re.push_back(m(a, b).real());
      row_im.push_back(m(a, b).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  j["estimate"] = {{"re", re}, {"im", im}};
  ordered_json f = ordered_json::object();
  for (const auto& [label, value] : report.functionals) f[label] = value;
  j["functionals"] = f;
  ordered_json bounds = ordered_json::array();
  for (const auto& b : report.bounds) {
    ordered_json k;
    k["functional"] = b.functional;
    k["gamma"] = b.gamma;
    k["linear_value"] = b.linear_value;
    k["bound"] = b.bound;
    k["direction"] = b.direction;
    bounds.push_back(std::move(k));
  }
  j["bounds"] = bounds;
  return j.dump(1) + "\n";
}

}  // namespace tomobias
