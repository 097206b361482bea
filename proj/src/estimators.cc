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

#include "tomobias/estimators.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "tomobias/sampling.h"

namespace tomobias {
namespace {

enum class Target { kMl, kLs };

// Hilbert-Schmidt inner product Re tr(A^dagger B).
double hs(const CMatrix& a, const CMatrix& b) {
  return (a.array().conjugate() * b.array()).sum().real();
}

double lambda_max(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Target function and gradient in matrix form. The gradient is the Hermitian
// G with d/dt T(rho + t X) = tr(G X).
class Objective {
 public:
  Objective(Target kind, const RVector& freqs, const TomographyScheme& scheme, double floor)
      : kind_(kind), f_(freqs), scheme_(scheme), floor_(floor) {}

  double value(const CMatrix& rho) {
    load(rho);
    return accumulate(false);
  }

  double value_and_gradient(const CMatrix& rho, CMatrix& grad) {
    load(rho);
    const double v = accumulate(true);
    scheme_.adjoint_to_coords(weights_, grad_coords_);
    // The identity component is inert on trace-preserving steps and only
    // adds rounding noise, so it is dropped.
    grad_coords_(0) = 0.0;
    scheme_.paulis().from_coords(grad_coords_, 1.0, grad);
    return v;
  }

 private:
  void load(const CMatrix& rho) {
    scheme_.paulis().to_coords(rho, coords_);
    scheme_.probabilities_from_coords(coords_, probs_);
  }

  double accumulate(bool with_weights) {
    if (with_weights) weights_.resize(probs_.size());
    double v = 0.0;
    const double log_floor = std::log(floor_);
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
      const double p = probs_(i);
      const double f = f_(i);
      const bool floored = !(p > floor_);
      double w = 0.0;
      if (kind_ == Target::kMl) {
        if (f > 0.0) {
          v += f * (floored ? log_floor : std::log(p));
          if (!floored) w = f / p;
        }
      } else {
        const double pp = floored ? floor_ : p;
        const double diff = f - pp;
        v -= diff * diff / pp;
        if (!floored) w = (f * f) / (p * p) - 1.0;
      }
      if (with_weights) weights_(i) = w;
    }
    return v;
  }

  Target kind_;
  const RVector& f_;
  const TomographyScheme& scheme_;
  double floor_;
  RVector coords_, probs_, weights_, grad_coords_;
};

struct AscentOutcome {
  CMatrix rho;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentOutcome projected_ascent(Objective& obj, CMatrix rho, const SolverOptions& opts,
                               std::vector<double>* history) {
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-14;
  constexpr double kMaxStep = 1e12;
  constexpr int kCertEvery = 5;
  // Ascent below this multiple of |G| is rounding noise.
  constexpr double kNoiseScale = 1e-14;
  constexpr double kFlatMove = 1e-6;
  constexpr int kMaxFlat = 50;

  const Eigen::Index d = rho.rows();
  CMatrix grad(d, d), grad_new(d, d), rho_new(d, d);
  double v = obj.value_and_gradient(rho, grad);
  if (history) history->push_back(v);

  auto residual_of = [&](const CMatrix& r, const CMatrix& g) {
    return lambda_max(g) - hs(r, g);
  };

  // First step moves rho by roughly 0.1 in Frobenius norm.
  const double gnorm = grad.norm();
  double step = gnorm > 0.0 ? 0.1 / gnorm : 1.0;

  AscentOutcome out;
  int it = 0;
  int flat_run = 0;
  for (; it < opts.max_iterations; ++it) {
    if (it % kCertEvery == 0) {
      out.residual = residual_of(rho, grad);
      if (out.residual <= opts.cert_tol) break;
      // Concavity bounds the remaining gain of the target by the residual.
      if (out.residual < opts.target_tol * std::max(1.0, std::abs(v))) break;
    }
    double v_new = 0.0;
    bool accepted = false;
    bool flat = false;
    const double noise = kNoiseScale * grad.norm();
    for (int bt = 0; bt < 60; ++bt) {
      rho_new = project_to_physical_matrix(rho + step * grad);
      const double ascent = hs(grad, rho_new - rho);
      v_new = obj.value_and_gradient(rho_new, grad_new);
      if (ascent <= noise && (rho_new - rho).norm() <= kFlatMove) {
        // The step is below the resolution of the ascent test.
        flat = accepted = true;
        break;
      }
      // Concavity: a non-negative slope at the end of the segment means the
      // target rose along all of it, which is decided without cancellation.
      if (v_new >= v + kArmijo * ascent || hs(grad_new, rho_new - rho) >= 0.0) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < kMinStep) break;
    }
    if (!accepted) break;
    flat_run = flat ? flat_run + 1 : 0;
    if (flat_run > kMaxFlat) break;
    const CMatrix s = rho_new - rho;
    const double ss = hs(s, s);
    const double sy = hs(s, grad_new - grad);  // <= 0 for a concave target
    const double yy = hs(grad_new - grad, grad_new - grad);
    // Two short Barzilai-Borwein steps, then a long one.
    if (sy < 0.0) {
      step = std::clamp(it % 3 != 0 ? -sy / yy : ss / -sy, kMinStep, kMaxStep);
    } else {
      step = kMaxStep;
    }

    rho.swap(rho_new);
    grad.swap(grad_new);
    v = v_new;
    if (history) history->push_back(v);
  }
  out.residual = residual_of(rho, grad);
  out.converged = out.residual <= opts.cert_tol;
  out.rho = std::move(rho);
  out.value = v;
  out.iterations = it;
  return out;
}

CMatrix random_interior_state(int d, RandomStream& rng) {
  // Mixture of the maximally mixed state and a random Ginibre state.
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double u1 = std::max(rng.next_double(), 1e-300);
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g.data()[i] = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
  }
  CMatrix sigma = g * g.adjoint();
  sigma /= sigma.trace().real();
  return 0.5 * sigma + 0.5 * CMatrix::Identity(d, d) / static_cast<double>(d);
}

void check_inputs(const FrequencyData& data, const TomographyScheme& scheme) {
  if (data.num_settings() != scheme.num_settings() ||
      data.size() != static_cast<std::size_t>(scheme.num_outcomes())) {
    throw std::invalid_argument("frequency data does not match the scheme");
  }
}

ReconstructionResult run_solver(Target kind, Method method, const FrequencyData& data,
                                const TomographyScheme& scheme, const SolverOptions& opts) {
  opts.validate();
  check_inputs(data, scheme);
  const int d = scheme.dim();
  Objective obj(kind, data.frequencies(), scheme, opts.prob_floor);

  CMatrix start = CMatrix::Identity(d, d) / static_cast<double>(d);
  if (opts.initial) {
    if (opts.initial->rows() != d || !QuantumState::IsPhysical(
            HermitianOperator::FromTrusted(*opts.initial))) {
      throw std::invalid_argument("initial point is not a state of the scheme's dimension");
    }
    start = *opts.initial;
  }

  ReconstructionResult res;
  res.method = method;
  std::vector<double>* hist = opts.record_history ? &res.history : nullptr;
  AscentOutcome best = projected_ascent(obj, start, opts, hist);
  int total_iterations = best.iterations;

  const int starts = kind == Target::kLs ? opts.ls_restarts : 1;
  if (starts > 1) {
    RandomStream rng(mix64(opts.restart_seed));
    double lo = best.value, hi = best.value;
    for (int k = 1; k < starts; ++k) {
      AscentOutcome trial = projected_ascent(obj, random_interior_state(d, rng), opts, nullptr);
      total_iterations += trial.iterations;
      lo = std::min(lo, trial.value);
      hi = std::max(hi, trial.value);
      if (trial.value > best.value) best = std::move(trial);
    }
    res.restart_spread = hi - lo;
  }

  res.estimate = HermitianOperator::FromTrusted(std::move(best.rho));
  res.iterations = total_iterations;
  res.target_value = best.value;
  res.certificate_residual = best.residual;
  res.converged = best.converged;
  return res;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kLin: return "LIN";
    case Method::kMl: return "ML";
    case Method::kLs: return "LS";
    case Method::kProj: return "PROJ";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "LIN") return Method::kLin;
  if (up == "ML") return Method::kMl;
  if (up == "LS") return Method::kLs;
  if (up == "PROJ") return Method::kProj;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

void SolverOptions::validate() const {
  if (max_iterations <= 0 || !(target_tol > 0) || !(cert_tol > 0) || !(prob_floor > 0) ||
      ls_restarts <= 0) {
    throw std::invalid_argument("solver options must all be positive");
  }
}

QuantumState ReconstructionResult::state() const {
  if (method == Method::kLin) return QuantumState(estimate);
  return QuantumState::FromTrusted(estimate);
}

RVector project_to_simplex(const RVector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0, theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += sorted[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

CMatrix project_to_physical_matrix(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector w = project_to_simplex(es.eigenvalues());
  // Eigenvalues ascend, so the support is a trailing block of columns.
  Eigen::Index first = 0;
  while (first < w.size() && w(first) <= 0.0) ++first;
  const Eigen::Index rank = w.size() - first;
  const CMatrix scaled =
      es.eigenvectors().rightCols(rank) * w.tail(rank).cwiseSqrt().asDiagonal();
  CMatrix out = scaled * scaled.adjoint();
  return out;
}

QuantumState project_to_physical(const HermitianOperator& h) {
  return QuantumState::FromTrusted(
      HermitianOperator::FromTrusted(project_to_physical_matrix(h.matrix())));
}

double ml_target(const CMatrix& rho, const FrequencyData& data, const TomographyScheme& scheme,
                 double prob_floor) {
  check_inputs(data, scheme);
  Objective obj(Target::kMl, data.frequencies(), scheme, prob_floor);
  return obj.value(rho);
}

double ls_target(const CMatrix& rho, const FrequencyData& data, const TomographyScheme& scheme,
                 double prob_floor) {
  check_inputs(data, scheme);
  Objective obj(Target::kLs, data.frequencies(), scheme, prob_floor);
  return obj.value(rho);
}

ReconstructionResult ml_reconstruct(const FrequencyData& data, const TomographyScheme& scheme,
                                    const SolverOptions& options) {
  return run_solver(Target::kMl, Method::kMl, data, scheme, options);
}

ReconstructionResult ls_reconstruct(const FrequencyData& data, const TomographyScheme& scheme,
                                    const SolverOptions& options) {
  return run_solver(Target::kLs, Method::kLs, data, scheme, options);
}

ReconstructionResult lin_reconstruct(const FrequencyData& data, const TomographyScheme& scheme) {
  ReconstructionResult res;
  res.method = Method::kLin;
  res.estimate = linear_inversion(data, scheme);
  return res;
}

ReconstructionResult reconstruct(Method method, const FrequencyData& data,
                                 const TomographyScheme& scheme, const SolverOptions& options) {
  switch (method) {
    case Method::kLin: return lin_reconstruct(data, scheme);
    case Method::kMl: return ml_reconstruct(data, scheme, options);
    case Method::kLs: return ls_reconstruct(data, scheme, options);
    case Method::kProj: {
      ReconstructionResult res = lin_reconstruct(data, scheme);
      res.method = Method::kProj;
      res.estimate = project_to_physical(res.estimate).op();
      return res;
    }
  }
  throw std::invalid_argument("unknown estimator");
}

}  // namespace tomobias
