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

#include "tomobias/states.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tomobias/functionals.h"

namespace tomobias {
namespace {

void check_family_size(StateFamily family, int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("qubit count out of range");
  if (family == StateFamily::kSmolin && n != 4) {
    throw std::invalid_argument("the Smolin state is defined for 4 qubits only");
  }
  if (family == StateFamily::kW && n < 3) {
    throw std::invalid_argument("the W state requires n >= 3");
  }
}

double mix_fidelity_smolin(double p) {
  static const QuantumState kSmolin = smolin_state();
  const int d = 16;
  const CMatrix rho = p * kSmolin.matrix() +
                      (1.0 - p) * CMatrix::Identity(d, d) / static_cast<double>(d);
  return uhlmann_fidelity(rho, kSmolin.matrix());
}

// Smolin mixture weight solved by bisection on the Uhlmann fidelity, which
// is increasing in p.
double solve_smolin_weight(double fidelity) {
  const double f_lo = mix_fidelity_smolin(0.0);
  if (fidelity < f_lo - 1e-12 || fidelity > 1.0 + 1e-12) {
    throw std::invalid_argument("Smolin fidelity must lie in [1/4, 1]");
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mix_fidelity_smolin(mid) < fidelity) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view family_name(StateFamily family) {
  switch (family) {
    case StateFamily::kGhz: return "ghz";
    case StateFamily::kW: return "w";
    case StateFamily::kProductSep: return "sep";
    case StateFamily::kSmolin: return "smolin";
  }
  return "?";
}

double StateSpec::noise_weight() const {
  check_family_size(family, n_qubits);
  const double inv_d = std::ldexp(1.0, -n_qubits);
  if (!(target_fidelity > inv_d && target_fidelity <= 1.0)) {
    throw std::invalid_argument("target fidelity must lie in (1/2^n, 1]");
  }
  if (family == StateFamily::kSmolin) return solve_smolin_weight(target_fidelity);
  return (target_fidelity - inv_d) / (1.0 - inv_d);
}

std::string StateSpec::to_string() const {
  // Shortest text that parses back to the same fidelity.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, target_fidelity);
  std::ostringstream os;
  os << family_name(family);
  if (family != StateFamily::kSmolin) os << ':' << n_qubits;
  os << "@F=" << std::string_view(buf, res.ptr - buf);
  return os.str();
}

StateSpec parse_state_spec(std::string_view text) {
  StateSpec spec;
  std::string_view head = text;
  std::string_view fid;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    head = text.substr(0, at);
    fid = text.substr(at + 1);
  }
  std::string_view family = head;
  std::string_view count;
  if (const auto colon = head.find(':'); colon != std::string_view::npos) {
    family = head.substr(0, colon);
    count = head.substr(colon + 1);
  }
  if (family == "ghz") {
    spec.family = StateFamily::kGhz;
  } else if (family == "w") {
    spec.family = StateFamily::kW;
  } else if (family == "sep" || family == "product_sep") {
    spec.family = StateFamily::kProductSep;
  } else if (family == "smolin") {
    spec.family = StateFamily::kSmolin;
  } else {
    throw std::invalid_argument("unknown state family '" + std::string(family) + "'");
  }
  if (spec.family == StateFamily::kSmolin) {
    spec.n_qubits = 4;
    if (!count.empty() && count != "4") {
      throw std::invalid_argument("the Smolin state is defined for 4 qubits only");
    }
  } else {
    if (count.empty()) {
      throw std::invalid_argument("state spec '" + std::string(text) +
                                  "' lacks a qubit count");
    }
    const auto res = std::from_chars(count.data(), count.data() + count.size(), spec.n_qubits);
    if (res.ec != std::errc() || res.ptr != count.data() + count.size()) {
      throw std::invalid_argument("bad qubit count in '" + std::string(text) + "'");
    }
  }
  spec.target_fidelity = 1.0;
  if (!fid.empty()) {
    if (fid.substr(0, 2) != "F=") {
      throw std::invalid_argument("expected '@F=<fidelity>' in '" + std::string(text) + "'");
    }
    const std::string value(fid.substr(2));
    std::size_t used = 0;
    try {
      spec.target_fidelity = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw std::invalid_argument("bad fidelity in '" + std::string(text) + "'");
    }
  }
  spec.noise_weight();  // validates
  return spec;
}

CVector ghz_vector(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  CVector v = CVector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

CVector w_vector(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  CVector v = CVector::Zero(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) v(Eigen::Index{1} << q) = amp;
  return v;
}

CVector product_sep_vector(int n_qubits) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector single(2);
  single << 1.0 + s, s;  // |0> + |+>
  single /= single.norm();
  CVector v = single;
  for (int q = 1; q < n_qubits; ++q) {
    CVector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * single(0);
      next(2 * i + 1) = v(i) * single(1);
    }
    v = std::move(next);
  }
  return v;
}

QuantumState smolin_state() {
  const double s = 1.0 / std::sqrt(2.0);
  CVector bell[4];
  for (auto& b : bell) b = CVector::Zero(4);
  bell[0](0) = s; bell[0](3) = s;   // Phi+
  bell[1](0) = s; bell[1](3) = -s;  // Phi-
  bell[2](1) = s; bell[2](2) = s;   // Psi+
  bell[3](1) = s; bell[3](2) = -s;  // Psi-
  CMatrix rho = CMatrix::Zero(16, 16);
  for (const auto& b : bell) {
    const CMatrix proj = b * b.adjoint();
    const CMatrix pair[2] = {proj, proj};
    rho += 0.25 * kron_matrices(pair);
  }
  return QuantumState(HermitianOperator(rho));
}

std::optional<CVector> target_vector(StateFamily family, int n_qubits) {
  check_family_size(family, n_qubits);
  switch (family) {
    case StateFamily::kGhz: return ghz_vector(n_qubits);
    case StateFamily::kW: return w_vector(n_qubits);
    case StateFamily::kProductSep: return product_sep_vector(n_qubits);
    case StateFamily::kSmolin: return std::nullopt;
  }
  return std::nullopt;
}

QuantumState target_state(StateFamily family, int n_qubits) {
  if (auto psi = target_vector(family, n_qubits)) return QuantumState::Pure(*psi);
  return smolin_state();
}

QuantumState make_state(const StateSpec& spec) {
  const double p = spec.noise_weight();
  const QuantumState target = target_state(spec.family, spec.n_qubits);
  const Eigen::Index d = target.dim();
  const CMatrix rho =
      p * target.matrix() + (1.0 - p) * CMatrix::Identity(d, d) / static_cast<double>(d);
  return QuantumState(HermitianOperator(rho));
}

}  // namespace tomobias
