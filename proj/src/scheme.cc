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

#include "tomobias/scheme.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace tomobias {
namespace {

constexpr char kBases[3] = {'X', 'Y', 'Z'};

std::uint32_t basis_digit(char b) {
  switch (b) {
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw std::invalid_argument(std::string("unknown basis '") + b + "'");
  }
}

// Ratio of largest off-diagonal to smallest diagonal entry of a sparse
// symmetric matrix; zero when the matrix is diagonal.
bool is_diagonal(const Eigen::SparseMatrix<double>& g, double tol) {
  double max_diag = 0.0;
  for (int k = 0; k < g.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(g, k); it; ++it) {
      if (it.row() == it.col()) max_diag = std::max(max_diag, std::abs(it.value()));
    }
  }
  for (int k = 0; k < g.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(g, k); it; ++it) {
      if (it.row() != it.col() && std::abs(it.value()) > tol * max_diag) return false;
    }
  }
  return true;
}

}  // namespace

void walsh_hadamard(std::span<double> v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

TomographyScheme::TomographyScheme(int num_qubits, const SchemeOptions& options)
    : n_(num_qubits), dim_(1 << std::max(num_qubits, 0)), paulis_(std::max(num_qubits, 1)) {
  if (num_qubits < 1 || num_qubits > options.max_qubits) {
    throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                " outside the supported range [1, " +
                                std::to_string(options.max_qubits) + "]");
  }
  int num_settings = 1;
  for (int q = 0; q < n_; ++q) num_settings *= 3;

  settings_.reserve(num_settings);
  for (int s = 0; s < num_settings; ++s) {
    std::string bases(static_cast<std::size_t>(n_), 'X');
    int rem = s;
    for (int q = n_ - 1; q >= 0; --q) {
      bases[q] = kBases[rem % 3];
      rem /= 3;
    }
    settings_.push_back({std::move(bases), s});
  }

  setting_paulis_.resize(static_cast<std::size_t>(num_settings) * dim_);
  for (int s = 0; s < num_settings; ++s) {
    for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(dim_); ++mask) {
      std::uint32_t mu = 0;
      for (int q = 0; q < n_; ++q) {
        const bool in_support = (mask >> (n_ - 1 - q)) & 1u;
        mu = mu * 4 + (in_support ? basis_digit(settings_[s].bases[q]) : 0u);
      }
      setting_paulis_[static_cast<std::size_t>(s) * dim_ + mask] = mu;
    }
  }

  // B_{nu,mu} = (1/d) (-1)^{|r & S|} for mu = mu(s, S).
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(num_outcomes()) * dim_);
  const double inv_d = 1.0 / dim_;
  for (int s = 0; s < num_settings; ++s) {
    for (int r = 0; r < dim_; ++r) {
      const auto nu = static_cast<int>(outcome_index(s, r));
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(dim_); ++mask) {
        const double sign = (std::popcount(static_cast<std::uint32_t>(r) & mask) & 1) ? -1.0 : 1.0;
        triplets.emplace_back(
            nu, static_cast<int>(setting_paulis_[static_cast<std::size_t>(s) * dim_ + mask]),
            sign * inv_d);
      }
    }
  }
  b_.resize(num_outcomes(), static_cast<Eigen::Index>(paulis_.size()));
  b_.setFromTriplets(triplets.begin(), triplets.end());

  // B^+ = (B^T B)^{-1} B^T. For the Pauli scheme B^T B is diagonal; any other
  // structure goes through the dense SVD route.
  const Eigen::SparseMatrix<double> bt = b_.transpose();
  const Eigen::SparseMatrix<double> gram = bt * Eigen::SparseMatrix<double>(b_);
  if (is_diagonal(gram, 1e-12)) {
    const RVector diag = RVector(gram.diagonal());
    const double sigma_max = std::sqrt(diag.maxCoeff());
    if (!(std::sqrt(diag.minCoeff()) > 1e-12 * sigma_max)) {
      throw IllPosedSchemeError("B matrix is rank deficient");
    }
    b_pinv_ = SparseMatrix(diag.cwiseInverse().asDiagonal() * bt);
  } else {
    b_pinv_ = pseudo_inverse(Eigen::MatrixXd(b_)).sparseView();
  }
  b_pinv_.makeCompressed();
}

int TomographyScheme::setting_index(const std::string& bases) const {
  if (static_cast<int>(bases.size()) != n_) {
    throw std::invalid_argument("setting '" + bases + "' has the wrong length");
  }
  int s = 0;
  for (char c : bases) s = s * 3 + static_cast<int>(basis_digit(c)) - 1;
  return s;
}

HermitianOperator TomographyScheme::projector(std::size_t nu) const {
  if (nu >= static_cast<std::size_t>(num_outcomes())) {
    throw std::out_of_range("outcome index out of range");
  }
  const std::size_t s = nu / dim_;
  const std::size_t r = nu % dim_;
  std::vector<CMatrix> factors;
  factors.reserve(n_);
  const CMatrix id = CMatrix::Identity(2, 2);
  for (int q = 0; q < n_; ++q) {
    const int bit = static_cast<int>((r >> (n_ - 1 - q)) & 1u);
    const double sign = bit ? -1.0 : 1.0;
    factors.push_back(0.5 * (id + sign * pauli_matrix(settings_[s].bases[q])));
  }
  return HermitianOperator::FromTrusted(kron_matrices(factors));
}

std::vector<HermitianOperator> TomographyScheme::projectors() const {
  std::vector<HermitianOperator> out;
  out.reserve(num_outcomes());
  for (int nu = 0; nu < num_outcomes(); ++nu) out.push_back(projector(nu));
  return out;
}

HermitianOperator TomographyScheme::dual_operator(std::size_t nu) const {
  const SparseMatrix& bp = b_pinv_;
  RVector col = RVector::Zero(static_cast<Eigen::Index>(num_paulis()));
  // b_pinv_ is row-major (mu rows); gather column nu.
  for (int mu = 0; mu < bp.outerSize(); ++mu) {
    col(mu) = bp.coeff(mu, static_cast<Eigen::Index>(nu));
  }
  CMatrix m;
  paulis_.from_coords(col, 1.0 / dim_, m);
  return HermitianOperator::FromTrusted(std::move(m));
}

void TomographyScheme::probabilities_from_coords(const RVector& coords, RVector& probs) const {
  probs.resize(num_outcomes());
  std::vector<double> buf(static_cast<std::size_t>(dim_));
  const double inv_d = 1.0 / dim_;
  for (int s = 0; s < num_settings(); ++s) {
    const std::uint32_t* row = &setting_paulis_[static_cast<std::size_t>(s) * dim_];
    for (int m = 0; m < dim_; ++m) buf[m] = coords(row[m]);
    walsh_hadamard(buf);
    double* out = probs.data() + static_cast<std::ptrdiff_t>(s) * dim_;
    for (int r = 0; r < dim_; ++r) out[r] = buf[r] * inv_d;
  }
}

void TomographyScheme::adjoint_to_coords(const RVector& weights, RVector& out) const {
  out.setZero(static_cast<Eigen::Index>(num_paulis()));
  std::vector<double> buf(static_cast<std::size_t>(dim_));
  const double inv_d = 1.0 / dim_;
  for (int s = 0; s < num_settings(); ++s) {
    const double* in = weights.data() + static_cast<std::ptrdiff_t>(s) * dim_;
    std::copy(in, in + dim_, buf.begin());
    walsh_hadamard(buf);
    const std::uint32_t* row = &setting_paulis_[static_cast<std::size_t>(s) * dim_];
    for (int m = 0; m < dim_; ++m) out(row[m]) += buf[m] * inv_d;
  }
}

void TomographyScheme::weighted_projector_sum(const RVector& weights, CMatrix& out) const {
  RVector coords;
  adjoint_to_coords(weights, coords);
  paulis_.from_coords(coords, 1.0, out);
}

std::shared_ptr<const TomographyScheme> build_scheme(int num_qubits,
                                                     const SchemeOptions& options) {
  return std::make_shared<const TomographyScheme>(num_qubits, options);
}

Eigen::MatrixXd build_b_matrix(const TomographyScheme& scheme) {
  return Eigen::MatrixXd(scheme.b_matrix());
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sv = svd.singularValues();
  if (sv.size() == 0 || b.rows() < b.cols()) {
    throw IllPosedSchemeError("B matrix has fewer rows than columns");
  }
  const double sigma_max = sv(0);
  if (!(sv(sv.size() - 1) > 1e-12 * sigma_max)) {
    throw IllPosedSchemeError("B matrix is rank deficient");
  }
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
}

std::vector<HermitianOperator> dual_frame(const TomographyScheme& scheme) {
  constexpr double kMaxEntries = 1ull << 27;
  const double entries = static_cast<double>(scheme.num_outcomes()) * scheme.dim() * scheme.dim();
  if (entries > kMaxEntries) {
    throw std::invalid_argument(
        "dual frame too large to materialize; use TomographyScheme::dual_operator");
  }
  std::vector<HermitianOperator> out;
  out.reserve(scheme.num_outcomes());
  const SparseMatrix pinv_t = scheme.b_pinv().transpose();  // nu rows
  RVector col(static_cast<Eigen::Index>(scheme.num_paulis()));
  CMatrix m;
  for (int nu = 0; nu < scheme.num_outcomes(); ++nu) {
    col.setZero();
    for (SparseMatrix::InnerIterator it(pinv_t, nu); it; ++it) col(it.col()) = it.value();
    scheme.paulis().from_coords(col, 1.0 / scheme.dim(), m);
    out.push_back(HermitianOperator::FromTrusted(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FrequencyData

FrequencyData FrequencyData::FromCounts(std::vector<std::int64_t> counts, int num_settings,
                                        std::int64_t events_per_setting) {
  if (num_settings <= 0 || counts.empty() || counts.size() % num_settings != 0) {
    throw std::invalid_argument("counts do not split evenly over the settings");
  }
  if (events_per_setting < 1) throw std::invalid_argument("N_s must be >= 1");
  const std::size_t per = counts.size() / num_settings;
  FrequencyData fd;
  fd.freqs_.resize(static_cast<Eigen::Index>(counts.size()));
  for (int s = 0; s < num_settings; ++s) {
    std::int64_t total = 0;
    for (std::size_t r = 0; r < per; ++r) {
      const auto c = counts[s * per + r];
      if (c < 0) throw std::invalid_argument("negative count in setting " + std::to_string(s));
      total += c;
      fd.freqs_(static_cast<Eigen::Index>(s * per + r)) =
          static_cast<double>(c) / static_cast<double>(events_per_setting);
    }
    if (total != events_per_setting) {
      throw std::invalid_argument("counts of setting " + std::to_string(s) + " sum to " +
                                  std::to_string(total) + ", expected N_s = " +
                                  std::to_string(events_per_setting));
    }
  }
  fd.counts_ = std::move(counts);
  fd.events_ = events_per_setting;
  fd.num_settings_ = num_settings;
  return fd;
}

FrequencyData FrequencyData::FromFrequencies(RVector frequencies, int num_settings,
                                             std::int64_t events_per_setting) {
  if (num_settings <= 0 || frequencies.size() == 0 ||
      frequencies.size() % num_settings != 0) {
    throw std::invalid_argument("frequencies do not split evenly over the settings");
  }
  if (events_per_setting < 1) throw std::invalid_argument("N_s must be >= 1");
  const Eigen::Index per = frequencies.size() / num_settings;
  for (int s = 0; s < num_settings; ++s) {
    const auto seg = frequencies.segment(s * per, per);
    if (seg.minCoeff() < 0.0 || seg.maxCoeff() > 1.0 || std::abs(seg.sum() - 1.0) > 1e-9) {
      throw std::invalid_argument("frequencies of setting " + std::to_string(s) +
                                  " are not a probability vector");
    }
  }
  FrequencyData fd;
  fd.freqs_ = std::move(frequencies);
  fd.events_ = events_per_setting;
  fd.num_settings_ = num_settings;
  return fd;
}

// ---------------------------------------------------------------------------

RVector born_probabilities(const QuantumState& rho, const TomographyScheme& scheme) {
  if (rho.dim() != scheme.dim()) {
    throw std::invalid_argument("state dimension does not match the scheme");
  }
  RVector coords, probs;
  scheme.paulis().to_coords(rho.matrix(), coords);
  scheme.probabilities_from_coords(coords, probs);
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    double& p = probs(i);
    if (p < -1e-9 || p > 1.0 + 1e-9) {
      throw InternalConsistencyError("Born probability " + std::to_string(p) +
                                     " outside [0, 1] beyond rounding");
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  return probs;
}

HermitianOperator linear_inversion(const RVector& frequencies, const TomographyScheme& scheme) {
  if (frequencies.size() != scheme.num_outcomes()) {
    throw std::invalid_argument("frequency vector length does not match the scheme");
  }
  const RVector coords = scheme.b_pinv() * frequencies;
  CMatrix m;
  scheme.paulis().from_coords(coords, 1.0 / scheme.dim(), m);
  return HermitianOperator::FromTrusted(std::move(m));
}

HermitianOperator linear_inversion(const FrequencyData& data, const TomographyScheme& scheme) {
  if (data.num_settings() != scheme.num_settings()) {
    throw std::invalid_argument("frequency data does not match the scheme's settings");
  }
  return linear_inversion(data.frequencies(), scheme);
}

}  // namespace tomobias
