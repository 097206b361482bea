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

#include "tomobias/operator.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tomobias {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int qubits_for_dim(std::int64_t dim) {
  if (!is_power_of_two(dim)) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

double max_hermitian_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(CMatrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw std::invalid_argument("Hermitian operator must be a nonempty square matrix");
  }
  num_qubits_ = qubits_for_dim(entries.rows());
  const double dev = max_hermitian_deviation(entries);
  if (!(dev <= kHermitianTol)) {
    throw std::invalid_argument("matrix is not Hermitian (max deviation " +
                                std::to_string(dev) + ")");
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::FromTrusted(CMatrix entries) {
  HermitianOperator h;
  h.num_qubits_ = std::countr_zero(static_cast<std::uint64_t>(entries.rows()));
  h.m_ = std::move(entries);
  return h;
}

HermitianOperator HermitianOperator::Identity(int num_qubits) {
  const int d = 1 << num_qubits;
  return FromTrusted(CMatrix::Identity(d, d));
}

HermitianOperator HermitianOperator::Zero(int num_qubits) {
  const int d = 1 << num_qubits;
  return FromTrusted(CMatrix::Zero(d, d));
}

HermitianOperator HermitianOperator::Projector(const CVector& psi) {
  return HermitianOperator(psi * psi.adjoint());
}

double HermitianOperator::inner(const HermitianOperator& other) const {
  if (dim() != other.dim()) {
    throw std::invalid_argument("dimension mismatch in Hilbert-Schmidt product");
  }
  // tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (m_.array() * other.m_.conjugate().array()).sum().real();
}

double HermitianOperator::expectation(const CVector& psi) const {
  if (psi.size() != dim()) {
    throw std::invalid_argument("dimension mismatch in expectation value");
  }
  return psi.dot(m_ * psi).real();
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  return FromTrusted(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  return FromTrusted(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return FromTrusted(m_ * s);
}

// ---------------------------------------------------------------------------
// QuantumState

bool QuantumState::IsPhysical(const HermitianOperator& op) {
  if (op.dim() == 0) return false;
  if (std::abs(op.trace() - 1.0) > kTraceTol) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -kPhysicalEigTol;
}

QuantumState::QuantumState(HermitianOperator op) : op_(std::move(op)) {
  if (!IsPhysical(op_)) {
    throw std::invalid_argument(
        "operator is not a density matrix (trace must be 1, spectrum >= 0)");
  }
}

QuantumState QuantumState::FromTrusted(HermitianOperator op) {
  QuantumState s;
  s.op_ = std::move(op);
  return s;
}

QuantumState QuantumState::MaximallyMixed(int num_qubits) {
  const int d = 1 << num_qubits;
  return FromTrusted(HermitianOperator::FromTrusted(
      CMatrix::Identity(d, d) / static_cast<double>(d)));
}

QuantumState QuantumState::Pure(const CVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("zero state vector");
  return QuantumState(HermitianOperator::Projector(psi / norm));
}

// ---------------------------------------------------------------------------
// Free functions

CMatrix kron_matrices(std::span<const CMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("kron of an empty list");
  CMatrix out = factors[0];
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const CMatrix& b = factors[f];
    if (b.rows() != b.cols()) throw std::invalid_argument("kron factor not square");
    CMatrix next(out.rows() * b.rows(), out.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = out(i, j) * b;
      }
    }
    out = std::move(next);
  }
  if (out.rows() != out.cols()) throw std::invalid_argument("kron factor not square");
  return out;
}

HermitianOperator kron(std::span<const HermitianOperator> factors) {
  if (factors.empty()) throw std::invalid_argument("kron of an empty list");
  std::vector<CMatrix> mats;
  mats.reserve(factors.size());
  for (const auto& f : factors) mats.push_back(f.matrix());
  return HermitianOperator::FromTrusted(kron_matrices(mats));
}

CMatrix pauli_matrix(char label) {
  const Complex i(0.0, 1.0);
  CMatrix m(2, 2);
  switch (label) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default:
      throw std::invalid_argument(std::string("illegal Pauli label '") + label + "'");
  }
  return m;
}

HermitianOperator pauli_string(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("empty Pauli string");
  std::vector<CMatrix> mats;
  mats.reserve(label.size());
  for (char c : label) mats.push_back(pauli_matrix(c));
  return HermitianOperator::FromTrusted(kron_matrices(mats));
}

std::vector<HermitianOperator> traceless_basis(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("traceless basis needs n >= 1");
  const PauliTable table(num_qubits);
  const double scale = 1.0 / std::sqrt(static_cast<double>(table.dim()));
  std::vector<HermitianOperator> basis;
  basis.reserve(table.size() - 1);
  RVector coords = RVector::Zero(static_cast<Eigen::Index>(table.size()));
  CMatrix m;
  for (std::size_t mu = 1; mu < table.size(); ++mu) {
    coords.setZero();
    coords(static_cast<Eigen::Index>(mu)) = 1.0;
    table.from_coords(coords, scale, m);
    basis.push_back(HermitianOperator::FromTrusted(m));
  }
  return basis;
}

EigenDecomposition eig_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
  const double dev = max_hermitian_deviation(m);
  if (!(dev <= kHermitianTol)) {
    throw std::invalid_argument("eigensolver input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

EigenDecomposition eig_hermitian(const HermitianOperator& op) {
  return eig_hermitian(op.matrix());
}

CMatrix partial_transpose_matrix(const CMatrix& m, int num_qubits,
                                 std::uint64_t party_mask) {
  // party_mask holds basis-index bits (qubit q <-> bit n-1-q).
  (void)num_qubits;
  const Eigen::Index d = m.rows();
  CMatrix out(d, d);
  const std::uint64_t keep = ~party_mask;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto uj = static_cast<std::uint64_t>(j);
      const auto ti = (ui & keep) | (uj & party_mask);
      const auto tj = (uj & keep) | (ui & party_mask);
      out(static_cast<Eigen::Index>(ti), static_cast<Eigen::Index>(tj)) = m(i, j);
    }
  }
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& op,
                                    std::span<const int> party_a) {
  const int n = op.num_qubits();
  std::uint64_t mask = 0;
  for (int q : party_a) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("partial transpose: qubit index " +
                                  std::to_string(q) + " out of range");
    }
    mask |= std::uint64_t{1} << (n - 1 - q);
  }
  return HermitianOperator::FromTrusted(partial_transpose_matrix(op.matrix(), n, mask));
}

// ---------------------------------------------------------------------------
// PauliTable

PauliTable::PauliTable(int num_qubits) : n_(num_qubits), dim_(1 << num_qubits) {
  if (num_qubits < 1 || num_qubits > 12) {
    throw std::invalid_argument("Pauli table supports 1..12 qubits");
  }
  const std::size_t count = std::size_t{1} << (2 * n_);
  flip_.resize(count);
  sign_mask_.resize(count);
  y_count_.resize(count);
  weight_.resize(count);
  for (std::size_t mu = 0; mu < count; ++mu) {
    std::uint32_t flip = 0, sign = 0;
    int ys = 0, w = 0;
    for (int q = 0; q < n_; ++q) {
      const auto digit = (mu >> (2 * (n_ - 1 - q))) & 3u;
      const std::uint32_t bit = 1u << (n_ - 1 - q);
      if (digit != 0) ++w;
      if (digit == 1 || digit == 2) flip |= bit;
      if (digit == 2 || digit == 3) sign |= bit;
      if (digit == 2) ++ys;
    }
    flip_[mu] = flip;
    sign_mask_[mu] = sign;
    y_count_[mu] = static_cast<std::uint8_t>(ys);
    weight_[mu] = static_cast<std::uint8_t>(w);
  }
  by_flip_sign_.resize(count);
  for (std::size_t mu = 0; mu < count; ++mu) {
    by_flip_sign_[(std::size_t{flip_[mu]} << n_) + sign_mask_[mu]] = static_cast<std::uint32_t>(mu);
  }
}

Complex PauliTable::phase(std::size_t mu, std::uint32_t k) const {
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex p = kIPow[y_count_[mu] & 3u];
  if (std::popcount(k & sign_mask_[mu]) & 1) p = -p;
  return p;
}

std::string PauliTable::label(std::size_t mu) const {
  static const char kDigits[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = kDigits[(mu >> (2 * (n_ - 1 - q))) & 3u];
  return s;
}

std::size_t PauliTable::index_of(std::string_view label) {
  std::size_t mu = 0;
  for (char c : label) {
    std::size_t digit;
    switch (c) {
      case 'I': digit = 0; break;
      case 'X': digit = 1; break;
      case 'Y': digit = 2; break;
      case 'Z': digit = 3; break;
      default:
        throw std::invalid_argument(std::string("illegal Pauli label '") + c + "'");
    }
    mu = mu * 4 + digit;
  }
  return mu;
}

namespace {

void fwht(Complex* a, std::uint32_t n) {
  for (std::uint32_t h = 1; h < n; h <<= 1) {
    for (std::uint32_t i = 0; i < n; i += h << 1) {
      for (std::uint32_t j = i; j < i + h; ++j) {
        const Complex u = a[j], v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

// i^p * z.
Complex times_i_pow(Complex z, unsigned p) {
  switch (p & 3u) {
    case 0: return z;
    case 1: return {-z.imag(), z.real()};
    case 2: return -z;
    default: return {z.imag(), -z.real()};
  }
}

}  // namespace

void PauliTable::to_coords(const CMatrix& m, RVector& coords) const {
  // For each flip pattern x, tr(m Gamma) over all sign patterns z is one
  // Walsh-Hadamard transform of the diagonal k -> m(k, k^x).
  const auto d = static_cast<std::uint32_t>(dim_);
  coords.resize(static_cast<Eigen::Index>(size()));
  std::vector<Complex> a(d);
  for (std::uint32_t x = 0; x < d; ++x) {
    for (std::uint32_t k = 0; k < d; ++k) a[k] = m(k, k ^ x);
    fwht(a.data(), d);
    for (std::uint32_t z = 0; z < d; ++z) {
      const std::uint32_t mu = by_flip_sign_[x * d + z];
      coords(mu) = times_i_pow(a[z], y_count_[mu]).real();
    }
  }
}

void PauliTable::from_coords(const RVector& coords, double scale, CMatrix& m) const {
  const auto d = static_cast<std::uint32_t>(dim_);
  m.resize(dim_, dim_);
  std::vector<Complex> b(d);
  for (std::uint32_t x = 0; x < d; ++x) {
    for (std::uint32_t z = 0; z < d; ++z) {
      const std::uint32_t mu = by_flip_sign_[x * d + z];
      b[z] = times_i_pow(Complex(coords(mu) * scale, 0.0), y_count_[mu]);
    }
    fwht(b.data(), d);
    for (std::uint32_t k = 0; k < d; ++k) m(k ^ x, k) = b[k];
  }
}

}  // namespace tomobias
