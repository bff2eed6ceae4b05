// Copyright 2026 The qhartley Authors
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

#include "qhartley/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhartley/kernels.hpp"
#include "qhartley/rng.hpp"

namespace qh {

namespace {

void check_size(int n) {
  if (n < 1 || n > StateVector::kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(StateVector::kMaxQubits) +
                                "], got " + std::to_string(n));
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_size(n_qubits);
  amps_.assign(std::uint64_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_size(n_qubits);
  if (amps_.size() != (std::uint64_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count must be 2^n");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dimension()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits_) + " qubits");
  }
}

double StateVector::norm_squared() const { return kernels::active().norm_squared(amps_.data(), amps_.size()); }

bool is_unitary(const Matrix2& m, double tol) {
  // Columns orthonormal.
  const cplx c00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
  const cplx c11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
  const cplx c01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
  return std::abs(c00 - 1.0) <= tol && std::abs(c11 - 1.0) <= tol && std::abs(c01) <= tol;
}

void StateVector::apply_gate(const Matrix2& u, int target, std::span<const Control> controls) {
  if (!is_unitary(u)) throw std::invalid_argument("gate matrix is not unitary");
  apply_matrix(u, target, controls, false);
}

void StateVector::apply_matrix(const Matrix2& m, int target, std::span<const Control> controls,
                               bool zero_uncontrolled) {
  check_qubit(target);
  kernels::PairOp op{m[0], m[1], m[2], m[3]};
  op.stride = bit_of(target);
  for (const Control& c : controls) {
    check_qubit(c.qubit);
    if (c.qubit == target) throw std::invalid_argument("control coincides with target");
    op.ctrl_mask |= bit_of(c.qubit);
    if (c.positive) op.ctrl_value |= bit_of(c.qubit);
  }
  op.zero_uncontrolled = zero_uncontrolled;
  kernels::active().apply_pair(amps_.data(), amps_.size(), op);
}

void StateVector::apply_permutation(std::span<const int> qubits, std::span<const std::uint64_t> perm,
                                    std::span<const Control> controls) {
  const std::size_t k = qubits.size();
  if (k == 0 || perm.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("permutation size must be 2^(number of qubits)");
  }
  std::vector<char> seen(perm.size(), 0);
  for (std::uint64_t v : perm) {
    if (v >= perm.size() || seen[v]) throw std::invalid_argument("permutation is not a bijection");
    seen[v] = 1;
  }
  std::uint64_t ctrl_mask = 0, ctrl_value = 0;
  for (const Control& c : controls) {
    check_qubit(c.qubit);
    if (std::find(qubits.begin(), qubits.end(), c.qubit) != qubits.end()) {
      throw std::invalid_argument("control overlaps permuted qubits");
    }
    ctrl_mask |= bit_of(c.qubit);
    if (c.positive) ctrl_value |= bit_of(c.qubit);
  }
  std::vector<std::uint64_t> bits(k);
  std::uint64_t sub_mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    check_qubit(qubits[j]);
    bits[j] = bit_of(qubits[j]);
    if (sub_mask & bits[j]) throw std::invalid_argument("repeated qubit in permutation");
    sub_mask |= bits[j];
  }
  auto extract = [&](std::uint64_t i) {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < k; ++j) v = (v << 1) | ((i & bits[j]) ? 1u : 0u);
    return v;
  };
  auto deposit = [&](std::uint64_t i, std::uint64_t v) {
    i &= ~sub_mask;
    for (std::size_t j = 0; j < k; ++j) {
      if (v & (std::uint64_t{1} << (k - 1 - j))) i |= bits[j];
    }
    return i;
  };
  std::vector<cplx> out(amps_);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & ctrl_mask) != ctrl_value) continue;
    out[deposit(i, perm[extract(i)])] = amps_[i];
  }
  amps_.swap(out);
}

double StateVector::probability(std::uint64_t basis_index) const {
  if (basis_index >= amps_.size()) throw std::out_of_range("basis index out of range");
  return std::norm(amps_[basis_index]);
}

StateVector::PostSelection StateVector::post_select(int qubit, int outcome) const {
  check_qubit(qubit);
  if (n_qubits_ < 2) throw std::invalid_argument("post-selection needs at least two qubits");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const std::uint64_t bit = bit_of(qubit);
  const std::uint64_t low_mask = bit - 1;
  std::vector<cplx> reduced(amps_.size() / 2);
  double p = 0.0;
  for (std::uint64_t r = 0; r < reduced.size(); ++r) {
    // Re-insert the selected bit into the reduced index.
    const std::uint64_t i = ((r & ~low_mask) << 1) | (outcome ? bit : 0) | (r & low_mask);
    reduced[r] = amps_[i];
    p += std::norm(amps_[i]);
  }
  if (!(p > 1e-20)) throw std::domain_error("post-selected branch has zero probability");
  const double scale = 1.0 / std::sqrt(p);
  for (cplx& a : reduced) a *= scale;
  return {StateVector(n_qubits_ - 1, std::move(reduced)), p};
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dimension() != ket.dimension()) throw std::invalid_argument("dimension mismatch in inner product");
  return kernels::active().dot(bra.amplitudes().data(), ket.amplitudes().data(), bra.dimension());
}

std::string to_bitstring(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b) {
    if (value & (std::uint64_t{1} << (width - 1 - b))) s[static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

std::uint64_t SampleCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [_, c] : counts) t += c;
  return t;
}

std::string SampleCounts::bitstring(std::uint64_t index) const { return to_bitstring(index, width); }

SampleCounts sample_counts(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("cannot sample an unnormalized state");
  SampleCounts out;
  out.width = state.num_qubits();
  if (shots == 0) return out;

  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    cdf[i] = acc;
  }
  std::vector<std::uint64_t> hits(amps.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    // u < acc, so the first cdf entry above u exists and has nonzero mass.
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] != 0) out.counts.emplace(i, hits[i]);
  }
  return out;
}

}  // namespace qh
