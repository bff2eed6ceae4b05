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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qhartley/types.hpp"

namespace qh {

/// Dense amplitude vector over n qubits. Qubit 0 is the most significant bit
/// of a basis index, so |q0 q1 ... q_{n-1}> has index sum_q bit_q * 2^(n-1-q).
class StateVector {
 public:
  static constexpr int kMaxQubits = 26;

  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int num_qubits() const noexcept { return n_qubits_; }
  std::uint64_t dimension() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::uint64_t i) const { return amps_[i]; }
  cplx& operator[](std::uint64_t i) { return amps_[i]; }

  double norm_squared() const;

  /// Controlled-unitary update. Rejects matrices that are not unitary to 1e-10.
  void apply_gate(const Matrix2& u, int target, std::span<const Control> controls = {});

  /// Same update without the unitarity check. With `zero_uncontrolled` the
  /// amplitudes outside the controlled subspace are cleared, which is how the
  /// derivative of a controlled gate acts.
  void apply_matrix(const Matrix2& m, int target, std::span<const Control> controls = {},
                    bool zero_uncontrolled = false);

  /// Reorders amplitudes of the basis states that satisfy the controls. The
  /// sub-index over `qubits` (listed most significant first) is mapped v -> perm[v].
  void apply_permutation(std::span<const int> qubits, std::span<const std::uint64_t> perm,
                         std::span<const Control> controls = {});

  /// <k|rho|k> = |amp_k|^2.
  double probability(std::uint64_t basis_index) const;

  struct PostSelection;
  /// Conditions on `qubit` reading `outcome`; the qubit is removed from the
  /// returned state. Throws std::domain_error for a zero-probability branch.
  PostSelection post_select(int qubit, int outcome) const;

 private:
  void check_qubit(int q) const;
  std::uint64_t bit_of(int q) const { return std::uint64_t{1} << (n_qubits_ - 1 - q); }

  int n_qubits_;
  std::vector<cplx> amps_;
};

struct StateVector::PostSelection {
  StateVector state;
  double probability;
};

inline StateVector zero_state(int n) { return StateVector(n); }

/// <bra|ket>.
cplx inner_product(const StateVector& bra, const StateVector& ket);

bool is_unitary(const Matrix2& m, double tol = 1e-10);

/// Shot outcomes keyed by basis index; bitstrings are `width` bits, MSB first.
struct SampleCounts {
  int width = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t total() const;
  std::string bitstring(std::uint64_t index) const;
};

std::string to_bitstring(std::uint64_t value, int width);

/// Multinomial draw of `shots` outcomes from |amp|^2 with an inverse-CDF walk
/// over Rng(seed). Throws std::invalid_argument unless the state is
/// normalized to 1e-9.
SampleCounts sample_counts(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

}  // namespace qh
