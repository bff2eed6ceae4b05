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

#include <optional>
#include <string_view>
#include <vector>

#include "qhartley/circuit.hpp"

// Builders for every circuit family used by the models and samplers. All are
// pure functions returning immutable Circuit values. Registers with an
// ancilla put it on qubit 0 (most significant bit).
namespace qh {

/// n-qubit QFT including the terminal swaps, so its matrix is exactly
/// F[k][j] = 2^{-n/2} exp(i 2 pi k j / 2^n).
Circuit build_qft(int n);
Circuit build_iqft(int n);

/// H on every qubit, then P(2 pi x / 2^l) on qubit l-1 for l = 1..n.
/// Feature slot 0 is x. One shift group per phase gate.
Circuit build_phase_feature_map(int n);

struct HartleyMapOptions {
  /// Appends RZ(2 pi x) on the ancilla; removing it reverts to the plain
  /// cas(2 pi k x / 2^n) kernel, whose states overlap strongly between nodes.
  bool overlap_regularizer = true;
  /// Emits each controlled phase as RZ/CNOT/RZ/CNOT/RZ (CNOT conjugation).
  /// Only changes a global phase; used by the shift-rule derivative.
  bool decompose_controlled_phase = false;
};

/// (n+1)-qubit Hartley feature map. Applied to |0>, the ancilla-0 branch is
/// 2^{-n/2} cas[(2 pi k / 2^n - pi) x] / sqrt(2) on register state |k>.
/// Shift groups: n phase gates, n controlled phases, and (with the
/// regularizer) the ancilla RZ(2 pi x): 2n+1 in total.
Circuit build_hartley_feature_map(int n, HartleyMapOptions options = {});

enum class ReflectionRealization { permutation, gates };

/// (n+1)-qubit block that maps register value v to (2^n - v) mod 2^n when the
/// ancilla (qubit 0) is |1>, and does nothing otherwise. The gate realization
/// is a controlled complement (CNOT ladder) followed by a controlled cyclic
/// increment.
Circuit build_controlled_reflection(int n, ReflectionRealization realization = ReflectionRealization::permutation);

struct QhtOptions {
  ReflectionRealization reflection = ReflectionRealization::permutation;
  /// Only for negative controls; without it the transform is wrong.
  bool include_sqrt_x_dagger = true;
  /// The |1_a> block of the bare circuit squares to -I; a closing S on the
  /// ancilla makes the whole (n+1)-qubit unitary involutory. It is the
  /// identity on the clean-ancilla subspace, so the DHT block is unchanged.
  bool involutory_completion = true;
};

/// (n+1)-qubit quantum Hartley transform: maps |0_a x_j> to |0_a> DHT_n |x_j>.
Circuit build_qht(int n, QhtOptions options = {});

/// Number of HERA depth blocks whose CNOT offset wraps. Block m (1-based)
/// entangles CNOT[l, (l + offset_m) mod n] with offset_m = ((m-1) mod (n-1)) + 1.
int entangler_offset(int n, int block);

/// Hardware-efficient real-amplitude ansatz: RY layer, then `depth` blocks of
/// (CNOT cascade, RY layer). n(depth+1) trainable slots.
Circuit build_hera(int n, int depth);

enum class RotationScheme { ry_rx, rz_ry, rx_rz, rx, ry, rz };

std::string_view scheme_name(RotationScheme s);
std::optional<RotationScheme> parse_scheme(std::string_view name);
/// Rotation kinds in application order. ry_rx means the matrix product RY*RX,
/// so RX acts first.
std::vector<GateKind> scheme_rotations(RotationScheme s);

/// Hardware-efficient ansatz with the HERA entangling layout and the given
/// rotation layer. 2n(depth+1) slots for pair schemes, n(depth+1) otherwise.
Circuit build_hea(int n, int depth, RotationScheme scheme);

/// (2n+2)-qubit correlation block between two Hartley registers laid out as
/// [anc_x, x_1..x_n, anc_y, y_1..y_n]. Three RY layers on the 2n data qubits
/// interleaved with CZ on odd neighbour pairs, CZ on even neighbour pairs,
/// and a CZ layer joining x_l with y_l. 6n slots.
Circuit build_correlation_circuit(int n);

/// Readout network applied after the extended inverse QHT. The register is
/// [transform ancilla, data qubits...]. s = 1: CNOTs from the last qubit onto
/// every data qubit above it. s = 0 and s >= 2: identity.
Circuit build_bitstring_network(int s, int total_qubits);

/// Whether build_bitstring_network(s, .) implements the exact readout fold.
bool bitstring_network_supported(int s);

}  // namespace qh
