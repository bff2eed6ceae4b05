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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qhartley/model.hpp"
#include "qhartley/statevector.hpp"

namespace qh {

enum class FineVariant { bitstring_network, qft_chain };

std::string_view fine_variant_name(FineVariant v);
std::optional<FineVariant> parse_fine_variant(std::string_view s);

/// (n+1)-qubit circuit QHT^dagger (I x V^dagger): outcome |0_a j> has
/// probability 2 <O>(j) for a Hartley model.
Circuit build_sampling_circuit(const QuantumModel& model);

/// (n+1+S)-qubit fine-sampling circuit.
///
/// bitstring_network: qubit 0 is the transform ancilla, qubits 1..S start in
/// |0> and extend the register, qubits S+1..S+n carry V^dagger; then the
/// (n+S)-register inverse QHT and the readout network. Supports S = 1 only.
///
/// qft_chain: qubits 0..S-1 are the extension, S the ancilla, S+1..S+n the
/// register; V^dagger, inverse QHT and QFT on the (n+1) model qubits, then an
/// (n+1+S)-qubit inverse QFT over everything.
Circuit build_fine_sampling_circuit(const QuantumModel& model, int S, FineVariant variant);

/// Two copies of the (n+1+S)-qubit layout, x register first. The trained
/// ansatz and correlation blocks are undone first, then each register gets
/// its own inverse QHT and readout network (S = 0 or 1).
Circuit build_bivariate_sampling_circuit(const QuantumModel& model, int S);

/// Coordinate of a readout value of width n+1+S, or nullopt when the shot
/// lands outside the model's support (set transform ancilla for the plain and
/// bitstring-network layouts; x >= 2^n for the QFT chain).
std::optional<double> decode_bitstring(std::uint64_t value, int n, int S, FineVariant variant);
std::optional<double> decode_bitstring(std::string_view bits, int n, int S, FineVariant variant);

struct SampleBatch {
  SampleCounts counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int S = 0;
  FineVariant variant = FineVariant::bitstring_network;
};

/// Runs the circuit from |0> (angles bound from the model) and draws shots.
SampleBatch sample_model(const QuantumModel& model, const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                         int S, FineVariant variant);

/// Normalized histogram keyed by decoded coordinate.
struct Histogram {
  std::vector<double> coords;
  std::vector<double> probs;
  double out_of_support = 0.0;  // fraction of shots not decoded to a coordinate
};

Histogram decode_histogram(const SampleBatch& batch);
/// Normalized counts over explicit bin centres (exact key lookup; missing bins
/// get 0). Throws std::invalid_argument on an empty batch.
std::vector<double> histogram(const SampleBatch& batch, std::span<const double> bins);
/// 1/2 sum |a - b|; throws std::invalid_argument on length mismatch.
double tvd(std::span<const double> a, std::span<const double> b);
/// Rescales to unit sum; throws std::domain_error for a non-positive total.
std::vector<double> normalized(std::span<const double> v);

struct Histogram2D {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> probs;  // row-major over (xs, ys)
  std::vector<int> dropped_positions;
  double out_of_support = 0.0;
};

/// Drops bit positions that read 0 in every shot in both register halves,
/// decodes each half with its original bit weights, and bins into a
/// normalized grid over the decoded coordinates. Throws std::invalid_argument
/// for an empty batch or a readout width that does not split into two equal
/// registers.
Histogram2D postprocess_bivariate(const SampleBatch& batch);

/// Pearson correlation of two equally sized sequences.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace qh
