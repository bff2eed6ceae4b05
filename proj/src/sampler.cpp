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

#include "qhartley/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace qh {

namespace {

std::vector<int> range(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

void require_hartley(const QuantumModel& m) {
  if (m.feature_kind() != FeatureKind::hartley) {
    throw std::invalid_argument(
        fmt::format("sampling needs a univariate hartley model, got {}", feature_kind_name(m.feature_kind())));
  }
}

int readout_width(int n, int S) { return n + 1 + S; }

}  // namespace

std::string_view fine_variant_name(FineVariant v) {
  return v == FineVariant::bitstring_network ? "bitstring-network" : "qft-chain";
}

std::optional<FineVariant> parse_fine_variant(std::string_view s) {
  if (s == "bitstring-network") return FineVariant::bitstring_network;
  if (s == "qft-chain") return FineVariant::qft_chain;
  return std::nullopt;
}

Circuit build_sampling_circuit(const QuantumModel& model) {
  require_hartley(model);
  const int n = model.n();
  Circuit c(n + 1, model.num_angles());
  c.append(model.ansatz().adjoint(), range(1, n));
  c.append(build_qht(n).adjoint());
  return c;
}

Circuit build_fine_sampling_circuit(const QuantumModel& model, int S, FineVariant variant) {
  require_hartley(model);
  if (S < 1) throw std::invalid_argument("fine sampling needs S >= 1");
  const int n = model.n();
  const int total = readout_width(n, S);
  if (total > StateVector::kMaxQubits) throw std::invalid_argument("fine-sampling register exceeds the qubit limit");
  Circuit c(total, model.num_angles());
  c.append(model.ansatz().adjoint(), range(S + 1, n));
  if (variant == FineVariant::bitstring_network) {
    if (!bitstring_network_supported(S)) {
      throw std::invalid_argument(fmt::format("no bitstring network for S = {}; use the qft-chain variant", S));
    }
    c.append(build_qht(n + S).adjoint());
    c.append(build_bitstring_network(S, total));
  } else {
    const std::vector<int> model_qubits = range(S, n + 1);
    c.append(build_qht(n).adjoint(), model_qubits);
    c.append(build_qft(n + 1), model_qubits);
    c.append(build_iqft(total));
  }
  return c;
}

Circuit build_bivariate_sampling_circuit(const QuantumModel& model, int S) {
  if (model.feature_kind() != FeatureKind::bivariate_hartley) {
    throw std::invalid_argument("bivariate sampling needs a bivariate-hartley model");
  }
  if (!bitstring_network_supported(S)) {
    throw std::invalid_argument(fmt::format("bivariate sampling supports S = 0 or 1, got {}", S));
  }
  const int n = model.n();
  const int R = readout_width(n, S);
  if (2 * R > StateVector::kMaxQubits) throw std::invalid_argument("bivariate register exceeds the qubit limit");
  Circuit c(2 * R, model.num_angles());
  // Training layout [a_x, x_1..x_n, a_y, y_1..y_n] -> [a_x, pad_x, x, a_y, pad_y, y].
  std::vector<int> map{0};
  for (int l = 0; l < n; ++l) map.push_back(S + 1 + l);
  map.push_back(R);
  for (int l = 0; l < n; ++l) map.push_back(R + S + 1 + l);
  c.append(model.trainable_circuit().adjoint(), map);
  Circuit reg(R);
  if (S == 0) {
    reg.append(build_qht(n).adjoint());
  } else {
    reg.append(build_qht(n + S).adjoint());
    reg.append(build_bitstring_network(S, R));
  }
  c.append(reg, range(0, R));
  c.append(reg, range(R, R));
  return c;
}

std::optional<double> decode_bitstring(std::uint64_t value, int n, int S, FineVariant variant) {
  const int width = readout_width(n, S);
  if (width >= 64 || value >> width != 0) throw std::invalid_argument("readout value wider than n+1+S bits");
  const double scale = std::ldexp(1.0, -S);
  if (S == 0 || variant == FineVariant::bitstring_network) {
    const std::uint64_t ancilla = std::uint64_t{1} << (width - 1);
    if (value & ancilla) return std::nullopt;
    return static_cast<double>(value) * scale;
  }
  const double x = static_cast<double>(value) * scale;
  if (x >= std::ldexp(1.0, n)) return std::nullopt;
  return x;
}

std::optional<double> decode_bitstring(std::string_view bits, int n, int S, FineVariant variant) {
  if (static_cast<int>(bits.size()) != readout_width(n, S)) {
    throw std::invalid_argument(fmt::format("readout string has {} bits, expected {}", bits.size(), n + 1 + S));
  }
  std::uint64_t v = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw std::invalid_argument("readout string must contain only 0 and 1");
    v = (v << 1) | static_cast<std::uint64_t>(b == '1');
  }
  return decode_bitstring(v, n, S, variant);
}

SampleBatch sample_model(const QuantumModel& model, const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                         int S, FineVariant variant) {
  const StateVector state = circuit.run_from_zero({{}, model.theta});
  SampleBatch b;
  b.counts = sample_counts(state, shots, seed);
  b.shots = shots;
  b.seed = seed;
  b.n = model.n();
  b.S = S;
  b.variant = variant;
  return b;
}

Histogram decode_histogram(const SampleBatch& batch) {
  if (batch.shots == 0) throw std::invalid_argument("empty batch");
  const std::uint64_t bins = std::uint64_t{1} << (batch.n + batch.S);
  Histogram h;
  h.coords.resize(bins);
  h.probs.assign(bins, 0.0);
  const double scale = std::ldexp(1.0, -batch.S);
  for (std::uint64_t i = 0; i < bins; ++i) h.coords[i] = static_cast<double>(i) * scale;
  const double total = static_cast<double>(batch.counts.total());
  for (const auto& [value, count] : batch.counts.counts) {
    const auto x = decode_bitstring(value, batch.n, batch.S, batch.variant);
    if (!x) {
      h.out_of_support += static_cast<double>(count) / total;
      continue;
    }
    h.probs[static_cast<std::size_t>(std::llround(*x / scale))] += static_cast<double>(count) / total;
  }
  return h;
}

std::vector<double> histogram(const SampleBatch& batch, std::span<const double> bins) {
  const Histogram h = decode_histogram(batch);
  std::vector<double> out(bins.size(), 0.0);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double idx = bins[i] * std::ldexp(1.0, batch.S);
    if (idx < 0.0 || idx != std::floor(idx) || idx >= static_cast<double>(h.probs.size())) {
      throw std::invalid_argument(fmt::format("bin {} is not on the readout grid", bins[i]));
    }
    out[i] = h.probs[static_cast<std::size_t>(idx)];
  }
  return out;
}

double tvd(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("histograms have different binning");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

std::vector<double> normalized(std::span<const double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0)) throw std::domain_error("cannot normalize a sequence with non-positive sum");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= total;
  return out;
}

Histogram2D postprocess_bivariate(const SampleBatch& batch) {
  if (batch.counts.counts.empty()) throw std::invalid_argument("empty batch");
  const int width = batch.counts.width;
  const int R = readout_width(batch.n, batch.S);
  if (width != 2 * R) {
    throw std::invalid_argument(fmt::format("ambiguous split: {} readout bits for two {}-bit registers", width, R));
  }
  std::uint64_t seen = 0;
  for (const auto& [value, count] : batch.counts.counts) seen |= value;
  Histogram2D h;
  // Local position p (0 = ancilla) is dropped when it is zero in both halves.
  for (int p = 0; p < R; ++p) {
    const std::uint64_t bx = std::uint64_t{1} << (width - 1 - p);
    const std::uint64_t by = std::uint64_t{1} << (R - 1 - p);
    if (!(seen & bx) && !(seen & by)) {
      h.dropped_positions.push_back(p);
      h.dropped_positions.push_back(R + p);
    }
  }
  std::sort(h.dropped_positions.begin(), h.dropped_positions.end());

  const std::uint64_t side = std::uint64_t{1} << (batch.n + batch.S);
  const double scale = std::ldexp(1.0, -batch.S);
  for (std::uint64_t i = 0; i < side; ++i) {
    h.xs.push_back(static_cast<double>(i) * scale);
    h.ys.push_back(static_cast<double>(i) * scale);
  }
  h.probs.assign(side * side, 0.0);
  const std::uint64_t mask = (std::uint64_t{1} << R) - 1;
  const double total = static_cast<double>(batch.counts.total());
  for (const auto& [value, count] : batch.counts.counts) {
    // Dropped bits are zero, so keeping the original weights leaves values intact.
    const auto x = decode_bitstring(value >> R, batch.n, batch.S, FineVariant::bitstring_network);
    const auto y = decode_bitstring(value & mask, batch.n, batch.S, FineVariant::bitstring_network);
    const double w = static_cast<double>(count) / total;
    if (!x || !y) {
      h.out_of_support += w;
      continue;
    }
    const auto ix = static_cast<std::uint64_t>(std::llround(*x / scale));
    const auto iy = static_cast<std::uint64_t>(std::llround(*y / scale));
    h.probs[ix * side + iy] += w;
  }
  return h;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson needs two equal sequences");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw std::domain_error("pearson of a constant sequence");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace qh
