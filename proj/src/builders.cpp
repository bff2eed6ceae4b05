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

#include "qhartley/builders.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qh {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + " must be at least 1");
}

std::vector<int> range(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

}  // namespace

Circuit build_qft(int n) {
  require_positive(n, "QFT width");
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    c.h(q);
    for (int m = q + 1; m < n; ++m) {
      c.add(GateKind::P, q, Angle::fixed(2.0 * kPi / std::ldexp(1.0, m - q + 1)), {{m, true}});
    }
  }
  for (int q = 0; q < n / 2; ++q) c.swap(q, n - 1 - q);
  return c;
}

Circuit build_iqft(int n) { return build_qft(n).adjoint(); }

Circuit build_phase_feature_map(int n) {
  require_positive(n, "feature map width");
  Circuit c(n, 0, 1);
  for (int q = 0; q < n; ++q) c.h(q);
  for (int l = 1; l <= n; ++l) {
    const int g = c.add_shift_group(0, 2.0 * kPi / std::ldexp(1.0, l));
    c.add_grouped(GateKind::P, l - 1, g, 1.0);
  }
  return c;
}

Circuit build_hartley_feature_map(int n, HartleyMapOptions options) {
  require_positive(n, "feature map width");
  Circuit c(n + 1, 0, 1);
  c.h(0);
  for (int l = 1; l <= n; ++l) c.h(l);
  for (int l = 1; l <= n; ++l) {
    const int g = c.add_shift_group(0, 2.0 * kPi / std::ldexp(1.0, l));
    c.add_grouped(GateKind::P, l, g, 1.0);
  }
  // exp(-i x) = exp(i x) exp(-2 i x) on the ancilla-1 branch.
  for (int l = 1; l <= n; ++l) {
    const int g = c.add_shift_group(0, -4.0 * kPi / std::ldexp(1.0, l));
    if (!options.decompose_controlled_phase) {
      c.add_grouped(GateKind::P, l, g, 1.0, 0.0, {{0, true}});
    } else {
      // CP(lambda) = e^{i lambda/4} RZ_c(lambda/2) RZ_t(lambda/2) CNOT RZ_t(-lambda/2) CNOT
      c.cnot(0, l);
      c.add_grouped(GateKind::RZ, l, g, -0.5);
      c.cnot(0, l);
      c.add_grouped(GateKind::RZ, l, g, 0.5);
      c.add_grouped(GateKind::RZ, 0, g, 0.5);
    }
  }
  c.add(GateKind::RZ, 0, Angle::fixed(kPi / 2.0));
  if (options.overlap_regularizer) {
    const int g = c.add_shift_group(0, 2.0 * kPi);
    c.add_grouped(GateKind::RZ, 0, g, 1.0);
  }
  c.h(0);
  return c;
}

Circuit build_controlled_reflection(int n, ReflectionRealization realization) {
  require_positive(n, "register width");
  Circuit c(n + 1);
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (realization == ReflectionRealization::permutation) {
    std::vector<std::uint64_t> perm(dim);
    for (std::uint64_t v = 0; v < dim; ++v) perm[v] = (dim - v) % dim;
    c.permutation(range(1, n), std::move(perm), {{0, true}});
    return c;
  }
  // -v = ~v + 1 (mod 2^n): complement, then cyclic increment.
  for (int q = 1; q <= n; ++q) c.cnot(0, q);
  for (int q = 1; q <= n; ++q) {
    std::vector<Control> controls{{0, true}};
    for (int lower = q + 1; lower <= n; ++lower) controls.push_back({lower, true});
    c.add(GateKind::X, q, {}, std::move(controls));
  }
  return c;
}

Circuit build_qht(int n, QhtOptions options) {
  require_positive(n, "QHT width");
  Circuit c(n + 1);
  const Circuit reflection = build_controlled_reflection(n, options.reflection);
  c.h(0);
  const std::vector<int> reg = range(1, n);
  c.append(build_qft(n), reg);
  c.append(reflection);
  if (options.include_sqrt_x_dagger) c.add(GateKind::SqrtXDagger, 0);
  c.append(reflection.adjoint());
  c.h(0);
  if (options.involutory_completion) c.add(GateKind::P, 0, Angle::fixed(kPi / 2.0));
  return c;
}

int entangler_offset(int n, int block) {
  if (n < 2) return 0;
  return ((block - 1) % (n - 1)) + 1;
}

namespace {

void add_entangler(Circuit& c, int n, int block) {
  if (n < 2) return;
  const int off = entangler_offset(n, block);
  for (int l = 0; l < n; ++l) c.cnot(l, (l + off) % n);
}

void check_depth(int depth) {
  if (depth < 0) throw std::invalid_argument("ansatz depth must be non-negative");
}

}  // namespace

Circuit build_hera(int n, int depth) {
  require_positive(n, "ansatz width");
  check_depth(depth);
  Circuit c(n, n * (depth + 1));
  for (int q = 0; q < n; ++q) c.add(GateKind::RY, q, Angle::trainable(q));
  for (int m = 1; m <= depth; ++m) {
    add_entangler(c, n, m);
    for (int q = 0; q < n; ++q) c.add(GateKind::RY, q, Angle::trainable(n * m + q));
  }
  return c;
}

std::string_view scheme_name(RotationScheme s) {
  switch (s) {
    case RotationScheme::ry_rx: return "ryrx";
    case RotationScheme::rz_ry: return "rzry";
    case RotationScheme::rx_rz: return "rxrz";
    case RotationScheme::rx: return "rx";
    case RotationScheme::ry: return "ry";
    case RotationScheme::rz: return "rz";
  }
  return "?";
}

std::optional<RotationScheme> parse_scheme(std::string_view name) {
  for (RotationScheme s : {RotationScheme::ry_rx, RotationScheme::rz_ry, RotationScheme::rx_rz, RotationScheme::rx,
                           RotationScheme::ry, RotationScheme::rz}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<GateKind> scheme_rotations(RotationScheme s) {
  switch (s) {
    case RotationScheme::ry_rx: return {GateKind::RX, GateKind::RY};
    case RotationScheme::rz_ry: return {GateKind::RY, GateKind::RZ};
    case RotationScheme::rx_rz: return {GateKind::RZ, GateKind::RX};
    case RotationScheme::rx: return {GateKind::RX};
    case RotationScheme::ry: return {GateKind::RY};
    case RotationScheme::rz: return {GateKind::RZ};
  }
  return {};
}

Circuit build_hea(int n, int depth, RotationScheme scheme) {
  require_positive(n, "ansatz width");
  check_depth(depth);
  const std::vector<GateKind> rot = scheme_rotations(scheme);
  const int per_qubit = static_cast<int>(rot.size());
  Circuit c(n, per_qubit * n * (depth + 1));
  auto layer = [&](int m) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < per_qubit; ++r) {
        c.add(rot[static_cast<std::size_t>(r)], q, Angle::trainable(per_qubit * (n * m + q) + r));
      }
    }
  };
  layer(0);
  for (int m = 1; m <= depth; ++m) {
    add_entangler(c, n, m);
    layer(m);
  }
  return c;
}

Circuit build_correlation_circuit(int n) {
  require_positive(n, "register width");
  Circuit c(2 * n + 2, 6 * n);
  std::vector<int> data;
  for (int l = 1; l <= n; ++l) data.push_back(l);
  for (int l = 1; l <= n; ++l) data.push_back(n + 1 + l);
  auto ry_layer = [&](int layer) {
    for (int i = 0; i < 2 * n; ++i) {
      c.add(GateKind::RY, data[static_cast<std::size_t>(i)], Angle::trainable(2 * n * layer + i));
    }
  };
  // Neighbour pairs inside each register; first = 0 gives the odd pairs
  // (1,2),(3,4),... and first = 1 the even pairs (2,3),(4,5),...
  auto cz_pairs = [&](int first) {
    for (int reg = 0; reg < 2; ++reg) {
      const int base = reg * (n + 1) + 1;
      for (int l = first; l + 1 < n; l += 2) c.cz(base + l, base + l + 1);
    }
  };
  ry_layer(0);
  cz_pairs(0);
  ry_layer(1);
  cz_pairs(1);
  ry_layer(2);
  for (int l = 1; l <= n; ++l) c.cz(l, n + 1 + l);
  return c;
}

bool bitstring_network_supported(int s) { return s == 0 || s == 1; }

Circuit build_bitstring_network(int s, int total_qubits) {
  if (s < 0) throw std::invalid_argument("extension size must be non-negative");
  if (total_qubits < 2) throw std::invalid_argument("bitstring network needs an ancilla and data qubits");
  Circuit c(total_qubits);
  if (s == 1) {
    const int lsb = total_qubits - 1;
    for (int q = 1; q < lsb; ++q) c.cnot(lsb, q);
  }
  return c;
}

}  // namespace qh
