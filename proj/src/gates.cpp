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

#include "qhartley/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qh {

namespace {
constexpr cplx kI{0.0, 1.0};
}

bool is_parametric(GateKind kind) {
  return kind == GateKind::P || kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::P: return "P";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::SqrtX: return "SX";
    case GateKind::SqrtXDagger: return "SXDG";
    case GateKind::Permutation: return "PERM";
  }
  return "?";
}

std::optional<GateKind> parse_gate_name(std::string_view name) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Z, GateKind::P, GateKind::RX, GateKind::RY, GateKind::RZ,
                     GateKind::SqrtX, GateKind::SqrtXDagger, GateKind::Permutation}) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

GateKind adjoint_kind(GateKind kind) {
  if (kind == GateKind::SqrtX) return GateKind::SqrtXDagger;
  if (kind == GateKind::SqrtXDagger) return GateKind::SqrtX;
  return kind;
}

Matrix2 gate_matrix(GateKind kind, double angle) {
  const double r = std::numbers::sqrt2 / 2.0;
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::P: return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
    case GateKind::RX: return {c, -kI * s, -kI * s, c};
    case GateKind::RY: return {c, -s, s, c};
    case GateKind::RZ: return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::SqrtX: return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
    case GateKind::SqrtXDagger: return {cplx(0.5, -0.5), cplx(0.5, 0.5), cplx(0.5, 0.5), cplx(0.5, -0.5)};
    case GateKind::Permutation: break;
  }
  throw std::invalid_argument("no 2x2 matrix for gate kind");
}

Matrix2 gate_derivative(GateKind kind, double angle, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const Matrix2 g = gate_matrix(kind, angle);
  switch (kind) {
    case GateKind::P:
      return order == 1 ? Matrix2{0.0, 0.0, 0.0, kI * g[3]} : Matrix2{0.0, 0.0, 0.0, -g[3]};
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: {
      if (order == 2) return {-0.25 * g[0], -0.25 * g[1], -0.25 * g[2], -0.25 * g[3]};
      // d/dphi exp(-i phi G/2) = (-i G/2) exp(-i phi G/2).
      const Matrix2 gen = kind == GateKind::RX   ? gate_matrix(GateKind::X)
                          : kind == GateKind::RY ? Matrix2{0.0, -kI, kI, 0.0}
                                                 : gate_matrix(GateKind::Z);
      Matrix2 d = matmul(gen, g);
      for (cplx& v : d) v *= -0.5 * kI;
      return d;
    }
    default:
      break;
  }
  throw std::invalid_argument("gate kind has no angle");
}

Matrix2 matmul(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

}  // namespace qh
