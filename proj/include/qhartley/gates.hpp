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

#include "qhartley/types.hpp"

namespace qh {

/// Gate kinds appearing in placements. CNOT and CZ are X and Z carrying one
/// control; multi-controlled X is X with several controls.
enum class GateKind {
  H,
  X,
  Z,
  P,   // diag(1, e^{i phi})
  RX,  // exp(-i phi X / 2)
  RY,  // exp(-i phi Y / 2)
  RZ,  // diag(e^{-i phi/2}, e^{i phi/2})
  SqrtX,
  SqrtXDagger,
  Permutation,
};

bool is_parametric(GateKind kind);

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_name(std::string_view name);

/// Kind of the adjoint gate; parametric gates keep their kind and negate the angle.
GateKind adjoint_kind(GateKind kind);

Matrix2 gate_matrix(GateKind kind, double angle = 0.0);

/// d^order/dangle^order of a parametric gate matrix (order 1 or 2).
Matrix2 gate_derivative(GateKind kind, double angle, int order);

Matrix2 matmul(const Matrix2& a, const Matrix2& b);

}  // namespace qh
