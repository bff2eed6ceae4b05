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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qhartley/gates.hpp"
#include "qhartley/statevector.hpp"

namespace qh {

/// Values bound to a circuit's feature slots (x, y, ...) and trainable slots.
struct Bindings {
  std::span<const double> features;
  std::span<const double> params;
};

/// Gate angle as a closed-form expression: offset + scale * source, where the
/// source is nothing, a feature variable, or a trainable parameter.
struct Angle {
  enum class Source : std::uint8_t { constant, feature, trainable };

  Source source = Source::constant;
  int index = 0;
  double scale = 0.0;
  double offset = 0.0;

  static Angle fixed(double value) { return {Source::constant, 0, 0.0, value}; }
  static Angle feature(int variable, double scale, double offset = 0.0) {
    return {Source::feature, variable, scale, offset};
  }
  static Angle trainable(int slot, double scale = 1.0, double offset = 0.0) {
    return {Source::trainable, slot, scale, offset};
  }

  double value(const Bindings& b) const;
  Angle negated() const { return {source, index, -scale, -offset}; }
  bool depends_on_feature(int variable) const { return source == Source::feature && index == variable; }
};

/// Feature-dependent gates that share one generator parameter lambda = rate * x.
/// A placement in the group has angle = shift_weight * lambda + const, so the
/// two-term shift rule can move every member of the group together.
struct ShiftGroup {
  int feature = 0;
  double rate = 0.0;
};

struct GroupShift {
  int group = 0;
  double delta = 0.0;
};

struct Placement {
  GateKind kind = GateKind::H;
  Angle angle;
  int target = 0;
  std::vector<Control> controls;
  // Permutation placements only.
  std::vector<int> perm_qubits;
  std::shared_ptr<const std::vector<std::uint64_t>> perm;
  int shift_group = -1;
  double shift_weight = 0.0;
};

/// Ordered gate placements over a fixed qubit count. Immutable once built and
/// safe to share between threads.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int n_qubits, int n_params = 0, int n_features = 0);

  int num_qubits() const noexcept { return n_qubits_; }
  int num_params() const noexcept { return n_params_; }
  int num_features() const noexcept { return n_features_; }
  const std::vector<Placement>& placements() const noexcept { return placements_; }
  const std::vector<ShiftGroup>& shift_groups() const noexcept { return groups_; }
  bool empty() const noexcept { return placements_.empty(); }

  Circuit& add(GateKind kind, int target, Angle angle = {}, std::vector<Control> controls = {});
  Circuit& h(int q) { return add(GateKind::H, q); }
  Circuit& x(int q) { return add(GateKind::X, q); }
  Circuit& cnot(int control, int target) { return add(GateKind::X, target, {}, {{control, true}}); }
  Circuit& cz(int a, int b) { return add(GateKind::Z, b, {}, {{a, true}}); }
  Circuit& swap(int a, int b);
  Circuit& permutation(std::vector<int> qubits, std::vector<std::uint64_t> perm, std::vector<Control> controls = {});

  int add_shift_group(int feature, double rate);
  /// Adds a gate whose angle is weight * lambda_group + offset.
  Circuit& add_grouped(GateKind kind, int target, int group, double weight, double offset = 0.0,
                       std::vector<Control> controls = {});

  /// Appends `other`, relabelling its qubits through `qubit_map` (identity when
  /// empty), shifting its trainable slots by `param_offset` and relabelling its
  /// feature variables through `feature_map`.
  void append(const Circuit& other, std::span<const int> qubit_map = {}, int param_offset = 0,
              std::span<const int> feature_map = {});

  Circuit adjoint() const;

  void run(StateVector& state, const Bindings& b, std::span<const GroupShift> shifts = {}) const;
  StateVector run_from_zero(const Bindings& b, std::span<const GroupShift> shifts = {}) const;

 private:
  void check_qubit(int q) const;
  void check_angle(const Angle& a) const;

  int n_qubits_ = 0;
  int n_params_ = 0;
  int n_features_ = 0;
  std::vector<Placement> placements_;
  std::vector<ShiftGroup> groups_;
};

/// Applies one placement (no unitarity re-check).
void apply_placement(StateVector& state, const Placement& p, double angle);
void apply_placement_adjoint(StateVector& state, const Placement& p, double angle);

/// Dense matrix of the circuit; column k is the circuit applied to |k>.
/// Limited to 10 qubits.
Eigen::MatrixXcd circuit_to_unitary(const Circuit& c, const Bindings& b);

/// One placement per line: kind, angle expression, target, controls.
std::string to_text(const Circuit& c);

/// State and its first two derivatives with respect to one feature variable,
/// propagated gate by gate from `initial`.
struct FeatureJet {
  StateVector value;
  StateVector first;
  StateVector second;
};
FeatureJet run_feature_jet(const Circuit& c, const Bindings& b, int feature, const StateVector& initial);

/// Reverse-mode sweep: given output = C|initial> and a cotangent vector L,
/// returns g[s] = Re <d output / d theta_s | L> for every trainable slot.
std::vector<double> parameter_vjp(const Circuit& c, const Bindings& b, StateVector output, StateVector cotangent);

/// y += a * x.
void axpy(StateVector& y, cplx a, const StateVector& x);

}  // namespace qh
