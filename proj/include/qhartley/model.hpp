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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qhartley/builders.hpp"
#include "qhartley/circuit.hpp"

namespace qh {

enum class FeatureKind { hartley, fourier, bivariate_hartley };
enum class AnsatzKind { hera, hea };
enum class DiffMethod { shift_rule, central_difference };

std::string_view feature_kind_name(FeatureKind k);
std::optional<FeatureKind> parse_feature_kind(std::string_view s);
std::string_view ansatz_kind_name(AnsatzKind k);
std::optional<AnsatzKind> parse_ansatz_kind(std::string_view s);
std::string_view diff_method_name(DiffMethod m);
std::optional<DiffMethod> parse_diff_method(std::string_view s);

struct ModelSpec {
  FeatureKind feature = FeatureKind::hartley;
  int n = 1;
  AnsatzKind ansatz = AnsatzKind::hera;
  int depth = 1;
  RotationScheme scheme = RotationScheme::ry;  // HEA only
  bool overlap_regularizer = true;             // Hartley maps only
};

struct ThetaGradient {
  std::vector<double> theta;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Derivative value together with the number of circuit executions spent.
struct CountedDerivative {
  double value = 0.0;
  int evaluations = 0;
};

/// p(x) = alpha <O> + beta with O the projector onto the all-zeros state of
/// every qubit (ancillas included). The state is never renormalized, so the
/// Hartley branch weight (1 - sin(2 pi x)/2^n)/2 is part of <O>.
///
/// Trainable slots are laid out as [ansatz] for univariate models and
/// [x ansatz, y ansatz, correlation] for bivariate ones.
class QuantumModel {
 public:
  explicit QuantumModel(const ModelSpec& spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  FeatureKind feature_kind() const noexcept { return spec_.feature; }
  int n() const noexcept { return spec_.n; }
  int num_features() const noexcept { return spec_.feature == FeatureKind::bivariate_hartley ? 2 : 1; }
  int num_qubits() const noexcept { return feature_.num_qubits(); }
  /// Trainable angles per register ansatz.
  int ansatz_slots() const noexcept { return ansatz_slots_; }
  int correlation_slots() const noexcept { return correlation_slots_; }
  int num_angles() const noexcept { return trainable_.num_params(); }
  /// Largest admissible coordinate; the domain is [0, domain_max()].
  double domain_max() const;

  /// Feature-map block over the full width (no trainable slots).
  const Circuit& feature_circuit() const noexcept { return feature_; }
  /// Correlation (if any) followed by the per-register ansatz, full width.
  const Circuit& trainable_circuit() const noexcept { return trainable_; }
  /// Register-width ansatz on its own (slots 0..ansatz_slots-1).
  const Circuit& ansatz() const noexcept { return ansatz_; }
  const std::optional<Circuit>& correlation() const noexcept { return correlation_; }

  std::vector<double> theta;
  double alpha = 1.0;
  double beta = 0.0;

  /// Throws std::domain_error outside the domain.
  double evaluate(double x) const;
  double evaluate(double x, double y) const;
  double expectation(std::span<const double> coords) const;
  /// No domain guard; used for periodicity checks and difference stencils.
  double evaluate_unchecked(std::span<const double> coords) const;
  double expectation_unchecked(std::span<const double> coords) const;

  /// Pre-measurement state for the given coordinates.
  StateVector state(std::span<const double> coords) const;

  /// d p / d coords[feature].
  double grad_x(std::span<const double> coords, DiffMethod method, int feature = 0) const;
  CountedDerivative grad_x_counted(std::span<const double> coords, DiffMethod method, int feature = 0) const;
  double second_derivative_x(std::span<const double> coords, DiffMethod method, int feature = 0) const;
  double grad_x(double x, DiffMethod method = DiffMethod::shift_rule) const;
  double second_derivative_x(double x, DiffMethod method = DiffMethod::shift_rule) const;

  /// Shift rule on every trainable slot; alpha and beta derivatives are <O> and 1.
  ThetaGradient grad_theta(std::span<const double> coords, DiffMethod method = DiffMethod::shift_rule) const;

  /// Feature-dependent shift groups in the decomposed circuit for `feature`.
  int shift_groups_for(int feature) const;

  nlohmann::json to_json() const;
  static QuantumModel from_json(const nlohmann::json& j);

  static constexpr double kGradStep = 1e-4;
  static constexpr double kSecondStep = 1e-3;
  static constexpr std::string_view kFormat = "qhartley-model/1";

 private:
  void check_coords(std::span<const double> coords, bool guard) const;
  double expectation_of(const Circuit& full, std::span<const double> coords, std::span<const GroupShift> shifts,
                        std::span<const double> params) const;

  ModelSpec spec_;
  int ansatz_slots_ = 0;
  int correlation_slots_ = 0;
  Circuit ansatz_;
  std::optional<Circuit> correlation_;
  Circuit feature_;
  Circuit trainable_;
  Circuit full_;     // feature_ + trainable_
  Circuit shifted_;  // same with controlled phases decomposed for the shift rule
};

/// Builds the register ansatz described by `spec`.
Circuit build_ansatz(const ModelSpec& spec);

}  // namespace qh
