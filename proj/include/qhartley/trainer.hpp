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
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qhartley/model.hpp"
#include "qhartley/targets.hpp"

namespace qh {

enum class GridKind { full, integers };

struct TrainConfig {
  int epochs = 5000;
  double learning_rate = 0.01;
  std::uint64_t seed = 1;
  int loss_report_stride = 1;
  // Angles start uniform over a full period; a narrow start near the
  // uniform state stalls on plateaus for skewed targets.
  double init_scale = std::numbers::pi;
  double early_stop_loss = 1e-8;
  bool train_beta = true;
  /// Overrides the default alpha initialization when set.
  std::optional<double> alpha_init;
  bool gradient_gate = true;
  /// full: integers plus half-integers; integers: the 2^n integer nodes only.
  GridKind grid = GridKind::full;
  /// Bivariate only: keep the correlation angles at zero (factorized model).
  bool freeze_correlation = false;
};

struct TrainReport {
  std::vector<std::pair<int, double>> trajectory;  // (epoch, loss before that epoch's step)
  QuantumModel model;
  double final_loss = 0.0;
  int epochs_run = 0;
  bool early_stopped = false;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// Integers 0..2^n-1 interleaved with the half-integers: {0, 0.5, ..., 2^n - 0.5}.
std::vector<double> make_training_grid(int n);
std::vector<double> make_training_grid(int n, GridKind kind);
/// Training grid for a DE target; de2 drops x = 0 where its coefficients blow up.
std::vector<double> make_de_grid(TargetKind kind, int n);

/// (1/M) sum_m [p(x_m) - target(x_m)]^2, evaluated point by point.
double mse_loss(const QuantumModel& model, const TargetSpec& target, std::span<const double> grid);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;
};

/// In-place Adam update with bias correction. Initializes the moments on the
/// first call; throws std::invalid_argument on shape mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr);

/// Random angles in [-init_scale, init_scale], alpha = `alpha`, beta = 0.
void initialize_model(QuantumModel& model, const TrainConfig& config, double alpha);

/// Compares shift-rule angle gradients with central differences at `coords`
/// and the batched engine against the pointwise model. Throws NumericalError
/// if any entry differs by more than `tol`.
void gradient_gate(const QuantumModel& model, std::span<const double> coords, double tol = 1e-6);

TrainReport train_distribution(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config);
TrainReport train_de(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config);
TrainReport train_bivariate(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config);

/// DE loss: mean squared residual on the grid plus squared boundary value and
/// boundary slope mismatches, equally weighted. Pointwise reference version
/// using the model's shift-rule derivatives.
double de_loss(const QuantumModel& model, const TargetSpec& target, std::span<const double> grid);

}  // namespace qh
