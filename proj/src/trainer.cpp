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

#include "qhartley/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "qhartley/engine.hpp"
#include "qhartley/rng.hpp"

namespace qh {

std::vector<double> make_training_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs n >= 1");
  const std::size_t points = std::size_t{2} << n;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = 0.5 * static_cast<double>(i);
  return grid;
}

std::vector<double> make_training_grid(int n, GridKind kind) {
  std::vector<double> grid = make_training_grid(n);
  if (kind == GridKind::integers) {
    std::erase_if(grid, [](double x) { return x != std::floor(x); });
  }
  return grid;
}

std::vector<double> make_de_grid(TargetKind kind, int n) {
  std::vector<double> grid = make_training_grid(n);
  if (kind == TargetKind::de2) grid.erase(grid.begin());
  return grid;
}

double mse_loss(const QuantumModel& model, const TargetSpec& target, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  double sum = 0.0;
  for (double x : grid) {
    const double d = model.evaluate(x) - target_value(target, x);
    sum += d * d;
  }
  return sum / static_cast<double>(grid.size());
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr) {
  if (params.size() != grads.size()) throw std::invalid_argument("gradient size does not match parameters");
  if (state.step == 0) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  } else if (state.m.size() != params.size()) {
    throw std::invalid_argument("optimizer state size does not match parameters");
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(AdamState::kBeta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(AdamState::kBeta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = AdamState::kBeta1 * state.m[i] + (1.0 - AdamState::kBeta1) * grads[i];
    state.v[i] = AdamState::kBeta2 * state.v[i] + (1.0 - AdamState::kBeta2) * grads[i] * grads[i];
    params[i] -= lr * (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + AdamState::kEpsilon);
  }
}

void initialize_model(QuantumModel& model, const TrainConfig& config, double alpha) {
  Rng rng(config.seed);
  for (double& t : model.theta) t = rng.uniform(-config.init_scale, config.init_scale);
  model.alpha = alpha;
  model.beta = 0.0;
}

void gradient_gate(const QuantumModel& model, std::span<const double> coords, double tol) {
  const ThetaGradient shift = model.grad_theta(coords, DiffMethod::shift_rule);
  const ThetaGradient central = model.grad_theta(coords, DiffMethod::central_difference);
  double worst = 0.0;
  for (std::size_t i = 0; i < shift.theta.size(); ++i) {
    worst = std::max(worst, std::abs(shift.theta[i] - central.theta[i]));
  }
  if (!(worst < tol)) {
    throw NumericalError(fmt::format("gradient check failed: shift rule vs central difference differ by {:.3e}", worst));
  }

  // The trainer uses the batched engine; pin it to the pointwise gradient.
  ThetaGradient batched;
  const std::vector<double> w{1.0};
  if (model.num_features() == 1) {
    batched = GridEngine(model, {coords[0]}).gradient(model, w);
  } else {
    batched = GridEngine2D(model, {coords[0]}, {coords[1]}).gradient(model, w);
  }
  worst = std::abs(batched.alpha - shift.alpha);
  for (std::size_t i = 0; i < shift.theta.size(); ++i) {
    worst = std::max(worst, std::abs(shift.theta[i] - batched.theta[i]));
  }
  if (!(worst < tol)) {
    throw NumericalError(fmt::format("gradient check failed: batched vs pointwise differ by {:.3e}", worst));
  }
}

namespace {

struct LossAndGradient {
  double loss = 0.0;
  ThetaGradient grad;
};

using Objective = std::function<LossAndGradient(const QuantumModel&)>;

TrainReport optimize(QuantumModel model, const TrainConfig& config, const Objective& objective) {
  if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(config.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (config.loss_report_stride < 1) throw ConfigError("loss report stride must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  const std::size_t n_theta = model.theta.size();
  std::vector<double> params(n_theta + (config.train_beta ? 2 : 1));
  std::vector<double> grads(params.size());
  AdamState adam;
  TrainReport report{{}, model, 0.0, 0, false, 0.0, config.seed};

  auto check_finite = [](double loss, int epoch) {
    if (!std::isfinite(loss)) throw NumericalError(fmt::format("loss became non-finite at epoch {}", epoch));
  };

  int epoch = 0;
  for (; epoch < config.epochs; ++epoch) {
    const LossAndGradient lg = objective(model);
    check_finite(lg.loss, epoch);
    if (epoch % config.loss_report_stride == 0) report.trajectory.emplace_back(epoch, lg.loss);
    if (lg.loss < config.early_stop_loss) {
      report.early_stopped = true;
      break;
    }
    std::copy(model.theta.begin(), model.theta.end(), params.begin());
    std::copy(lg.grad.theta.begin(), lg.grad.theta.end(), grads.begin());
    params[n_theta] = model.alpha;
    grads[n_theta] = lg.grad.alpha;
    if (config.train_beta) {
      params[n_theta + 1] = model.beta;
      grads[n_theta + 1] = lg.grad.beta;
    }
    adam_step(params, grads, adam, config.learning_rate);
    std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(n_theta), model.theta.begin());
    model.alpha = params[n_theta];
    if (config.train_beta) model.beta = params[n_theta + 1];
  }
  if (!report.early_stopped) {
    const double loss = objective(model).loss;
    check_finite(loss, epoch);
    report.trajectory.emplace_back(epoch, loss);
  } else if (report.trajectory.back().first != epoch) {
    report.trajectory.emplace_back(epoch, objective(model).loss);
  }
  report.final_loss = report.trajectory.back().second;
  report.epochs_run = epoch;
  report.model = std::move(model);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void check_spec(const ModelSpec& spec, bool bivariate) {
  if ((spec.feature == FeatureKind::bivariate_hartley) != bivariate) {
    throw ConfigError(bivariate ? "bivariate training needs a bivariate-hartley model"
                                : "univariate training needs a hartley or fourier model");
  }
}

}  // namespace

TrainReport train_distribution(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config) {
  validate_target(target);
  if (is_de(target.kind) || is_bivariate(target.kind)) throw ConfigError("train needs a univariate density target");
  check_spec(spec, false);
  const std::vector<double> grid = make_training_grid(spec.n, config.grid);
  std::vector<double> y;
  for (double x : grid) y.push_back(target_value(target, x));

  QuantumModel model(spec);
  initialize_model(model, config, config.alpha_init.value_or(max_of(y)));
  if (config.gradient_gate) {
    const double c[1] = {grid[grid.size() / 2]};
    gradient_gate(model, c);
  }
  const GridEngine engine(model, grid, 0);
  const double M = static_cast<double>(grid.size());
  return optimize(std::move(model), config, [&](const QuantumModel& m) {
    const GridValues v = engine.evaluate(m);
    LossAndGradient out;
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = v.f[i] - y[i];
      out.loss += d * d;
      w[i] = 2.0 * d / M;
    }
    out.loss /= M;
    out.grad = engine.gradient(m, w);
    return out;
  });
}

double de_loss(const QuantumModel& model, const TargetSpec& target, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  double sum = 0.0;
  for (double x : grid) {
    const double r = de_residual(target.kind, model.evaluate(x), model.grad_x(x), model.second_derivative_x(x), x, target);
    sum += r * r;
  }
  const DeBoundary b = de_boundary(target);
  const double dv = model.evaluate(b.point) - b.value;
  const double dd = model.grad_x(b.point) - b.derivative;
  return sum / static_cast<double>(grid.size()) + dv * dv + dd * dd;
}

TrainReport train_de(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config) {
  validate_target(target);
  if (!is_de(target.kind)) throw ConfigError("solve-de needs a de1 or de2 target");
  check_spec(spec, false);
  const std::vector<double> grid = make_de_grid(target.kind, spec.n);
  const DeBoundary boundary = de_boundary(target);

  // The residual is linear: r = f'' + a(x) f' + c(x) f.
  std::vector<double> ca, cc;
  for (double x : grid) {
    ca.push_back(de_residual(target.kind, 0.0, 1.0, 0.0, x, target));
    cc.push_back(de_residual(target.kind, 1.0, 0.0, 0.0, x, target));
  }

  QuantumModel model(spec);
  initialize_model(model, config, config.alpha_init.value_or(boundary.value));
  if (boundary.point < 0.0 || boundary.point > model.domain_max()) {
    throw ConfigError(fmt::format("DE boundary point {} lies outside the model domain", boundary.point));
  }
  if (config.gradient_gate) {
    const double c[1] = {boundary.point};
    gradient_gate(model, c);
  }
  const GridEngine engine(model, grid, 2);
  const GridEngine edge(model, {boundary.point}, 1);
  const double M = static_cast<double>(grid.size());
  return optimize(std::move(model), config, [&](const QuantumModel& m) {
    const GridValues v = engine.evaluate(m);
    LossAndGradient out;
    std::vector<double> w0(grid.size()), w1(grid.size()), w2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = v.f2[i] + ca[i] * v.f1[i] + cc[i] * v.f[i];
      out.loss += r * r / M;
      w2[i] = 2.0 * r / M;
      w1[i] = w2[i] * ca[i];
      w0[i] = w2[i] * cc[i];
    }
    const GridValues e = edge.evaluate(m);
    const double dv = e.f[0] - boundary.value;
    const double dd = e.f1[0] - boundary.derivative;
    out.loss += dv * dv + dd * dd;
    out.grad = engine.gradient(m, w0, w1, w2);
    const std::vector<double> e0{2.0 * dv}, e1{2.0 * dd};
    const ThetaGradient ge = edge.gradient(m, e0, e1);
    for (std::size_t i = 0; i < out.grad.theta.size(); ++i) out.grad.theta[i] += ge.theta[i];
    out.grad.alpha += ge.alpha;
    out.grad.beta += ge.beta;
    return out;
  });
}

TrainReport train_bivariate(const TargetSpec& target, const ModelSpec& spec, const TrainConfig& config) {
  validate_target(target);
  if (!is_bivariate(target.kind)) throw ConfigError("train2d needs a binormal target");
  check_spec(spec, true);
  const std::vector<double> grid = make_training_grid(spec.n, config.grid);
  std::vector<double> y;
  for (double x : grid) {
    for (double yy : grid) y.push_back(target_value(target, x, yy));
  }

  QuantumModel model(spec);
  initialize_model(model, config, config.alpha_init.value_or(max_of(y)));
  const auto frozen_begin = model.theta.begin() + 2 * model.ansatz_slots();
  if (config.freeze_correlation) std::fill(frozen_begin, model.theta.end(), 0.0);
  if (config.gradient_gate) {
    const double c[2] = {grid[grid.size() / 2], grid[grid.size() / 2]};
    gradient_gate(model, c);
  }
  const GridEngine2D engine(model, grid, grid);
  const double M = static_cast<double>(y.size());
  return optimize(std::move(model), config, [&](const QuantumModel& m) {
    const std::vector<double> f = engine.evaluate(m);
    LossAndGradient out;
    std::vector<double> w(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = f[i] - y[i];
      out.loss += d * d;
      w[i] = 2.0 * d / M;
    }
    out.loss /= M;
    out.grad = engine.gradient(m, w);
    if (config.freeze_correlation) {
      std::fill(out.grad.theta.begin() + 2 * m.ansatz_slots(), out.grad.theta.end(), 0.0);
    }
    return out;
  });
}

}  // namespace qh
