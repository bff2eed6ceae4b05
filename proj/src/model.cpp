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

#include "qhartley/model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace qh {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kThetaStep = 1e-5;

std::vector<int> range(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

Circuit build_feature_block(const ModelSpec& spec, bool decompose) {
  const int n = spec.n;
  const HartleyMapOptions opts{spec.overlap_regularizer, decompose};
  switch (spec.feature) {
    case FeatureKind::fourier: return build_phase_feature_map(n);
    case FeatureKind::hartley: return build_hartley_feature_map(n, opts);
    case FeatureKind::bivariate_hartley: {
      Circuit c(2 * n + 2, 0, 2);
      const Circuit map = build_hartley_feature_map(n, opts);
      const std::vector<int> fx{0}, fy{1};
      c.append(map, range(0, n + 1), 0, fx);
      c.append(map, range(n + 1, n + 1), 0, fy);
      return c;
    }
  }
  throw std::logic_error("unknown feature kind");
}

}  // namespace

std::string_view feature_kind_name(FeatureKind k) {
  switch (k) {
    case FeatureKind::hartley: return "hartley";
    case FeatureKind::fourier: return "fourier";
    case FeatureKind::bivariate_hartley: return "bivariate-hartley";
  }
  return "?";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view s) {
  for (FeatureKind k : {FeatureKind::hartley, FeatureKind::fourier, FeatureKind::bivariate_hartley}) {
    if (feature_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view ansatz_kind_name(AnsatzKind k) { return k == AnsatzKind::hera ? "hera" : "hea"; }

std::optional<AnsatzKind> parse_ansatz_kind(std::string_view s) {
  if (s == "hera") return AnsatzKind::hera;
  if (s == "hea") return AnsatzKind::hea;
  return std::nullopt;
}

std::string_view diff_method_name(DiffMethod m) {
  return m == DiffMethod::shift_rule ? "shift-rule" : "central-difference";
}

std::optional<DiffMethod> parse_diff_method(std::string_view s) {
  if (s == "shift-rule") return DiffMethod::shift_rule;
  if (s == "central-difference") return DiffMethod::central_difference;
  return std::nullopt;
}

Circuit build_ansatz(const ModelSpec& spec) {
  return spec.ansatz == AnsatzKind::hera ? build_hera(spec.n, spec.depth) : build_hea(spec.n, spec.depth, spec.scheme);
}

QuantumModel::QuantumModel(const ModelSpec& spec) : spec_(spec) {
  if (spec.n < 1) throw std::invalid_argument("model needs at least one register qubit");
  const int n = spec.n;
  ansatz_ = build_ansatz(spec);
  ansatz_slots_ = ansatz_.num_params();
  feature_ = build_feature_block(spec, false);
  const int width = feature_.num_qubits();

  switch (spec.feature) {
    case FeatureKind::fourier:
      trainable_ = Circuit(width, ansatz_slots_);
      trainable_.append(ansatz_);
      break;
    case FeatureKind::hartley:
      trainable_ = Circuit(width, ansatz_slots_);
      trainable_.append(ansatz_, range(1, n));
      break;
    case FeatureKind::bivariate_hartley:
      correlation_ = build_correlation_circuit(n);
      correlation_slots_ = correlation_->num_params();
      trainable_ = Circuit(width, 2 * ansatz_slots_ + correlation_slots_);
      trainable_.append(*correlation_, {}, 2 * ansatz_slots_);
      trainable_.append(ansatz_, range(1, n), 0);
      trainable_.append(ansatz_, range(n + 2, n), ansatz_slots_);
      break;
  }

  full_ = Circuit(width, trainable_.num_params(), feature_.num_features());
  full_.append(feature_);
  full_.append(trainable_);
  shifted_ = Circuit(width, trainable_.num_params(), feature_.num_features());
  shifted_.append(build_feature_block(spec, true));
  shifted_.append(trainable_);
  theta.assign(static_cast<std::size_t>(num_angles()), 0.0);
}

double QuantumModel::domain_max() const {
  // The training grid's last node is 2^n - 1/2.
  return std::ldexp(1.0, spec_.n) - 0.5;
}

void QuantumModel::check_coords(std::span<const double> coords, bool guard) const {
  if (static_cast<int>(coords.size()) != num_features()) {
    throw std::invalid_argument(fmt::format("model expects {} coordinate(s), got {}", num_features(), coords.size()));
  }
  if (theta.size() != static_cast<std::size_t>(num_angles())) {
    throw std::invalid_argument(fmt::format("model has {} angles, expected {}", theta.size(), num_angles()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw std::domain_error("coordinate is not finite");
    if (guard && (c < 0.0 || c > domain_max())) {
      throw std::domain_error(fmt::format("coordinate {} outside [0, {}]", c, domain_max()));
    }
  }
}

double QuantumModel::expectation_of(const Circuit& full, std::span<const double> coords,
                                    std::span<const GroupShift> shifts, std::span<const double> params) const {
  const StateVector s = full.run_from_zero({coords, params}, shifts);
  return s.probability(0);
}

StateVector QuantumModel::state(std::span<const double> coords) const {
  check_coords(coords, true);
  return full_.run_from_zero({coords, theta});
}

double QuantumModel::expectation(std::span<const double> coords) const {
  check_coords(coords, true);
  return expectation_of(full_, coords, {}, theta);
}

double QuantumModel::expectation_unchecked(std::span<const double> coords) const {
  check_coords(coords, false);
  return expectation_of(full_, coords, {}, theta);
}

double QuantumModel::evaluate(double x) const {
  const double c[1] = {x};
  return alpha * expectation(c) + beta;
}

double QuantumModel::evaluate(double x, double y) const {
  const double c[2] = {x, y};
  return alpha * expectation(c) + beta;
}

double QuantumModel::evaluate_unchecked(std::span<const double> coords) const {
  return alpha * expectation_unchecked(coords) + beta;
}

int QuantumModel::shift_groups_for(int feature) const {
  int count = 0;
  for (const ShiftGroup& g : shifted_.shift_groups()) count += g.feature == feature ? 1 : 0;
  return count;
}

CountedDerivative QuantumModel::grad_x_counted(std::span<const double> coords, DiffMethod method, int feature) const {
  check_coords(coords, true);
  if (feature < 0 || feature >= num_features()) throw std::invalid_argument("feature index out of range");
  CountedDerivative out;
  if (method == DiffMethod::central_difference) {
    std::vector<double> hi(coords.begin(), coords.end()), lo = hi;
    hi[static_cast<std::size_t>(feature)] += kGradStep;
    lo[static_cast<std::size_t>(feature)] -= kGradStep;
    out.value = (evaluate_unchecked(hi) - evaluate_unchecked(lo)) / (2.0 * kGradStep);
    out.evaluations = 2;
    return out;
  }
  const auto& groups = shifted_.shift_groups();
  double sum = 0.0;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    if (groups[static_cast<std::size_t>(g)].feature != feature) continue;
    const GroupShift plus[1] = {{g, kHalfPi}};
    const GroupShift minus[1] = {{g, -kHalfPi}};
    const double d = expectation_of(shifted_, coords, plus, theta) - expectation_of(shifted_, coords, minus, theta);
    sum += groups[static_cast<std::size_t>(g)].rate * d / 2.0;
    out.evaluations += 2;
  }
  out.value = alpha * sum;
  return out;
}

double QuantumModel::grad_x(std::span<const double> coords, DiffMethod method, int feature) const {
  return grad_x_counted(coords, method, feature).value;
}

double QuantumModel::grad_x(double x, DiffMethod method) const {
  const double c[1] = {x};
  return grad_x(c, method, 0);
}

double QuantumModel::second_derivative_x(std::span<const double> coords, DiffMethod method, int feature) const {
  check_coords(coords, true);
  if (feature < 0 || feature >= num_features()) throw std::invalid_argument("feature index out of range");
  if (method == DiffMethod::central_difference) {
    std::vector<double> hi(coords.begin(), coords.end()), lo = hi;
    hi[static_cast<std::size_t>(feature)] += kSecondStep;
    lo[static_cast<std::size_t>(feature)] -= kSecondStep;
    const double mid = evaluate_unchecked(coords);
    return (evaluate_unchecked(hi) - 2.0 * mid + evaluate_unchecked(lo)) / (kSecondStep * kSecondStep);
  }
  // Nested two-point rule over every pair of shift groups.
  const auto& groups = shifted_.shift_groups();
  std::vector<int> ids;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    if (groups[static_cast<std::size_t>(g)].feature == feature) ids.push_back(g);
  }
  double sum = 0.0;
  for (int g : ids) {
    for (int h : ids) {
      double mixed = 0.0;
      for (int sg : {1, -1}) {
        for (int sh : {1, -1}) {
          const GroupShift shifts[2] = {{g, sg * kHalfPi}, {h, sh * kHalfPi}};
          mixed += sg * sh * expectation_of(shifted_, coords, shifts, theta);
        }
      }
      sum += groups[static_cast<std::size_t>(g)].rate * groups[static_cast<std::size_t>(h)].rate * mixed / 4.0;
    }
  }
  return alpha * sum;
}

double QuantumModel::second_derivative_x(double x, DiffMethod method) const {
  const double c[1] = {x};
  return second_derivative_x(c, method, 0);
}

ThetaGradient QuantumModel::grad_theta(std::span<const double> coords, DiffMethod method) const {
  check_coords(coords, true);
  ThetaGradient g;
  g.theta.resize(theta.size());
  std::vector<double> params = theta;
  // Every slot drives exactly one rotation with unit scale, so the two-point
  // rule with +-pi/2 is exact.
  const double step = method == DiffMethod::shift_rule ? kHalfPi : kThetaStep;
  for (std::size_t s = 0; s < theta.size(); ++s) {
    params[s] = theta[s] + step;
    const double hi = expectation_of(full_, coords, {}, params);
    params[s] = theta[s] - step;
    const double lo = expectation_of(full_, coords, {}, params);
    params[s] = theta[s];
    g.theta[s] = alpha * (method == DiffMethod::shift_rule ? (hi - lo) / 2.0 : (hi - lo) / (2.0 * step));
  }
  g.alpha = expectation_of(full_, coords, {}, theta);
  g.beta = 1.0;
  return g;
}

nlohmann::json QuantumModel::to_json() const {
  nlohmann::json j;
  j["format"] = kFormat;
  j["feature"] = feature_kind_name(spec_.feature);
  j["n"] = spec_.n;
  j["ansatz"] = {{"kind", ansatz_kind_name(spec_.ansatz)},
                 {"depth", spec_.depth},
                 {"scheme", scheme_name(spec_.scheme)}};
  j["overlap_regularizer"] = spec_.overlap_regularizer;
  j["theta"] = theta;
  j["alpha"] = alpha;
  j["beta"] = beta;
  return j;
}

QuantumModel QuantumModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ConfigError("unsupported model format");
    ModelSpec spec;
    const auto feature = parse_feature_kind(j.at("feature").get<std::string>());
    if (!feature) throw ConfigError("unknown feature kind in model file");
    spec.feature = *feature;
    spec.n = j.at("n").get<int>();
    const auto& a = j.at("ansatz");
    const auto kind = parse_ansatz_kind(a.at("kind").get<std::string>());
    if (!kind) throw ConfigError("unknown ansatz kind in model file");
    spec.ansatz = *kind;
    spec.depth = a.at("depth").get<int>();
    const auto scheme = parse_scheme(a.at("scheme").get<std::string>());
    if (!scheme) throw ConfigError("unknown rotation scheme in model file");
    spec.scheme = *scheme;
    spec.overlap_regularizer = j.at("overlap_regularizer").get<bool>();
    QuantumModel m(spec);
    auto theta = j.at("theta").get<std::vector<double>>();
    if (theta.size() != m.theta.size()) {
      throw ConfigError(fmt::format("model file has {} angles, expected {}", theta.size(), m.theta.size()));
    }
    m.theta = std::move(theta);
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model file: ") + e.what());
  }
}

}  // namespace qh
