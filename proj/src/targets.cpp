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

#include "qhartley/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "qhartley/types.hpp"

namespace qh {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_norm(double var) { return 1.0 / std::sqrt(2.0 * kPi * var); }

}  // namespace

double pdf_ou(double x, double t, double mu, double sigma, double nu, double x_i) {
  const double decay = 1.0 - std::exp(-2.0 * nu * t);
  const double mean = mu + (x_i - mu) * std::exp(-nu * t);
  const double d = x - mean;
  return std::sqrt(nu / (kPi * decay * sigma * sigma)) * std::exp(-nu * d * d / (decay * sigma * sigma));
}

double pdf_gbm(double x, double t, double mu, double sigma, double x_i) {
  if (!(x > 0.0)) throw std::domain_error("GBM density needs x > 0");
  const double s2t = sigma * sigma * t;
  const double d = std::log(x / x_i) - (mu - sigma * sigma / 2.0) * t;
  return normal_norm(s2t) / x * std::exp(-d * d / (2.0 * s2t));
}

double pdf_exponential(double x, double lambda) {
  if (x < 0.0) throw std::domain_error("exponential density needs x >= 0");
  return lambda * std::exp(-lambda * x);
}

double pdf_binormal(double x, double y, double mu_x, double mu_y, double sigma_x, double sigma_y, double rho) {
  if (!(rho > -1.0 && rho < 1.0)) throw std::domain_error("correlation must lie in (-1, 1)");
  const double zx = (x - mu_x) / sigma_x;
  const double zy = (y - mu_y) / sigma_y;
  const double r = 1.0 - rho * rho;
  return std::exp(-(zx * zx + zy * zy - 2.0 * rho * zx * zy) / (2.0 * r)) /
         (2.0 * kPi * std::sqrt(r) * sigma_x * sigma_y);
}

std::string_view target_kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::ou: return "ou";
    case TargetKind::gbm: return "gbm";
    case TargetKind::exponential: return "exponential";
    case TargetKind::binormal: return "binormal";
    case TargetKind::de1: return "de1";
    case TargetKind::de2: return "de2";
  }
  return "?";
}

std::optional<TargetKind> parse_target_kind(std::string_view s) {
  for (TargetKind k : {TargetKind::ou, TargetKind::gbm, TargetKind::exponential, TargetKind::binormal, TargetKind::de1,
                       TargetKind::de2}) {
    if (target_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

bool is_de(TargetKind k) { return k == TargetKind::de1 || k == TargetKind::de2; }
bool is_bivariate(TargetKind k) { return k == TargetKind::binormal; }

double TargetSpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) throw ConfigError(fmt::format("target parameter '{}' is missing", name));
  return it->second;
}

std::vector<std::string> target_param_names(TargetKind k) {
  switch (k) {
    case TargetKind::ou: return {"mu", "sigma", "nu", "x_i", "t"};
    case TargetKind::gbm: return {"mu", "sigma", "x_i", "t"};
    case TargetKind::exponential: return {"lambda"};
    case TargetKind::binormal: return {"mu_x", "mu_y", "sigma_x", "sigma_y", "rho"};
    case TargetKind::de1:
    case TargetKind::de2: return {"mu", "sigma"};
  }
  return {};
}

TargetSpec default_target(TargetKind k) {
  TargetSpec s{k, {}};
  switch (k) {
    case TargetKind::ou: s.params = {{"mu", 5.0}, {"sigma", 3.0}, {"nu", 0.5}, {"x_i", 24.0}, {"t", 1.0}}; break;
    case TargetKind::gbm: s.params = {{"mu", 0.1}, {"sigma", 0.3}, {"x_i", 12.0}, {"t", 1.0}}; break;
    case TargetKind::exponential: s.params = {{"lambda", 0.5}}; break;
    case TargetKind::binormal:
      s.params = {{"mu_x", 8.3}, {"mu_y", 8.6}, {"sigma_x", 1.5}, {"sigma_y", 1.8}, {"rho", 0.0}};
      break;
    case TargetKind::de1: s.params = {{"mu", 7.5}, {"sigma", 1.406}}; break;
    case TargetKind::de2: s.params = {{"mu", 1.5}, {"sigma", 0.316}}; break;
  }
  return s;
}

void validate_target(const TargetSpec& spec) {
  const auto names = target_param_names(spec.kind);
  for (const auto& [name, value] : spec.params) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError(fmt::format("unknown parameter '{}' for target '{}'", name, target_kind_name(spec.kind)));
    }
    if (!std::isfinite(value)) throw ConfigError(fmt::format("target parameter '{}' is not finite", name));
  }
  for (const auto& name : names) {
    const double v = spec.param(name);
    const bool positive = name == "sigma" || name == "sigma_x" || name == "sigma_y" || name == "lambda" ||
                          name == "nu" || name == "t";
    if (positive && !(v > 0.0)) throw ConfigError(fmt::format("target parameter '{}' must be positive", name));
    if (name == "rho" && !(v > -1.0 && v < 1.0)) throw ConfigError("target parameter 'rho' must lie in (-1, 1)");
    if (name == "x_i" && spec.kind == TargetKind::gbm && !(v > 0.0)) {
      throw ConfigError("GBM initial value 'x_i' must be positive");
    }
  }
}

double target_value(const TargetSpec& spec, double x) {
  switch (spec.kind) {
    case TargetKind::ou:
      return pdf_ou(x, spec.param("t"), spec.param("mu"), spec.param("sigma"), spec.param("nu"), spec.param("x_i"));
    case TargetKind::gbm:
      if (x <= 0.0) return 0.0;
      return pdf_gbm(x, spec.param("t"), spec.param("mu"), spec.param("sigma"), spec.param("x_i"));
    case TargetKind::exponential: return pdf_exponential(x, spec.param("lambda"));
    case TargetKind::de1:
    case TargetKind::de2: return de_solution(spec, x).f;
    case TargetKind::binormal: break;
  }
  throw std::invalid_argument("bivariate target needs two coordinates");
}

double target_value(const TargetSpec& spec, double x, double y) {
  if (spec.kind != TargetKind::binormal) throw std::invalid_argument("univariate target given two coordinates");
  return pdf_binormal(x, y, spec.param("mu_x"), spec.param("mu_y"), spec.param("sigma_x"), spec.param("sigma_y"),
                      spec.param("rho"));
}

double de_residual(TargetKind kind, double f, double f1, double f2, double x, const TargetSpec& spec) {
  const double mu = spec.param("mu");
  const double s2 = spec.param("sigma") * spec.param("sigma");
  if (kind == TargetKind::de1) return f2 + (x - mu) / s2 * f1 + f / s2;
  if (kind == TargetKind::de2) {
    if (!(x > 0.0)) throw std::domain_error("de2 residual needs x > 0");
    return f2 + (2.0 * s2 - mu + std::log(x)) / (s2 * x) * f1 + f / (s2 * x * x);
  }
  throw std::invalid_argument("not a differential-equation target");
}

DeBoundary de_boundary(const TargetSpec& spec) {
  const double mu = spec.param("mu");
  const double s2 = spec.param("sigma") * spec.param("sigma");
  if (spec.kind == TargetKind::de1) return {mu, normal_norm(s2), 0.0};
  if (spec.kind == TargetKind::de2) return {std::exp(mu - s2), std::exp(s2 / 2.0 - mu) * normal_norm(s2), 0.0};
  throw std::invalid_argument("not a differential-equation target");
}

FunctionJet de_solution(const TargetSpec& spec, double x) {
  const double mu = spec.param("mu");
  const double s2 = spec.param("sigma") * spec.param("sigma");
  if (spec.kind == TargetKind::de1) {
    const double d = x - mu;
    const double f = std::exp(-0.5 * d * d / s2) * normal_norm(s2);
    return {f, -d / s2 * f, (d * d / (s2 * s2) - 1.0 / s2) * f};
  }
  if (spec.kind == TargetKind::de2) {
    if (!(x > 0.0)) throw std::domain_error("de2 solution needs x > 0");
    // With q = f'/f: f'' = (q' + q^2) f.
    const double u = std::log(x) - mu;
    const double f = std::exp(-0.5 * u * u / s2) * normal_norm(s2) / x;
    const double q = (-u / s2 - 1.0) / x;
    const double dq = (-1.0 / s2 + u / s2 + 1.0) / (x * x);
    return {f, q * f, (dq + q * q) * f};
  }
  throw std::invalid_argument("not a differential-equation target");
}

}  // namespace qh
