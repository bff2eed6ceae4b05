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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qh {

// Closed-form densities and differential-equation definitions used as
// training targets.

double pdf_ou(double x, double t, double mu, double sigma, double nu, double x_i);
/// Requires x > 0 (throws std::domain_error otherwise).
double pdf_gbm(double x, double t, double mu, double sigma, double x_i);
double pdf_exponential(double x, double lambda);
double pdf_binormal(double x, double y, double mu_x, double mu_y, double sigma_x, double sigma_y, double rho);

enum class TargetKind { ou, gbm, exponential, binormal, de1, de2 };

std::string_view target_kind_name(TargetKind k);
std::optional<TargetKind> parse_target_kind(std::string_view s);
bool is_de(TargetKind k);
bool is_bivariate(TargetKind k);

/// Target kind plus named parameters (mu, sigma, nu, x_i, t, lambda, mu_x,
/// mu_y, sigma_x, sigma_y, rho).
struct TargetSpec {
  TargetKind kind = TargetKind::ou;
  std::map<std::string, double> params;

  double param(const std::string& name) const;
};

/// Parameter names a kind accepts, in canonical order.
std::vector<std::string> target_param_names(TargetKind k);
/// Parameter set used in the reference experiments for each kind.
TargetSpec default_target(TargetKind k);
/// Throws ConfigError on missing/unknown names or out-of-range values.
void validate_target(const TargetSpec& spec);

/// Grid value of a univariate density. The GBM density is taken as 0 at
/// x <= 0, where it is undefined.
double target_value(const TargetSpec& spec, double x);
double target_value(const TargetSpec& spec, double x, double y);

/// Left-hand side of the DE for the supplied f, f', f''. de2 needs x > 0.
double de_residual(TargetKind kind, double f, double f1, double f2, double x, const TargetSpec& spec);

struct DeBoundary {
  double point = 0.0;
  double value = 0.0;
  double derivative = 0.0;
};
DeBoundary de_boundary(const TargetSpec& spec);

struct FunctionJet {
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};
/// Known analytic solution of the DE and its first two derivatives.
FunctionJet de_solution(const TargetSpec& spec, double x);

}  // namespace qh
