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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "qhartley/targets.hpp"
#include "qhartley/types.hpp"
#include "support/oracles.hpp"

namespace qh {
namespace {

constexpr double kPi = std::numbers::pi;

double normal(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
}

TEST(Targets, OuIsNormalWithRelaxedMeanAndVariance) {
  // Mean x_i e^{-nu t} + mu (1 - e^{-nu t}), variance sigma^2 (1 - e^{-2 nu t}) / (2 nu).
  oracle::Gen g(1);
  for (int trial = 0; trial < 50; ++trial) {
    const double mu = g.real(-5, 5), sigma = g.real(0.2, 4), nu = g.real(0.1, 2), xi = g.real(-10, 30),
                 t = g.real(0.1, 3), x = g.real(-10, 30);
    const double mean = xi * std::exp(-nu * t) + mu * (1 - std::exp(-nu * t));
    const double sd = sigma * std::sqrt((1 - std::exp(-2 * nu * t)) / (2 * nu));
    EXPECT_NEAR(pdf_ou(x, t, mu, sigma, nu, xi), normal(x, mean, sd), 1e-12);
  }
}

TEST(Targets, GbmIsLogNormal) {
  oracle::Gen g(2);
  for (int trial = 0; trial < 50; ++trial) {
    const double mu = g.real(-0.5, 0.5), sigma = g.real(0.05, 1), xi = g.real(1, 20), t = g.real(0.1, 3),
                 x = g.real(0.01, 40);
    const double m = std::log(xi) + (mu - 0.5 * sigma * sigma) * t;
    EXPECT_NEAR(pdf_gbm(x, t, mu, sigma, xi), normal(std::log(x), m, sigma * std::sqrt(t)) / x, 1e-12);
  }
  EXPECT_THROW((void)pdf_gbm(0.0, 1, 0.1, 0.3, 12), std::domain_error);
  EXPECT_EQ(target_value(default_target(TargetKind::gbm), 0.0), 0.0);
}

TEST(Targets, DensitiesIntegrateToOne) {
  const TargetSpec ou = default_target(TargetKind::ou);
  const TargetSpec gbm = default_target(TargetKind::gbm);
  const TargetSpec ex = default_target(TargetKind::exponential);
  EXPECT_NEAR(oracle::trapezoid([&](double x) { return target_value(ou, x); }, -60, 80, 20000), 1.0, 1e-8);
  EXPECT_NEAR(oracle::trapezoid([&](double x) { return target_value(gbm, x); }, 0, 200, 200000), 1.0, 1e-6);
  EXPECT_NEAR(oracle::trapezoid([&](double x) { return target_value(ex, x); }, 0, 200, 400000), 1.0, 1e-6);
  const TargetSpec bn = default_target(TargetKind::binormal);
  const double mass = oracle::trapezoid(
      [&](double x) { return oracle::trapezoid([&](double y) { return target_value(bn, x, y); }, -10, 30, 400); }, -10,
      30, 400);
  EXPECT_NEAR(mass, 1.0, 1e-6);
}

TEST(Targets, BinormalMatchesDensityFormula) {
  oracle::Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double mx = g.real(0, 16), my = g.real(0, 16), sx = g.real(0.5, 3), sy = g.real(0.5, 3),
                 rho = g.real(-0.95, 0.95), x = g.real(0, 16), y = g.real(0, 16);
    const double zx = (x - mx) / sx, zy = (y - my) / sy;
    const double expected = std::exp(-(zx * zx + zy * zy - 2 * rho * zx * zy) / (2 * (1 - rho * rho))) /
                            (2 * kPi * std::sqrt(1 - rho * rho) * sx * sy);
    EXPECT_NEAR(pdf_binormal(x, y, mx, my, sx, sy, rho), expected, 1e-12);
  }
  // rho = 0 factorizes.
  EXPECT_NEAR(pdf_binormal(7, 9, 8.3, 8.6, 1.5, 1.8, 0.0), normal(7, 8.3, 1.5) * normal(9, 8.6, 1.8), 1e-15);
}

TEST(Targets, ExponentialDensity) {
  EXPECT_NEAR(pdf_exponential(0.0, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(pdf_exponential(3.0, 0.5), 0.5 * std::exp(-1.5), 1e-15);
}

TEST(Targets, AnalyticDeSolutionsSatisfyTheirEquations) {
  for (TargetKind k : {TargetKind::de1, TargetKind::de2}) {
    const TargetSpec spec = default_target(k);
    const std::function<double(double)> f = [&](double x) { return de_solution(spec, x).f; };
    for (double x = 0.5; x <= 15.0; x += 0.5) {
      const double f1 = oracle::central_first(f, x), f2 = oracle::central_second(f, x);
      EXPECT_NEAR(de_residual(k, f(x), f1, f2, x, spec), 0.0, 1e-7) << target_kind_name(k) << " x=" << x;
      const FunctionJet jet = de_solution(spec, x);
      EXPECT_NEAR(jet.f1, f1, 1e-8);
      EXPECT_NEAR(jet.f2, f2, 1e-6);
    }
  }
}

TEST(Targets, DeBoundaryConditions) {
  const TargetSpec d1 = default_target(TargetKind::de1);
  const DeBoundary b1 = de_boundary(d1);
  EXPECT_DOUBLE_EQ(b1.point, 7.5);
  EXPECT_NEAR(b1.value, 1.0 / std::sqrt(2 * kPi * 1.406 * 1.406), 1e-15);
  EXPECT_EQ(b1.derivative, 0.0);

  const TargetSpec d2 = default_target(TargetKind::de2);
  const double mu = 1.5, s = 0.316;
  const DeBoundary b2 = de_boundary(d2);
  EXPECT_NEAR(b2.point, std::exp(mu - s * s), 1e-14);
  EXPECT_NEAR(b2.value, std::exp(s * s / 2 - mu) / std::sqrt(2 * kPi * s * s), 1e-14);
  // The boundary point is the mode, so the analytic slope vanishes there.
  EXPECT_NEAR(de_solution(d2, b2.point).f1, 0.0, 1e-14);
  EXPECT_NEAR(de_solution(d2, b2.point).f, b2.value, 1e-14);
}

TEST(Targets, DefaultsCarryReferenceParameters) {
  const TargetSpec ou = default_target(TargetKind::ou);
  EXPECT_EQ(ou.param("mu"), 5.0);
  EXPECT_EQ(ou.param("sigma"), 3.0);
  EXPECT_EQ(ou.param("nu"), 0.5);
  EXPECT_EQ(ou.param("x_i"), 24.0);
  EXPECT_EQ(ou.param("t"), 1.0);
  const TargetSpec gbm = default_target(TargetKind::gbm);
  EXPECT_EQ(gbm.param("mu"), 0.1);
  EXPECT_EQ(gbm.param("sigma"), 0.3);
  EXPECT_EQ(gbm.param("x_i"), 12.0);
  EXPECT_EQ(default_target(TargetKind::exponential).param("lambda"), 0.5);
  EXPECT_EQ(default_target(TargetKind::de2).param("sigma"), 0.316);
}

TEST(Targets, ValidationRejectsBadParameters) {
  TargetSpec ou = default_target(TargetKind::ou);
  ou.params["sigma"] = 0.0;
  EXPECT_THROW(validate_target(ou), ConfigError);
  ou = default_target(TargetKind::ou);
  ou.params["lambda"] = 1.0;
  EXPECT_THROW(validate_target(ou), ConfigError);
  ou = default_target(TargetKind::ou);
  ou.params.erase("nu");
  EXPECT_THROW(validate_target(ou), ConfigError);
  TargetSpec bn = default_target(TargetKind::binormal);
  bn.params["rho"] = 1.0;
  EXPECT_THROW(validate_target(bn), ConfigError);
  EXPECT_NO_THROW(validate_target(default_target(TargetKind::de1)));
}

TEST(Targets, KindNamesRoundTrip) {
  for (TargetKind k : {TargetKind::ou, TargetKind::gbm, TargetKind::exponential, TargetKind::binormal,
                       TargetKind::de1, TargetKind::de2}) {
    EXPECT_EQ(parse_target_kind(target_kind_name(k)), k);
  }
  EXPECT_TRUE(is_de(TargetKind::de2));
  EXPECT_TRUE(is_bivariate(TargetKind::binormal));
  EXPECT_FALSE(parse_target_kind("cauchy"));
}

}  // namespace
}  // namespace qh
