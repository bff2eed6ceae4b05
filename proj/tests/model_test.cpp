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

#include "qhartley/model.hpp"
#include "qhartley/types.hpp"
#include "support/oracles.hpp"

namespace qh {
namespace {

constexpr double kPi = std::numbers::pi;

QuantumModel random_model(oracle::Gen& g, ModelSpec spec) {
  QuantumModel m(spec);
  m.theta = g.reals(m.theta.size(), -kPi, kPi);
  m.alpha = g.real(0.5, 2.0);
  m.beta = g.real(-0.1, 0.1);
  return m;
}

ModelSpec hartley_spec(int n, int depth) {
  ModelSpec s;
  s.n = n;
  s.depth = depth;
  return s;
}

// <O> from the ansatz unitary and the closed-form feature amplitudes.
double oracle_expectation(const QuantumModel& m, double x) {
  const Eigen::MatrixXcd v = circuit_to_unitary(m.ansatz(), {{}, m.theta});
  const int N = 1 << m.n();
  oracle::cplx amp = 0.0;
  for (int k = 0; k < N; ++k) {
    oracle::cplx feature;
    if (m.feature_kind() == FeatureKind::hartley) {
      feature = oracle::cas((2.0 * kPi * k / N - kPi) * x) / std::sqrt(2.0 * N);
    } else {
      feature = std::polar(1.0 / std::sqrt(double(N)), 2.0 * kPi * k * x / N);
    }
    amp += v(0, k) * feature;
  }
  return std::norm(amp);
}

TEST(Model, ZeroAnglesGiveUniformOverlapAtOrigin) {
  for (int n = 1; n <= 5; ++n) {
    QuantumModel m(hartley_spec(n, 3));
    std::fill(m.theta.begin(), m.theta.end(), 0.0);
    const double x = 0.0;
    EXPECT_NEAR(m.expectation({&x, 1}), std::ldexp(1.0, -(n + 1)), 1e-14) << "n=" << n;
  }
}

TEST(Model, HartleyExpectationMatchesClosedForm) {
  oracle::Gen g(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(1, 5);
    const QuantumModel m = random_model(g, hartley_spec(n, g.integer(0, 4)));
    const double x = g.real(0.0, m.domain_max());
    EXPECT_NEAR(m.expectation({&x, 1}), oracle_expectation(m, x), 1e-12);
    EXPECT_NEAR(m.evaluate(x), m.alpha * oracle_expectation(m, x) + m.beta, 1e-12);
  }
}

TEST(Model, FourierExpectationMatchesClosedForm) {
  oracle::Gen g(2);
  for (RotationScheme s : {RotationScheme::ry_rx, RotationScheme::rz_ry, RotationScheme::rx}) {
    ModelSpec spec;
    spec.feature = FeatureKind::fourier;
    spec.ansatz = AnsatzKind::hea;
    spec.scheme = s;
    spec.n = 3;
    spec.depth = 2;
    const QuantumModel m = random_model(g, spec);
    const double x = g.real(0.0, m.domain_max());
    EXPECT_NEAR(m.expectation({&x, 1}), oracle_expectation(m, x), 1e-12);
  }
}

TEST(Model, ExpectationIsPeriodicInRegisterSize) {
  oracle::Gen g(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(1, 5);
    const QuantumModel m = random_model(g, hartley_spec(n, 2));
    const double x = g.real(0.0, m.domain_max());
    const double shifted = x + std::ldexp(1.0, n);
    EXPECT_NEAR(m.expectation_unchecked({&x, 1}), m.expectation_unchecked({&shifted, 1}), 1e-12);
  }
}

TEST(Model, HeraHartleyBranchIsReal) {
  oracle::Gen g(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = g.integer(1, 5);
    const QuantumModel m = random_model(g, hartley_spec(n, 3));
    const double x = g.real(0.0, m.domain_max());
    const StateVector s = m.state({&x, 1});
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) ASSERT_NEAR(s[k].imag(), 0.0, 1e-13);
  }
}

TEST(Model, DomainGuard) {
  const QuantumModel m(hartley_spec(3, 1));
  EXPECT_NO_THROW((void)m.evaluate(0.0));
  EXPECT_NO_THROW((void)m.evaluate(7.5));
  EXPECT_THROW((void)m.evaluate(7.6), std::domain_error);
  EXPECT_THROW((void)m.evaluate(-0.01), std::domain_error);
  EXPECT_THROW((void)m.evaluate(std::nan("")), std::domain_error);
}

TEST(Model, ShiftRuleUsesFourNPlusTwoEvaluations) {
  oracle::Gen g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantumModel m = random_model(g, hartley_spec(4, 3));
    const double x = g.real(0.5, m.domain_max() - 0.5);
    const CountedDerivative d = m.grad_x_counted({&x, 1}, DiffMethod::shift_rule);
    EXPECT_EQ(d.evaluations, 4 * 4 + 2);
    const double fd = m.grad_x({&x, 1}, DiffMethod::central_difference);
    EXPECT_LT(std::abs(d.value - fd), 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Model, FourierShiftRuleUsesTwoEvaluationsPerQubit) {
  ModelSpec spec;
  spec.feature = FeatureKind::fourier;
  spec.ansatz = AnsatzKind::hea;
  spec.scheme = RotationScheme::ry_rx;
  spec.n = 4;
  oracle::Gen g(6);
  const QuantumModel m = random_model(g, spec);
  const double x = 3.3;
  EXPECT_EQ(m.grad_x_counted({&x, 1}, DiffMethod::shift_rule).evaluations, 8);
}

TEST(Model, DerivativesMatchFiniteDifferenceOracle) {
  oracle::Gen g(7);
  for (int trial = 0; trial < 10; ++trial) {
    const QuantumModel m = random_model(g, hartley_spec(g.integer(1, 4), 2));
    const double x = g.real(0.2, m.domain_max() - 0.2);
    const std::function<double(double)> f = [&](double t) { return m.evaluate_unchecked({&t, 1}); };
    EXPECT_NEAR(m.grad_x(x), oracle::central_first(f, x), 1e-7);
    EXPECT_NEAR(m.second_derivative_x(x), oracle::central_second(f, x), 1e-5);
  }
}

TEST(Model, ThetaGradientMatchesCentralDifferences) {
  oracle::Gen g(8);
  for (int trial = 0; trial < 10; ++trial) {
    QuantumModel m = random_model(g, hartley_spec(g.integer(1, 4), 2));
    const double x = g.real(0.0, m.domain_max());
    const ThetaGradient shift = m.grad_theta({&x, 1});
    const ThetaGradient fd = m.grad_theta({&x, 1}, DiffMethod::central_difference);
    for (std::size_t s = 0; s < shift.theta.size(); ++s) {
      EXPECT_LT(std::abs(shift.theta[s] - fd.theta[s]), 1e-6 * std::max(1.0, std::abs(fd.theta[s])));
    }
    EXPECT_NEAR(shift.alpha, m.expectation({&x, 1}), 1e-14);
    EXPECT_EQ(shift.beta, 1.0);
  }
}

TEST(Model, BivariateGradientsMatchCentralDifferences) {
  ModelSpec spec;
  spec.feature = FeatureKind::bivariate_hartley;
  spec.n = 2;
  spec.depth = 1;
  oracle::Gen g(9);
  const QuantumModel m = random_model(g, spec);
  EXPECT_EQ(m.num_qubits(), 6);
  EXPECT_EQ(m.num_angles(), 2 * m.ansatz_slots() + m.correlation_slots());
  const double c[2] = {1.3, 2.2};
  for (int f = 0; f < 2; ++f) {
    const CountedDerivative d = m.grad_x_counted(c, DiffMethod::shift_rule, f);
    EXPECT_EQ(d.evaluations, 4 * 2 + 2);
    EXPECT_NEAR(d.value, m.grad_x(c, DiffMethod::central_difference, f), 1e-7);
  }
  const ThetaGradient a = m.grad_theta(c), b = m.grad_theta(c, DiffMethod::central_difference);
  for (std::size_t s = 0; s < a.theta.size(); ++s) EXPECT_NEAR(a.theta[s], b.theta[s], 1e-7);
}

TEST(Model, JsonRoundTripIsExact) {
  oracle::Gen g(10);
  const QuantumModel m = random_model(g, hartley_spec(3, 2));
  const nlohmann::json j = m.to_json();
  const QuantumModel back = QuantumModel::from_json(j);
  EXPECT_EQ(back.to_json().dump(), j.dump());
  EXPECT_EQ(back.evaluate(2.25), m.evaluate(2.25));
}

TEST(Model, MalformedModelFilesAreRejected) {
  const QuantumModel m(hartley_spec(2, 1));
  nlohmann::json j = m.to_json();
  j["format"] = "something-else";
  EXPECT_THROW(QuantumModel::from_json(j), ConfigError);
  j = m.to_json();
  j["theta"].push_back(0.0);
  EXPECT_THROW(QuantumModel::from_json(j), ConfigError);
  j = m.to_json();
  j.erase("alpha");
  EXPECT_THROW(QuantumModel::from_json(j), ConfigError);
}

TEST(Model, EnumNamesRoundTrip) {
  for (FeatureKind k : {FeatureKind::hartley, FeatureKind::fourier, FeatureKind::bivariate_hartley}) {
    EXPECT_EQ(parse_feature_kind(feature_kind_name(k)), k);
  }
  EXPECT_EQ(parse_ansatz_kind("hera"), AnsatzKind::hera);
  EXPECT_FALSE(parse_ansatz_kind("qaoa"));
}

}  // namespace
}  // namespace qh
