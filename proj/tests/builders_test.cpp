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
#include <numbers>

#include "qhartley/builders.hpp"
#include "qhartley/circuit.hpp"
#include "qhartley/diagnostics.hpp"
#include "support/oracles.hpp"

namespace qh {
namespace {

double max_diff(const Eigen::MatrixXcd& u, const oracle::Dense& ref, Eigen::Index rows, Eigen::Index cols) {
  double err = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) err = std::max(err, std::abs(u(r, c) - ref[r][c]));
  }
  return err;
}

class PerWidth : public ::testing::TestWithParam<int> {};

TEST_P(PerWidth, QftEqualsDftMatrix) {
  const int n = GetParam();
  const Eigen::MatrixXcd u = circuit_to_unitary(build_qft(n), {});
  EXPECT_LT(max_diff(u, oracle::dft(n), 1 << n, 1 << n), 1e-12);
  const Eigen::MatrixXcd inv = circuit_to_unitary(build_iqft(n), {});
  EXPECT_LT((inv * u - Eigen::MatrixXcd::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(PerWidth, QhtAncillaBlockIsDhtAndInvolutory) {
  const int n = GetParam();
  const Eigen::Index N = Eigen::Index{1} << n;
  const Eigen::MatrixXcd q = circuit_to_unitary(build_qht(n), {});
  EXPECT_LT(max_diff(q, oracle::dht(n), N, N), 1e-10);
  EXPECT_LT((q * q - Eigen::MatrixXcd::Identity(2 * N, 2 * N)).cwiseAbs().maxCoeff(), 1e-10);
  for (Eigen::Index j = 0; j < N; ++j) EXPECT_LT(q.col(j).tail(N).squaredNorm(), 1e-12);
}

TEST_P(PerWidth, ReflectionRealizationsAgree) {
  const int n = GetParam();
  const Eigen::MatrixXcd a = circuit_to_unitary(build_controlled_reflection(n, ReflectionRealization::permutation), {});
  const Eigen::MatrixXcd b = circuit_to_unitary(build_controlled_reflection(n, ReflectionRealization::gates), {});
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXcd qa = circuit_to_unitary(build_qht(n, {ReflectionRealization::gates, true}), {});
  EXPECT_LT(max_diff(qa, oracle::dht(n), 1 << n, 1 << n), 1e-10);
}

TEST_P(PerWidth, DroppingSqrtXDaggerBreaksTheTransform) {
  const int n = GetParam();
  const Eigen::MatrixXcd q = circuit_to_unitary(build_qht(n, {ReflectionRealization::permutation, false}), {});
  // At n = 1 the reflection is trivial and the block survives; the ancilla does not come back clean.
  double leak = 0.0;
  for (Eigen::Index j = 0; j < (1 << n); ++j) leak = std::max(leak, q.col(j).tail(1 << n).squaredNorm());
  const double involution = (q * q - Eigen::MatrixXcd::Identity(2 << n, 2 << n)).cwiseAbs().maxCoeff();
  EXPECT_TRUE(max_diff(q, oracle::dht(n), 1 << n, 1 << n) > 1e-3 || leak > 1e-3 || involution > 1e-3);
  if (n >= 2) EXPECT_GT(max_diff(q, oracle::dht(n), 1 << n, 1 << n), 1e-3);
}

TEST_P(PerWidth, HartleyFeatureStateMatchesCasColumn) {
  const int n = GetParam();
  oracle::Gen g(100 + n);
  // Off the integers only the regularized map yields the Hartley column.
  for (bool reg : {true, false}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double x = reg ? g.real(0.0, std::ldexp(1.0, n) - 0.5) : g.integer(0, (1 << n) - 1);
      const Eigen::VectorXcd v = hartley_branch(n, x, true, reg);
      const std::vector<double> h = oracle::hartley_column(n, x);
      oracle::cplx overlap = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) overlap += h[k] * v(static_cast<Eigen::Index>(k));
      EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10) << "x=" << x << " regularizer=" << reg;
    }
  }
}

TEST_P(PerWidth, BranchWeightFollowsNormFormula) {
  const int n = GetParam();
  oracle::Gen g(200 + n);
  for (int trial = 0; trial < 25; ++trial) {
    const double x = g.real(0.0, std::ldexp(1.0, n) - 0.5);
    const double weight = hartley_branch(n, x, false).squaredNorm();
    EXPECT_NEAR(weight, 0.5 * (1.0 - std::sin(2.0 * std::numbers::pi * x) / std::ldexp(1.0, n)), 1e-12);
  }
}

TEST_P(PerWidth, DecomposedFeatureMapHasSameUnitary) {
  const int n = GetParam();
  const double x = 1.37;
  const Bindings b{{&x, 1}, {}};
  const Eigen::MatrixXcd a = circuit_to_unitary(build_hartley_feature_map(n, {true, false}), b);
  const Eigen::MatrixXcd d = circuit_to_unitary(build_hartley_feature_map(n, {true, true}), b);
  // Equal up to the global phase of each decomposed controlled phase.
  const oracle::cplx tr = (d.adjoint() * a).trace();
  EXPECT_LT((a - (tr / std::abs(tr)) * d).cwiseAbs().maxCoeff(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Widths, PerWidth, ::testing::Values(1, 2, 3, 4, 5));

TEST(Builders, ShiftGroupCountIsTwoPerRegisterQubitPlusOne) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(static_cast<int>(build_hartley_feature_map(n, {true, true}).shift_groups().size()), 2 * n + 1);
    EXPECT_EQ(static_cast<int>(build_phase_feature_map(n).shift_groups().size()), n);
  }
}

TEST(Builders, HeraProducesRealAmplitudes) {
  oracle::Gen g(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = g.integer(1, 6), d = g.integer(0, 5);
    const Circuit c = build_hera(n, d);
    ASSERT_EQ(c.num_params(), n * (d + 1));
    std::vector<double> theta = g.reals(c.num_params(), -4, 4);
    const StateVector s = c.run_from_zero({{}, theta});
    for (std::uint64_t i = 0; i < s.dimension(); ++i) ASSERT_NEAR(s[i].imag(), 0.0, 1e-14);
  }
}

TEST(Builders, HeaParameterCounts) {
  for (int n = 2; n <= 5; ++n) {
    for (RotationScheme s : {RotationScheme::ry_rx, RotationScheme::rz_ry, RotationScheme::rx_rz}) {
      EXPECT_EQ(build_hea(n, 1, s).num_params(), 2 * n * 2);
    }
    for (RotationScheme s : {RotationScheme::rx, RotationScheme::ry, RotationScheme::rz}) {
      EXPECT_EQ(build_hea(n, 1, s).num_params(), n * 2);
    }
  }
  EXPECT_EQ(build_hera(4, 1).num_params(), 8);
  EXPECT_EQ(build_hea(4, 1, RotationScheme::ry_rx).num_params(), 16);
}

TEST(Builders, SchemeNamesRoundTrip) {
  for (RotationScheme s : {RotationScheme::ry_rx, RotationScheme::rz_ry, RotationScheme::rx_rz, RotationScheme::rx,
                           RotationScheme::ry, RotationScheme::rz}) {
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  }
  EXPECT_FALSE(parse_scheme("ryry"));
}

TEST(Builders, CorrelationCircuitIsRealAndSized) {
  const int n = 3;
  const Circuit c = build_correlation_circuit(n);
  EXPECT_EQ(c.num_qubits(), 2 * n + 2);
  EXPECT_EQ(c.num_params(), 6 * n);
  oracle::Gen g(4);
  const StateVector s = c.run_from_zero({{}, g.reals(6 * n, -3, 3)});
  for (std::uint64_t i = 0; i < s.dimension(); ++i) EXPECT_NEAR(s[i].imag(), 0.0, 1e-14);
  // Ancilla qubits 0 and n+1 are untouched.
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    const bool anc = ((i >> (2 * n + 1)) & 1) || ((i >> n) & 1);
    if (anc) {
      EXPECT_NEAR(std::abs(s[i]), 0.0, 1e-14);
    }
  }
}

TEST(Builders, HeraEntanglerOffsetsCycle) {
  EXPECT_EQ(entangler_offset(4, 1), 1);
  EXPECT_EQ(entangler_offset(4, 3), 3);
  EXPECT_EQ(entangler_offset(4, 4), 1);
}

TEST(Builders, BitstringNetworkOnlyForSmallExtensions) {
  EXPECT_TRUE(bitstring_network_supported(0));
  EXPECT_TRUE(bitstring_network_supported(1));
  EXPECT_FALSE(bitstring_network_supported(2));
  const Circuit net = build_bitstring_network(1, 6);
  EXPECT_EQ(net.placements().size(), 4u);
}

}  // namespace
}  // namespace qh
