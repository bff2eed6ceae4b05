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

#include <vector>

#include "qhartley/builders.hpp"
#include "qhartley/circuit.hpp"
#include "qhartley/kernels.hpp"
#include "support/oracles.hpp"

namespace qh {
namespace {

using kernels::Isa;

const kernels::KernelTable* simd() {
  const auto* t = kernels::avx2_kernels();
  return t && kernels::cpu_supports(Isa::avx2) ? t : nullptr;
}

kernels::PairOp random_op(oracle::Gen& g, int n) {
  kernels::PairOp op;
  op.m00 = {g.real(-1, 1), g.real(-1, 1)};
  op.m01 = {g.real(-1, 1), g.real(-1, 1)};
  op.m10 = {g.real(-1, 1), g.real(-1, 1)};
  op.m11 = {g.real(-1, 1), g.real(-1, 1)};
  const int target = g.integer(0, n - 1);
  op.stride = std::uint64_t{1} << target;
  if (n > 1 && g.integer(0, 1)) {
    int c = g.integer(0, n - 1);
    if (c == target) c = (c + 1) % n;
    op.ctrl_mask = std::uint64_t{1} << c;
    op.ctrl_value = g.integer(0, 1) ? op.ctrl_mask : 0;
    op.zero_uncontrolled = g.integer(0, 1);
  }
  return op;
}

TEST(Kernels, ScalarTableAlwaysAvailable) {
  EXPECT_EQ(kernels::scalar_kernels().isa, Isa::scalar);
  EXPECT_TRUE(kernels::cpu_supports(Isa::scalar));
}

TEST(Kernels, Avx2PairUpdateMatchesScalar) {
  const auto* fast = simd();
  if (!fast) GTEST_SKIP() << "AVX2 unavailable";
  oracle::Gen g(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(1, 9);
    const auto init = g.state(n);
    const kernels::PairOp op = random_op(g, n);
    std::vector<cplx> a(init.begin(), init.end()), b = a;
    kernels::scalar_kernels().apply_pair(a.data(), a.size(), op);
    fast->apply_pair(b.data(), b.size(), op);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_NEAR(a[i].real(), b[i].real(), 1e-14) << "trial " << trial << " index " << i;
      ASSERT_NEAR(a[i].imag(), b[i].imag(), 1e-14) << "trial " << trial << " index " << i;
    }
  }
}

TEST(Kernels, Avx2ReductionsMatchScalar) {
  const auto* fast = simd();
  if (!fast) GTEST_SKIP() << "AVX2 unavailable";
  oracle::Gen g(12);
  for (int n = 0; n <= 10; ++n) {
    const auto x = g.state(n), y = g.state(n);
    const auto& ref = kernels::scalar_kernels();
    EXPECT_NEAR(ref.norm_squared(x.data(), x.size()), fast->norm_squared(x.data(), x.size()), 1e-13);
    const cplx d0 = ref.dot(x.data(), y.data(), x.size());
    const cplx d1 = fast->dot(x.data(), y.data(), x.size());
    EXPECT_NEAR(std::abs(d0 - d1), 0.0, 1e-13) << "n=" << n;
  }
}

TEST(Kernels, WholeCircuitAgreesAcrossIsas) {
  if (!simd()) GTEST_SKIP() << "AVX2 unavailable";
  const Circuit qht = build_qht(5);
  Circuit c(6, 0, 1);
  c.append(build_hartley_feature_map(5));
  c.append(qht);
  const double x = 3.7;
  const Bindings b{{&x, 1}, {}};

  kernels::set_active(Isa::scalar);
  const StateVector ref = c.run_from_zero(b);
  kernels::set_active(Isa::avx2);
  const StateVector fast = c.run_from_zero(b);
  for (std::uint64_t i = 0; i < ref.dimension(); ++i) EXPECT_NEAR(std::abs(ref[i] - fast[i]), 0.0, 1e-13);
}

TEST(Kernels, UnavailableIsaIsRejected) {
  if (kernels::avx2_kernels() && kernels::cpu_supports(Isa::avx2)) {
    EXPECT_NO_THROW(kernels::set_active(Isa::avx2));
  } else {
    EXPECT_THROW(kernels::set_active(Isa::avx2), std::invalid_argument);
  }
  kernels::set_active(Isa::scalar);
  EXPECT_EQ(kernels::active().isa, Isa::scalar);
}

}  // namespace
}  // namespace qh
