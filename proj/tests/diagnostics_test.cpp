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

#include "qhartley/diagnostics.hpp"

namespace qh {
namespace {

TEST(Verify, AllGatingChecksPassForSmallRegisters) {
  for (int n = 1; n <= 5; ++n) {
    for (const CheckResult& c : verify_transforms(n, {})) {
      if (c.gating) EXPECT_TRUE(c.passed()) << c.name << " n=" << n << " value=" << c.value;
    }
  }
}

TEST(Verify, CorruptedTransformIsCaught) {
  VerifyOptions opts;
  opts.corrupt_qht = true;
  for (int n = 2; n <= 4; ++n) {
    bool dht_failed = false;
    for (const CheckResult& c : verify_transforms(n, opts)) {
      if (c.name == "qht_equals_dht") dht_failed = !c.passed();
    }
    EXPECT_TRUE(dht_failed) << "n=" << n;
  }
}

TEST(Verify, RejectsOutOfRangeWidths) {
  EXPECT_THROW((void)verify_transforms(0, {}), std::invalid_argument);
  EXPECT_THROW((void)verify_transforms(10, {}), std::invalid_argument);
}

TEST(Overlap, MapIsHermitianWithUnitDiagonal) {
  const OverlapMap m = overlap_map(3, 0.25, 7.0, true);
  ASSERT_EQ(m.grid.size(), 29u);
  for (Eigen::Index i = 0; i < m.overlaps.rows(); ++i) {
    EXPECT_NEAR(std::abs(m.overlaps(i, i) - 1.0), 0.0, 1e-12);
    for (Eigen::Index j = 0; j < m.overlaps.cols(); ++j) {
      EXPECT_NEAR(std::abs(m.overlaps(i, j) - std::conj(m.overlaps(j, i))), 0.0, 1e-12);
    }
  }
  EXPECT_LT(m.max_imaginary(), 1e-10);
}

TEST(Overlap, IntegerPointsAreOrthogonal) {
  const OverlapMap m = overlap_map(4, 1.0, 15.0, true);
  EXPECT_LT(m.max_far_squared(1.0), 1e-20);
}

TEST(Overlap, UnregularizedMapHasLargeFarOverlaps) {
  EXPECT_GT(overlap_map(5, 0.1, 31.0, false).max_far_squared(0.5), 0.5);
}

}  // namespace
}  // namespace qh
