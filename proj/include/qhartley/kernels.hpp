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
#include <string_view>

#include "qhartley/types.hpp"

// Data-parallel inner loops of the statevector simulator. Every kernel has a
// scalar reference implementation; SIMD variants are selected at runtime and
// must agree with the reference to rounding (see tests/kernels_test.cpp).
namespace qh::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// A 2x2 update of amplitude pairs (i, i + stride) where bit `stride` of i is
/// clear. Pairs whose index fails `(i & ctrl_mask) == ctrl_value` are left
/// alone, or zeroed when `zero_uncontrolled` is set (used to apply the
/// derivative of a controlled gate).
struct PairOp {
  cplx m00, m01, m10, m11;
  std::uint64_t stride = 1;
  std::uint64_t ctrl_mask = 0;
  std::uint64_t ctrl_value = 0;
  bool zero_uncontrolled = false;
};

using ApplyPairFn = void (*)(cplx* amps, std::uint64_t size, const PairOp& op);
using NormSquaredFn = double (*)(const cplx* amps, std::uint64_t size);
// Returns sum_i conj(a[i]) * b[i].
using DotFn = cplx (*)(const cplx* a, const cplx* b, std::uint64_t size);

struct KernelTable {
  Isa isa;
  ApplyPairFn apply_pair;
  NormSquaredFn norm_squared;
  DotFn dot;
};

const KernelTable& scalar_kernels();

/// Null when the library was built without the variant.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);

/// The table used by StateVector. Chosen on first use: the widest ISA the CPU
/// supports, unless QHARTLEY_ISA=scalar|avx2 is set in the environment.
const KernelTable& active();

/// Overrides the active table. Throws std::invalid_argument when the ISA is
/// unavailable on this build or CPU.
void set_active(Isa isa);

}  // namespace qh::kernels
