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

#include "qhartley/kernels.hpp"

namespace qh::kernels {
namespace {

void apply_pair_scalar(cplx* amps, std::uint64_t size, const PairOp& op) {
  const std::uint64_t stride = op.stride;
  for (std::uint64_t base = 0; base < size; base += 2 * stride) {
    for (std::uint64_t i0 = base; i0 < base + stride; ++i0) {
      const std::uint64_t i1 = i0 + stride;
      if ((i0 & op.ctrl_mask) != op.ctrl_value) {
        if (op.zero_uncontrolled) {
          amps[i0] = 0.0;
          amps[i1] = 0.0;
        }
        continue;
      }
      const cplx a0 = amps[i0];
      const cplx a1 = amps[i1];
      amps[i0] = op.m00 * a0 + op.m01 * a1;
      amps[i1] = op.m10 * a0 + op.m11 * a1;
    }
  }
}

double norm_squared_scalar(const cplx* amps, std::uint64_t size) {
  double acc = 0.0;
  for (std::uint64_t i = 0; i < size; ++i) acc += std::norm(amps[i]);
  return acc;
}

cplx dot_scalar(const cplx* a, const cplx* b, std::uint64_t size) {
  double re = 0.0;
  double im = 0.0;
  for (std::uint64_t i = 0; i < size; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

constexpr KernelTable kScalar{Isa::scalar, &apply_pair_scalar, &norm_squared_scalar, &dot_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace qh::kernels
