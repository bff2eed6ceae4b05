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

#include <immintrin.h>

#include "qhartley/kernels.hpp"

// Built with -mavx2 -mfma; only reached after a runtime CPU check.
namespace qh::kernels {
namespace {

struct BroadcastComplex {
  __m256d re;
  __m256d im;
  explicit BroadcastComplex(cplx z) : re(_mm256_set1_pd(z.real())), im(_mm256_set1_pd(z.imag())) {}
};

// v holds two interleaved complex numbers [r0 i0 r1 i1]; returns z * v lane-wise.
inline __m256d cmul(const BroadcastComplex& z, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(z.re, v, _mm256_mul_pd(z.im, swapped));
}

void apply_pair_avx2(cplx* amps, std::uint64_t size, const PairOp& op) {
  const std::uint64_t stride = op.stride;
  double* raw = reinterpret_cast<double*>(amps);

  if (stride == 1) {
    // Both members of a pair share one register: [a0 a1].
    const __m256d col0 = _mm256_setr_pd(op.m00.real(), op.m00.imag(), op.m10.real(), op.m10.imag());
    const __m256d col1 = _mm256_setr_pd(op.m01.real(), op.m01.imag(), op.m11.real(), op.m11.imag());
    const __m256d col0_swapped_im = _mm256_permute_pd(col0, 0b1111);
    const __m256d col0_re = _mm256_permute_pd(col0, 0b0000);
    const __m256d col1_swapped_im = _mm256_permute_pd(col1, 0b1111);
    const __m256d col1_re = _mm256_permute_pd(col1, 0b0000);
    for (std::uint64_t i0 = 0; i0 < size; i0 += 2) {
      if ((i0 & op.ctrl_mask) != op.ctrl_value) {
        if (op.zero_uncontrolled) {
          _mm256_storeu_pd(raw + 2 * i0, _mm256_setzero_pd());
        }
        continue;
      }
      const __m256d v = _mm256_loadu_pd(raw + 2 * i0);
      const __m256d lo = _mm256_permute2f128_pd(v, v, 0x00);  // [a0 a0]
      const __m256d hi = _mm256_permute2f128_pd(v, v, 0x11);  // [a1 a1]
      // col * lo, with col varying per lane.
      const __m256d lo_sw = _mm256_permute_pd(lo, 0b0101);
      const __m256d hi_sw = _mm256_permute_pd(hi, 0b0101);
      __m256d out = _mm256_fmaddsub_pd(col0_re, lo, _mm256_mul_pd(col0_swapped_im, lo_sw));
      out = _mm256_add_pd(out, _mm256_fmaddsub_pd(col1_re, hi, _mm256_mul_pd(col1_swapped_im, hi_sw)));
      _mm256_storeu_pd(raw + 2 * i0, out);
    }
    return;
  }

  if (op.ctrl_mask & 1u) {
    // Neighbouring pairs differ in control status; the reference loop handles it.
    scalar_kernels().apply_pair(amps, size, op);
    return;
  }

  const BroadcastComplex m00(op.m00), m01(op.m01), m10(op.m10), m11(op.m11);
  for (std::uint64_t base = 0; base < size; base += 2 * stride) {
    for (std::uint64_t i0 = base; i0 < base + stride; i0 += 2) {
      double* p0 = raw + 2 * i0;
      double* p1 = raw + 2 * (i0 + stride);
      if ((i0 & op.ctrl_mask) != op.ctrl_value) {
        if (op.zero_uncontrolled) {
          _mm256_storeu_pd(p0, _mm256_setzero_pd());
          _mm256_storeu_pd(p1, _mm256_setzero_pd());
        }
        continue;
      }
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      _mm256_storeu_pd(p0, _mm256_add_pd(cmul(m00, a0), cmul(m01, a1)));
      _mm256_storeu_pd(p1, _mm256_add_pd(cmul(m10, a0), cmul(m11, a1)));
    }
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_squared_avx2(const cplx* amps, std::uint64_t size) {
  const double* raw = reinterpret_cast<const double*>(amps);
  __m256d acc = _mm256_setzero_pd();
  std::uint64_t i = 0;
  for (; i + 2 <= size; i += 2) {
    const __m256d v = _mm256_loadu_pd(raw + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; i < size; ++i) total += std::norm(amps[i]);
  return total;
}

cplx dot_avx2(const cplx* a, const cplx* b, std::uint64_t size) {
  const double* ra = reinterpret_cast<const double*>(a);
  const double* rb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
  std::uint64_t i = 0;
  for (; i + 2 <= size; i += 2) {
    const __m256d va = _mm256_loadu_pd(ra + 2 * i);
    const __m256d vb = _mm256_loadu_pd(rb + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; i < size; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

constexpr KernelTable kAvx2{Isa::avx2, &apply_pair_avx2, &norm_squared_avx2, &dot_avx2};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2; }

}  // namespace qh::kernels
