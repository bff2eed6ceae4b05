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

// Reference implementations written independently of the library: dense
// transform matrices from their defining sums, quadrature, difference
// stencils, and small seeded generators for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Dense = std::vector<std::vector<cplx>>;

inline Dense dft(int n) {
  const int N = 1 << n;
  Dense m(N, std::vector<cplx>(N));
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < N; ++j) {
      m[k][j] = std::polar(1.0 / std::sqrt(double(N)), 2.0 * std::numbers::pi * k * j / N);
    }
  }
  return m;
}

inline double cas(double t) { return std::cos(t) + std::sin(t); }

inline Dense dht(int n) {
  const int N = 1 << n;
  Dense m(N, std::vector<cplx>(N));
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < N; ++j) m[k][j] = cas(2.0 * std::numbers::pi * k * j / N) / std::sqrt(double(N));
  }
  return m;
}

/// Normalized Hartley state: cas[(2πk/N - π)x] / (sqrt(N) 𝒩(x)) with
/// 𝒩(x) = sqrt(1 - sin(2πx)/N). At integer x = j it is (-1)^j times DHT column j.
inline std::vector<double> hartley_column(int n, double x) {
  const int N = 1 << n;
  const double norm = std::sqrt(1.0 - std::sin(2.0 * std::numbers::pi * x) / N);
  std::vector<double> v(N);
  for (int k = 0; k < N; ++k) v[k] = cas((2.0 * std::numbers::pi * k / N - std::numbers::pi) * x) / (std::sqrt(double(N)) * norm);
  return v;
}

inline double trapezoid(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < panels; ++i) s += f(a + i * h);
  return s * h;
}

inline double central_first(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Fourth-order stencil; error O(h^4) so h = 1e-3 gives ~1e-10 on smooth f.
inline double central_second(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

/// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::vector<double> reals(std::size_t count, double lo, double hi) {
    std::vector<double> v(count);
    for (double& x : v) x = real(lo, hi);
    return v;
  }

  /// Random normalized state of dimension 2^n.
  std::vector<cplx> state(int n) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    double s = 0.0;
    for (cplx& a : v) {
      a = {g(rng_), g(rng_)};
      s += std::norm(a);
    }
    for (cplx& a : v) a /= std::sqrt(s);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
