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

#include "qhartley/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qhartley/rng.hpp"

namespace qh {

namespace {

constexpr double kPi = std::numbers::pi;

double cas(double t) { return std::cos(t) + std::sin(t); }

Eigen::MatrixXd dht(int n) {
  const Eigen::Index N = Eigen::Index{1} << n;
  Eigen::MatrixXd m(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index j = 0; j < N; ++j) {
      m(k, j) = cas(2.0 * kPi * static_cast<double>(k * j) / static_cast<double>(N)) / std::sqrt(static_cast<double>(N));
    }
  }
  return m;
}

}  // namespace

Eigen::VectorXcd hartley_branch(int n, double x, bool renormalize, bool overlap_regularizer) {
  const Circuit map = build_hartley_feature_map(n, {overlap_regularizer, false});
  const double f[1] = {x};
  const StateVector s = map.run_from_zero({f, {}});
  const Eigen::Index N = Eigen::Index{1} << n;
  Eigen::VectorXcd v(N);
  for (Eigen::Index k = 0; k < N; ++k) v(k) = s[static_cast<std::uint64_t>(k)];
  if (renormalize) {
    const double norm = v.norm();
    if (norm < 1e-15) throw std::domain_error("post-selection branch has zero weight");
    v /= norm;
  }
  return v;
}

OverlapMap overlap_map(int n, double step, double x_max, bool overlap_regularizer) {
  if (!(step > 0.0)) throw std::invalid_argument("overlap grid step must be positive");
  OverlapMap m;
  const auto points = static_cast<std::size_t>(std::floor(x_max / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) m.grid.push_back(static_cast<double>(i) * step);
  const Eigen::Index N = Eigen::Index{1} << n;
  Eigen::MatrixXcd states(N, static_cast<Eigen::Index>(points));
  for (std::size_t i = 0; i < points; ++i) {
    states.col(static_cast<Eigen::Index>(i)) = hartley_branch(n, m.grid[i], true, overlap_regularizer);
  }
  m.overlaps = states.adjoint() * states;
  return m;
}

double OverlapMap::max_far_squared(double min_distance) const {
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (std::abs(grid[i] - grid[j]) + 1e-9 < min_distance) continue;
      best = std::max(best, std::norm(overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
  }
  return best;
}

double OverlapMap::max_imaginary() const { return overlaps.imag().cwiseAbs().maxCoeff(); }

std::vector<CheckResult> verify_transforms(int n, const VerifyOptions& options) {
  if (n < 1 || n > 9) throw std::invalid_argument("verify supports 1 <= n <= 9");
  std::vector<CheckResult> out;
  const Eigen::Index N = Eigen::Index{1} << n;
  const Eigen::MatrixXd H = dht(n);

  QhtOptions qopts;
  qopts.include_sqrt_x_dagger = !options.corrupt_qht;
  const Eigen::MatrixXcd Q = circuit_to_unitary(build_qht(n, qopts), {});
  out.push_back({n, "qht_equals_dht", (Q.topLeftCorner(N, N) - H.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-10});
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2 * N, 2 * N);
  out.push_back({n, "qht_involution", (Q * Q - I).cwiseAbs().maxCoeff(), 1e-10});
  double leak = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) leak = std::max(leak, Q.col(j).tail(N).squaredNorm());
  out.push_back({n, "ancilla_clean", leak, 1e-12});

  Eigen::MatrixXcd F(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index j = 0; j < N; ++j) {
      F(k, j) = std::polar(1.0 / std::sqrt(static_cast<double>(N)), 2.0 * kPi * static_cast<double>(k * j) / static_cast<double>(N));
    }
  }
  out.push_back({n, "qft_equals_dft", (circuit_to_unitary(build_qft(n), {}) - F).cwiseAbs().maxCoeff(), 1e-10});

  double cas_err = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index l = 0; l < N; ++l) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < N; ++j) {
        s += cas(2.0 * kPi * static_cast<double>(k * j) / static_cast<double>(N)) *
             cas(2.0 * kPi * static_cast<double>(l * j) / static_cast<double>(N));
      }
      cas_err = std::max(cas_err, std::abs(s - (k == l ? static_cast<double>(N) : 0.0)));
    }
  }
  out.push_back({n, "cas_orthogonality", cas_err, 1e-9});

  for (int half = 0; half < 2; ++half) {
    Eigen::MatrixXcd states(N, N);
    for (Eigen::Index j = 0; j < N; ++j) {
      states.col(j) = hartley_branch(n, static_cast<double>(j) + 0.5 * half, true);
    }
    const double err = (states.adjoint() * states - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
    out.push_back({n, half == 0 ? "gram_integers" : "gram_half_integers", err, 1e-10});
  }

  double consistency = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    const Eigen::VectorXcd h = hartley_branch(n, static_cast<double>(j), true);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    consistency = std::max(consistency, (h - sign * Q.col(j).head(N)).cwiseAbs().maxCoeff());
  }
  out.push_back({n, "feature_matches_qht_column", consistency, 1e-10});

  Rng rng(options.seed);
  double norm_err = 0.0;
  for (int i = 0; i < options.norm_points; ++i) {
    const double x = rng.uniform(0.0, std::ldexp(1.0, n) - 0.5);
    // Unnormalized branch carries a 1/sqrt(2) factor.
    const double measured = std::sqrt(2.0) * hartley_branch(n, x, false).norm();
    const double expected = std::sqrt(1.0 - std::sin(2.0 * kPi * x) / static_cast<double>(N));
    norm_err = std::max(norm_err, std::abs(measured - expected));
  }
  out.push_back({n, "branch_norm", norm_err, 1e-10});

  const OverlapMap om = overlap_map(n, 0.1, std::ldexp(1.0, n) - 1.0, true);
  out.push_back({n, "overlap_imaginary", om.max_imaginary(), 1e-10});
  CheckResult far{n, "overlap_far_regularized", om.max_far_squared(0.5), 0.05};
  far.gating = false;
  out.push_back(far);
  const OverlapMap pm = overlap_map(n, 0.1, std::ldexp(1.0, n) - 1.0, false);
  CheckResult plain{n, "overlap_far_unregularized", pm.max_far_squared(0.5), 0.5};
  plain.gating = false;
  plain.above = true;
  out.push_back(plain);
  return out;
}

}  // namespace qh
