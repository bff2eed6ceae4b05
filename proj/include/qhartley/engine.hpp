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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qhartley/model.hpp"

// Batched evaluation of a model over a fixed grid, used by the trainer.
//
// The feature states psi(x) do not depend on the trainable angles, so they
// are prepared once (with their x-derivatives when needed). The model output
// reduces to overlaps c(x) = <chi|psi(x)> with chi = U^dagger |0>, where U is
// the trainable block; angle gradients come from one reverse sweep through U.
namespace qh {

struct GridValues {
  std::vector<double> f;   // p(x_m)
  std::vector<double> f1;  // d p / dx (order >= 1)
  std::vector<double> f2;  // d^2 p / dx^2 (order >= 2)
};

class GridEngine {
 public:
  /// `order` is the highest x-derivative needed (0, 1 or 2). The model fixes
  /// the architecture; its angles are read on every call.
  GridEngine(const QuantumModel& model, std::vector<double> grid, int order = 0);

  const std::vector<double>& grid() const noexcept { return grid_; }
  int order() const noexcept { return order_; }

  GridValues evaluate(const QuantumModel& m) const;
  /// Gradient of sum_m (w0[m] f_m + w1[m] f1_m + w2[m] f2_m). Spans for
  /// derivative orders above `order` must be empty.
  ThetaGradient gradient(const QuantumModel& m, std::span<const double> w0, std::span<const double> w1 = {},
                         std::span<const double> w2 = {}) const;

 private:
  struct Overlaps {
    std::vector<cplx> c0, c1, c2;
  };
  Overlaps overlaps(const QuantumModel& m) const;

  std::vector<double> grid_;
  int order_;
  Circuit trainable_;
  Circuit trainable_adjoint_;
  std::vector<FeatureJet> jets_;
};

/// Bivariate grid xs x ys; values are row-major f[i * ys.size() + j].
class GridEngine2D {
 public:
  GridEngine2D(const QuantumModel& model, std::vector<double> xs, std::vector<double> ys);

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }

  std::vector<double> evaluate(const QuantumModel& m) const;
  ThetaGradient gradient(const QuantumModel& m, std::span<const double> w) const;

 private:
  Eigen::MatrixXcd overlaps(const QuantumModel& m) const;

  std::vector<double> xs_, ys_;
  Circuit trainable_;
  Circuit trainable_adjoint_;
  Eigen::MatrixXcd psi_x_;  // rows: grid points, columns: register basis
  Eigen::MatrixXcd psi_y_;
};

}  // namespace qh
