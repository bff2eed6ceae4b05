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

#include "qhartley/engine.hpp"

#include <stdexcept>

namespace qh {

namespace {

void check_model(const QuantumModel& m, const Circuit& trainable) {
  if (m.num_qubits() != trainable.num_qubits() || m.num_angles() != trainable.num_params() ||
      m.theta.size() != static_cast<std::size_t>(m.num_angles())) {
    throw std::invalid_argument("model does not match the engine's architecture");
  }
}

void check_weights(std::span<const double> w, std::size_t size, bool allowed) {
  if (w.empty()) return;
  if (!allowed) throw std::invalid_argument("derivative weights above the engine's order");
  if (w.size() != size) throw std::invalid_argument("weight vector does not match grid size");
}

double weight(std::span<const double> w, std::size_t i) { return w.empty() ? 0.0 : w[i]; }

}  // namespace

GridEngine::GridEngine(const QuantumModel& model, std::vector<double> grid, int order)
    : grid_(std::move(grid)), order_(order), trainable_(model.trainable_circuit()),
      trainable_adjoint_(model.trainable_circuit().adjoint()) {
  if (model.num_features() != 1) throw std::invalid_argument("GridEngine needs a univariate model");
  if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  const StateVector zero(model.num_qubits());
  jets_.reserve(grid_.size());
  for (double x : grid_) {
    if (x < 0.0 || x > model.domain_max()) throw std::domain_error("grid point outside the model domain");
    const double f[1] = {x};
    jets_.push_back(run_feature_jet(model.feature_circuit(), {f, {}}, 0, zero));
  }
}

GridEngine::Overlaps GridEngine::overlaps(const QuantumModel& m) const {
  check_model(m, trainable_);
  const StateVector chi = trainable_adjoint_.run_from_zero({{}, m.theta});
  Overlaps o;
  o.c0.reserve(jets_.size());
  for (const FeatureJet& j : jets_) {
    o.c0.push_back(inner_product(chi, j.value));
    if (order_ >= 1) o.c1.push_back(inner_product(chi, j.first));
    if (order_ >= 2) o.c2.push_back(inner_product(chi, j.second));
  }
  return o;
}

GridValues GridEngine::evaluate(const QuantumModel& m) const {
  const Overlaps o = overlaps(m);
  GridValues v;
  const std::size_t M = grid_.size();
  for (std::size_t i = 0; i < M; ++i) {
    const cplx c = o.c0[i];
    v.f.push_back(m.alpha * std::norm(c) + m.beta);
    if (order_ >= 1) v.f1.push_back(2.0 * m.alpha * std::real(std::conj(c) * o.c1[i]));
    if (order_ >= 2) {
      v.f2.push_back(2.0 * m.alpha * (std::norm(o.c1[i]) + std::real(std::conj(c) * o.c2[i])));
    }
  }
  return v;
}

ThetaGradient GridEngine::gradient(const QuantumModel& m, std::span<const double> w0, std::span<const double> w1,
                                   std::span<const double> w2) const {
  const std::size_t M = grid_.size();
  check_weights(w0, M, true);
  check_weights(w1, M, order_ >= 1);
  check_weights(w2, M, order_ >= 2);
  const Overlaps o = overlaps(m);
  const double a2 = 2.0 * m.alpha;

  // Cotangent ket: sum over points of the coefficients multiplying
  // <0|dU|psi>, <0|dU|psi'> and <0|dU|psi''> in d(loss).
  StateVector lambda(m.num_qubits());
  lambda[0] = 0.0;
  ThetaGradient g;
  for (std::size_t i = 0; i < M; ++i) {
    const double a = weight(w0, i), b = weight(w1, i), c = weight(w2, i);
    const cplx c0 = std::conj(o.c0[i]);
    const cplx c1 = order_ >= 1 ? std::conj(o.c1[i]) : cplx{};
    const cplx c2 = order_ >= 2 ? std::conj(o.c2[i]) : cplx{};
    axpy(lambda, a2 * (a * c0 + b * c1 + c * c2), jets_[i].value);
    if (order_ >= 1) axpy(lambda, a2 * (b * c0 + 2.0 * c * c1), jets_[i].first);
    if (order_ >= 2) axpy(lambda, a2 * c * c0, jets_[i].second);

    g.alpha += a * std::norm(o.c0[i]);
    if (order_ >= 1) g.alpha += b * 2.0 * std::real(c0 * o.c1[i]);
    if (order_ >= 2) g.alpha += c * 2.0 * (std::norm(o.c1[i]) + std::real(c0 * o.c2[i]));
    g.beta += a;
  }
  StateVector out = lambda;
  trainable_.run(out, {{}, m.theta});
  g.theta = parameter_vjp(trainable_, {{}, m.theta}, std::move(out), StateVector(m.num_qubits()));
  return g;
}

GridEngine2D::GridEngine2D(const QuantumModel& model, std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)), trainable_(model.trainable_circuit()),
      trainable_adjoint_(model.trainable_circuit().adjoint()) {
  if (model.feature_kind() != FeatureKind::bivariate_hartley) {
    throw std::invalid_argument("GridEngine2D needs a bivariate model");
  }
  const Circuit map = build_hartley_feature_map(model.n(), {model.spec().overlap_regularizer, false});
  const Eigen::Index D = Eigen::Index{1} << (model.n() + 1);
  auto fill = [&](const std::vector<double>& pts, Eigen::MatrixXcd& psi) {
    psi.resize(static_cast<Eigen::Index>(pts.size()), D);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] < 0.0 || pts[i] > model.domain_max()) throw std::domain_error("grid point outside the model domain");
      const double f[1] = {pts[i]};
      const StateVector s = map.run_from_zero({f, {}});
      for (Eigen::Index k = 0; k < D; ++k) psi(static_cast<Eigen::Index>(i), k) = s[static_cast<std::uint64_t>(k)];
    }
  };
  fill(xs_, psi_x_);
  fill(ys_, psi_y_);
}

Eigen::MatrixXcd GridEngine2D::overlaps(const QuantumModel& m) const {
  check_model(m, trainable_);
  const StateVector chi = trainable_adjoint_.run_from_zero({{}, m.theta});
  const Eigen::Index D = psi_x_.cols();
  // Register x occupies the high half of the index.
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> chi_mat(
      chi.amplitudes().data(), D, D);
  return psi_x_ * chi_mat.conjugate() * psi_y_.transpose();
}

std::vector<double> GridEngine2D::evaluate(const QuantumModel& m) const {
  const Eigen::MatrixXcd c = overlaps(m);
  std::vector<double> f;
  f.reserve(xs_.size() * ys_.size());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) f.push_back(m.alpha * std::norm(c(i, j)) + m.beta);
  }
  return f;
}

ThetaGradient GridEngine2D::gradient(const QuantumModel& m, std::span<const double> w) const {
  if (w.size() != xs_.size() * ys_.size()) throw std::invalid_argument("weight vector does not match grid size");
  const Eigen::MatrixXcd c = overlaps(m);
  Eigen::MatrixXcd z(c.rows(), c.cols());
  ThetaGradient g;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const double wij = w[static_cast<std::size_t>(i * c.cols() + j)];
      z(i, j) = 2.0 * m.alpha * wij * std::conj(c(i, j));
      g.alpha += wij * std::norm(c(i, j));
      g.beta += wij;
    }
  }
  const Eigen::MatrixXcd lambda_mat = psi_x_.transpose() * z * psi_y_;
  const Eigen::Index D = psi_x_.cols();
  std::vector<cplx> amps(static_cast<std::size_t>(D * D));
  for (Eigen::Index a = 0; a < D; ++a) {
    for (Eigen::Index b = 0; b < D; ++b) amps[static_cast<std::size_t>(a * D + b)] = lambda_mat(a, b);
  }
  StateVector out(m.num_qubits(), std::move(amps));
  trainable_.run(out, {{}, m.theta});
  g.theta = parameter_vjp(trainable_, {{}, m.theta}, std::move(out), StateVector(m.num_qubits()));
  return g;
}

}  // namespace qh
