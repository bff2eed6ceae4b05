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

#include "qhartley/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace qh {

double Angle::value(const Bindings& b) const {
  switch (source) {
    case Source::constant:
      return offset;
    case Source::feature:
      return offset + scale * b.features[static_cast<std::size_t>(index)];
    case Source::trainable:
      return offset + scale * b.params[static_cast<std::size_t>(index)];
  }
  return offset;
}

Circuit::Circuit(int n_qubits, int n_params, int n_features)
    : n_qubits_(n_qubits), n_params_(n_params), n_features_(n_features) {
  if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  if (n_params < 0 || n_features < 0) throw std::invalid_argument("negative slot count");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range(fmt::format("qubit {} out of range for a {}-qubit circuit", q, n_qubits_));
  }
}

void Circuit::check_angle(const Angle& a) const {
  if (a.source == Angle::Source::trainable && (a.index < 0 || a.index >= n_params_)) {
    throw std::out_of_range(fmt::format("trainable slot {} exceeds declared count {}", a.index, n_params_));
  }
  if (a.source == Angle::Source::feature && (a.index < 0 || a.index >= n_features_)) {
    throw std::out_of_range(fmt::format("feature slot {} exceeds declared count {}", a.index, n_features_));
  }
}

Circuit& Circuit::add(GateKind kind, int target, Angle angle, std::vector<Control> controls) {
  if (kind == GateKind::Permutation) throw std::invalid_argument("use permutation() for permutation placements");
  check_qubit(target);
  for (const Control& c : controls) {
    check_qubit(c.qubit);
    if (c.qubit == target) throw std::invalid_argument("control coincides with target");
  }
  if (!is_parametric(kind) && angle.source != Angle::Source::constant) {
    throw std::invalid_argument("non-parametric gate given a variable angle");
  }
  check_angle(angle);
  Placement p;
  p.kind = kind;
  p.angle = angle;
  p.target = target;
  p.controls = std::move(controls);
  placements_.push_back(std::move(p));
  return *this;
}

Circuit& Circuit::swap(int a, int b) {
  cnot(a, b);
  cnot(b, a);
  return cnot(a, b);
}

Circuit& Circuit::permutation(std::vector<int> qubits, std::vector<std::uint64_t> perm, std::vector<Control> controls) {
  if (qubits.empty() || perm.size() != (std::size_t{1} << qubits.size())) {
    throw std::invalid_argument("permutation size must be 2^(number of qubits)");
  }
  std::vector<char> seen(perm.size(), 0);
  for (std::uint64_t v : perm) {
    if (v >= perm.size() || seen[v]) throw std::invalid_argument("permutation is not a bijection");
    seen[v] = 1;
  }
  for (int q : qubits) check_qubit(q);
  for (const Control& c : controls) check_qubit(c.qubit);
  Placement p;
  p.kind = GateKind::Permutation;
  p.target = qubits.front();
  p.perm_qubits = std::move(qubits);
  p.perm = std::make_shared<const std::vector<std::uint64_t>>(std::move(perm));
  p.controls = std::move(controls);
  placements_.push_back(std::move(p));
  return *this;
}

int Circuit::add_shift_group(int feature, double rate) {
  if (feature < 0 || feature >= n_features_) throw std::out_of_range("shift group feature out of range");
  groups_.push_back({feature, rate});
  return static_cast<int>(groups_.size()) - 1;
}

Circuit& Circuit::add_grouped(GateKind kind, int target, int group, double weight, double offset,
                              std::vector<Control> controls) {
  if (group < 0 || group >= static_cast<int>(groups_.size())) throw std::out_of_range("unknown shift group");
  const ShiftGroup& g = groups_[static_cast<std::size_t>(group)];
  add(kind, target, Angle::feature(g.feature, weight * g.rate, offset), std::move(controls));
  placements_.back().shift_group = group;
  placements_.back().shift_weight = weight;
  return *this;
}

void Circuit::append(const Circuit& other, std::span<const int> qubit_map, int param_offset,
                     std::span<const int> feature_map) {
  if (!qubit_map.empty() && static_cast<int>(qubit_map.size()) != other.num_qubits()) {
    throw std::invalid_argument("qubit map size does not match appended circuit");
  }
  if (qubit_map.empty() && other.num_qubits() > n_qubits_) {
    throw std::invalid_argument("appended circuit is wider than this circuit");
  }
  auto mq = [&](int q) { return qubit_map.empty() ? q : qubit_map[static_cast<std::size_t>(q)]; };
  auto mf = [&](int f) { return feature_map.empty() ? f : feature_map[static_cast<std::size_t>(f)]; };
  const int group_offset = static_cast<int>(groups_.size());
  for (const ShiftGroup& g : other.groups_) add_shift_group(mf(g.feature), g.rate);
  for (const Placement& src : other.placements_) {
    Placement p = src;
    p.target = mq(p.target);
    check_qubit(p.target);
    for (Control& c : p.controls) {
      c.qubit = mq(c.qubit);
      check_qubit(c.qubit);
    }
    for (int& q : p.perm_qubits) {
      q = mq(q);
      check_qubit(q);
    }
    if (p.angle.source == Angle::Source::trainable) p.angle.index += param_offset;
    if (p.angle.source == Angle::Source::feature) p.angle.index = mf(p.angle.index);
    check_angle(p.angle);
    if (p.shift_group >= 0) p.shift_group += group_offset;
    placements_.push_back(std::move(p));
  }
}

Circuit Circuit::adjoint() const {
  Circuit out(n_qubits_, n_params_, n_features_);
  out.groups_ = groups_;
  out.placements_.reserve(placements_.size());
  for (auto it = placements_.rbegin(); it != placements_.rend(); ++it) {
    Placement p = *it;
    if (p.kind == GateKind::Permutation) {
      std::vector<std::uint64_t> inv(p.perm->size());
      for (std::size_t v = 0; v < inv.size(); ++v) inv[(*p.perm)[v]] = v;
      p.perm = std::make_shared<const std::vector<std::uint64_t>>(std::move(inv));
    } else {
      p.kind = adjoint_kind(p.kind);
      if (is_parametric(p.kind)) {
        p.angle = p.angle.negated();
        p.shift_weight = -p.shift_weight;
      }
    }
    out.placements_.push_back(std::move(p));
  }
  return out;
}

namespace {

Matrix2 adjoint_of(const Matrix2& m) { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }

double shifted_angle(const Placement& p, const Bindings& b, std::span<const GroupShift> shifts) {
  double a = p.angle.value(b);
  if (p.shift_group >= 0) {
    for (const GroupShift& s : shifts) {
      if (s.group == p.shift_group) a += p.shift_weight * s.delta;
    }
  }
  return a;
}

void check_bindings(const Circuit& c, const Bindings& b) {
  if (static_cast<int>(b.features.size()) < c.num_features()) throw std::invalid_argument("missing feature values");
  if (static_cast<int>(b.params.size()) < c.num_params()) throw std::invalid_argument("missing parameter values");
}

}  // namespace

void apply_placement(StateVector& state, const Placement& p, double angle) {
  if (p.kind == GateKind::Permutation) {
    state.apply_permutation(p.perm_qubits, *p.perm, p.controls);
    return;
  }
  state.apply_matrix(gate_matrix(p.kind, angle), p.target, p.controls);
}

void apply_placement_adjoint(StateVector& state, const Placement& p, double angle) {
  if (p.kind == GateKind::Permutation) {
    std::vector<std::uint64_t> inv(p.perm->size());
    for (std::size_t v = 0; v < inv.size(); ++v) inv[(*p.perm)[v]] = v;
    state.apply_permutation(p.perm_qubits, inv, p.controls);
    return;
  }
  state.apply_matrix(adjoint_of(gate_matrix(p.kind, angle)), p.target, p.controls);
}

void Circuit::run(StateVector& state, const Bindings& b, std::span<const GroupShift> shifts) const {
  if (state.num_qubits() != n_qubits_) throw std::invalid_argument("state width does not match circuit");
  check_bindings(*this, b);
  for (const Placement& p : placements_) apply_placement(state, p, shifted_angle(p, b, shifts));
}

StateVector Circuit::run_from_zero(const Bindings& b, std::span<const GroupShift> shifts) const {
  StateVector s(n_qubits_);
  run(s, b, shifts);
  return s;
}

Eigen::MatrixXcd circuit_to_unitary(const Circuit& c, const Bindings& b) {
  if (c.num_qubits() > 10) throw std::invalid_argument("circuit_to_unitary is limited to 10 qubits");
  const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t k = 0; k < dim; ++k) {
    StateVector s = StateVector::basis(c.num_qubits(), k);
    c.run(s, b);
    for (std::uint64_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = s[r];
  }
  return u;
}

std::string to_text(const Circuit& c) {
  std::string out = fmt::format("circuit qubits={} params={} features={}\n", c.num_qubits(), c.num_params(),
                                c.num_features());
  for (const Placement& p : c.placements()) {
    std::string angle;
    switch (p.angle.source) {
      case Angle::Source::constant:
        angle = is_parametric(p.kind) ? fmt::format("{:.17g}", p.angle.offset) : "-";
        break;
      case Angle::Source::feature:
        angle = fmt::format("x{}*{:.17g}{:+.17g}", p.angle.index, p.angle.scale, p.angle.offset);
        break;
      case Angle::Source::trainable:
        angle = fmt::format("t{}*{:.17g}{:+.17g}", p.angle.index, p.angle.scale, p.angle.offset);
        break;
    }
    std::string line = fmt::format("{} {}", gate_name(p.kind), angle);
    if (p.kind == GateKind::Permutation) {
      line += " q=" + fmt::format("{}", fmt::join(p.perm_qubits, ","));
      line += " map=" + fmt::format("{}", fmt::join(*p.perm, ","));
    } else {
      line += fmt::format(" q={}", p.target);
    }
    if (!p.controls.empty()) {
      line += " c=";
      for (std::size_t i = 0; i < p.controls.size(); ++i) {
        if (i) line += ",";
        line += fmt::format("{}{}", p.controls[i].qubit, p.controls[i].positive ? "+" : "-");
      }
    }
    if (p.shift_group >= 0) line += fmt::format(" g={}", p.shift_group);
    out += line + "\n";
  }
  return out;
}

void axpy(StateVector& y, cplx a, const StateVector& x) {
  if (y.dimension() != x.dimension()) throw std::invalid_argument("dimension mismatch in axpy");
  auto ya = y.amplitudes();
  auto xa = x.amplitudes();
  for (std::size_t i = 0; i < ya.size(); ++i) ya[i] += a * xa[i];
}

FeatureJet run_feature_jet(const Circuit& c, const Bindings& b, int feature, const StateVector& initial) {
  if (initial.num_qubits() != c.num_qubits()) throw std::invalid_argument("state width does not match circuit");
  check_bindings(c, b);
  FeatureJet jet{initial, initial, initial};
  for (cplx& a : jet.first.amplitudes()) a = 0.0;
  for (cplx& a : jet.second.amplitudes()) a = 0.0;
  for (const Placement& p : c.placements()) {
    const double angle = p.angle.value(b);
    if (!p.angle.depends_on_feature(feature)) {
      apply_placement(jet.value, p, angle);
      apply_placement(jet.first, p, angle);
      apply_placement(jet.second, p, angle);
      continue;
    }
    const double rate = p.angle.scale;
    Matrix2 g1 = gate_derivative(p.kind, angle, 1);
    Matrix2 g2 = gate_derivative(p.kind, angle, 2);
    for (cplx& v : g1) v *= rate;
    for (cplx& v : g2) v *= rate * rate;
    const Matrix2 g = gate_matrix(p.kind, angle);

    // second' = G'' v + 2 G' v1 + G v2
    StateVector t2 = jet.value;
    t2.apply_matrix(g2, p.target, p.controls, true);
    StateVector t1 = jet.first;
    t1.apply_matrix(g1, p.target, p.controls, true);
    jet.second.apply_matrix(g, p.target, p.controls);
    axpy(jet.second, 1.0, t2);
    axpy(jet.second, 2.0, t1);
    // first' = G' v + G v1
    StateVector t0 = jet.value;
    t0.apply_matrix(g1, p.target, p.controls, true);
    jet.first.apply_matrix(g, p.target, p.controls);
    axpy(jet.first, 1.0, t0);
    jet.value.apply_matrix(g, p.target, p.controls);
  }
  return jet;
}

std::vector<double> parameter_vjp(const Circuit& c, const Bindings& b, StateVector output, StateVector cotangent) {
  if (output.num_qubits() != c.num_qubits() || cotangent.num_qubits() != c.num_qubits()) {
    throw std::invalid_argument("state width does not match circuit");
  }
  check_bindings(c, b);
  std::vector<double> grad(static_cast<std::size_t>(c.num_params()), 0.0);
  const auto& ps = c.placements();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const Placement& p = *it;
    const double angle = p.angle.value(b);
    apply_placement_adjoint(output, p, angle);
    if (p.angle.source == Angle::Source::trainable) {
      StateVector d = output;
      d.apply_matrix(gate_derivative(p.kind, angle, 1), p.target, p.controls, true);
      grad[static_cast<std::size_t>(p.angle.index)] += p.angle.scale * inner_product(d, cotangent).real();
    }
    apply_placement_adjoint(cotangent, p, angle);
  }
  return grad;
}

}  // namespace qh
