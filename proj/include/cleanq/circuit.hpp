// Copyright 2026 The cleanq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cleanq/dense.hpp"
#include "cleanq/pauli.hpp"

namespace cleanq {

// Elementary gate: a Pauli rotation U(b,t) = e^{-i sigma_b t}, optionally
// conditioned on one control qubit being in a stated basis value. The axis is
// a full-length string over all qubits, with I at the control position for
// controlled gates. The controlled gate acts as the identity on the
// non-matching control branch; every gate therefore has determinant 1, so
// compiled permutations like the zero-controlled NOT are realized up to a
// global phase.
struct Gate {
  enum class Kind { PauliRotation, ControlledPauliRotation };

  Kind kind = Kind::PauliRotation;
  PauliString axis;
  double angle = 0.0;
  int control = 0;        // 1-based; meaningful only for controlled gates
  int control_value = 0;  // 0 or 1

  static Gate rotation(PauliString axis, double angle) {
    if (axis.is_identity())
      throw std::invalid_argument("Gate: rotation axis must not be identity");
    Gate g;
    g.kind = Kind::PauliRotation;
    g.axis = std::move(axis);
    g.angle = angle;
    return g;
  }

  static Gate controlled_rotation(int control, int control_value,
                                  PauliString axis, double angle) {
    if (axis.is_identity())
      throw std::invalid_argument("Gate: rotation axis must not be identity");
    if (control < 1 || control > axis.num_qubits())
      throw std::invalid_argument("Gate: control qubit out of range");
    if (axis.op(control) != PauliOp::I)
      throw std::invalid_argument("Gate: axis must not act on the control qubit");
    if (control_value != 0 && control_value != 1)
      throw std::invalid_argument("Gate: control value must be 0 or 1");
    Gate g;
    g.kind = Kind::ControlledPauliRotation;
    g.axis = std::move(axis);
    g.angle = angle;
    g.control = control;
    g.control_value = control_value;
    return g;
  }

  Gate inverse() const {
    Gate g = *this;
    g.angle = -angle;
    return g;
  }
};

// Ordered gate list; gates[0] acts first in time, so the dense form is
// G_k ... G_1 as a matrix product.
struct GateNetwork {
  int n = 0;
  std::vector<Gate> gates;

  GateNetwork() = default;
  explicit GateNetwork(int n) : n(n) {
    if (n < 1) throw std::invalid_argument("GateNetwork: need at least 1 qubit");
  }

  void append(Gate g) {
    if (g.axis.num_qubits() != n)
      throw std::invalid_argument("GateNetwork: gate support does not match register");
    gates.push_back(std::move(g));
  }

  void append(const GateNetwork& other) {
    if (other.n != n)
      throw std::invalid_argument("GateNetwork: register size mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  }

  GateNetwork inverse() const {
    GateNetwork out(n);
    out.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it)
      out.gates.push_back(it->inverse());
    return out;
  }
};

// Hermitian H = sum_j c_j sigma_{b_j}. Duplicate strings are merged on
// construction and zero coefficients dropped; term order is otherwise
// preserved (Trotter error constants depend on it).
struct PauliSum {
  int n = 0;
  std::vector<std::pair<double, PauliString>> terms;

  PauliSum() = default;

  PauliSum(int n, std::vector<std::pair<double, PauliString>> input) : n(n) {
    if (n < 1) throw std::invalid_argument("PauliSum: need at least 1 qubit");
    std::map<PauliString, size_t> seen;
    for (auto& [c, b] : input) {
      if (!std::isfinite(c))
        throw std::invalid_argument("PauliSum: non-finite coefficient");
      if (b.num_qubits() != n)
        throw std::invalid_argument("PauliSum: term size mismatch");
      auto it = seen.find(b);
      if (it == seen.end()) {
        seen.emplace(b, terms.size());
        terms.emplace_back(c, b);
      } else {
        terms[it->second].first += c;
      }
    }
    std::erase_if(terms, [](const auto& t) { return t.first == 0.0; });
  }

  // Upper bound on the spectral radius: sum of |c_j| (identity included).
  double coefficient_l1() const {
    double sum = 0;
    for (const auto& [c, b] : terms) sum += std::abs(c);
    return sum;
  }
};

inline Eigen::MatrixXcd gate_unitary(const Gate& g, int n,
                                     int dense_limit = kDefaultDenseLimit) {
  if (g.axis.num_qubits() != n)
    throw std::invalid_argument("gate_unitary: gate support does not match n");
  check_dense_limit(n, dense_limit);
  const std::uint64_t dim = std::uint64_t{1} << n;
  auto rotation = [&](const PauliString& axis, double angle) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd m = pauli_matrix(axis, dense_limit);
    return std::cos(angle) * Eigen::MatrixXcd::Identity(dim, dim) -
           complexd(0, 1) * std::sin(angle) * m;
  };
  if (g.kind == Gate::Kind::PauliRotation) return rotation(g.axis, g.angle);
  // exp(-i theta sigma Pi_{c,v}) with projector Pi = (I + s_v Z_c)/2 splits
  // into two commuting plain rotations about sigma and sigma Z_c.
  double sv = g.control_value == 0 ? 1.0 : -1.0;
  PauliString axis_z = g.axis;
  axis_z.set_op(g.control, PauliOp::Z);
  return rotation(axis_z, sv * g.angle / 2) * rotation(g.axis, g.angle / 2);
}

// m <- e^{-i axis angle} m without a matmul: the factor is cos*I - i sin*sigma
// and sigma*m is a phased row permutation. m needs 2^n rows, any column count.
inline void rotation_apply_left(const PauliString& axis, double angle,
                                Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd sm = m;
  pauli_apply_left(axis, sm);
  m = std::cos(angle) * m - complexd(0, 1) * std::sin(angle) * sm;
}

// m <- (network unitary) * m, gate by gate.
inline void network_apply_left(const GateNetwork& net, Eigen::MatrixXcd& m) {
  for (const Gate& g : net.gates) {
    if (g.kind == Gate::Kind::PauliRotation) {
      rotation_apply_left(g.axis, g.angle, m);
    } else {
      double sv = g.control_value == 0 ? 1.0 : -1.0;
      PauliString axis_z = g.axis;
      axis_z.set_op(g.control, PauliOp::Z);
      rotation_apply_left(g.axis, g.angle / 2, m);
      rotation_apply_left(axis_z, sv * g.angle / 2, m);
    }
  }
}

inline Eigen::MatrixXcd network_unitary(const GateNetwork& net,
                                        int dense_limit = kDefaultDenseLimit) {
  check_dense_limit(net.n, dense_limit);
  const std::uint64_t dim = std::uint64_t{1} << net.n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  network_apply_left(net, u);
  return u;
}

// Conditional form of a network: a new control qubit is prepended as qubit 1
// and the whole network runs only when it holds `control_value`. Plain
// rotations become controlled rotations; already-controlled rotations are
// recompiled into two gates via the commuting-projector split, so the gate
// count grows by at most a factor of 2.
inline GateNetwork conditional_u(const GateNetwork& net, int control_value) {
  if (control_value != 0 && control_value != 1)
    throw std::invalid_argument("conditional_u: control value must be 0 or 1");
  GateNetwork out(net.n + 1);
  for (const Gate& g : net.gates) {
    PauliString axis = shifted(g.axis, 1, net.n + 1);
    if (g.kind == Gate::Kind::PauliRotation) {
      out.append(Gate::controlled_rotation(1, control_value, axis, g.angle));
    } else {
      double sv = g.control_value == 0 ? 1.0 : -1.0;
      PauliString axis_z = axis;
      axis_z.set_op(g.control + 1, PauliOp::Z);
      out.append(Gate::controlled_rotation(1, control_value, axis, g.angle / 2));
      out.append(
          Gate::controlled_rotation(1, control_value, axis_z, sv * g.angle / 2));
    }
  }
  return out;
}

// First-order product formula: `steps` repetitions of e^{-i c_j sigma_j t/steps}
// in term order. Identity terms contribute only a global phase and are
// skipped. Per-step error is O(delta^2), accumulated error O(t delta).
inline GateNetwork trotterize(const PauliSum& h, double t, int steps) {
  if (!std::isfinite(t)) throw std::invalid_argument("trotterize: non-finite t");
  if (steps < 1) throw std::invalid_argument("trotterize: steps must be >= 1");
  GateNetwork out(h.n);
  double delta = t / steps;
  for (int s = 0; s < steps; ++s)
    for (const auto& [c, b] : h.terms)
      if (!b.is_identity()) out.append(Gate::rotation(b, c * delta));
  return out;
}

// Network mapping |0>|b> -> |0> e^{-iHt/2} |b> and |1>|b> -> |1> e^{+iHt/2} |b>
// (up to Trotter error): each term c sigma_b of H lifts to the plain rotation
// axis Z^(1) (x) sigma_b, whose Z eigenvalue negates the angle on the |1>
// branch. Identity terms of H lift to Z^(1) rotations (the branches differ by
// a relative phase, which is physical here).
inline GateNetwork conditional_half_evolutions(const PauliSum& h, double t,
                                               int steps) {
  std::vector<std::pair<double, PauliString>> lifted;
  lifted.reserve(h.terms.size());
  for (const auto& [c, b] : h.terms) {
    PauliString up = shifted(b, 1, h.n + 1);
    up.set_op(1, PauliOp::Z);
    lifted.emplace_back(c, up);
  }
  return trotterize(PauliSum(h.n + 1, std::move(lifted)), t / 2, steps);
}

namespace detail {

using ControlList = std::vector<std::pair<int, int>>;  // (qubit, value)

inline double control_sign(int value) { return value == 0 ? 1.0 : -1.0; }

inline PauliString single_axis(int n, int qubit, PauliOp op) {
  return PauliString::single(n, qubit, op);
}

inline void append_controlled_x(GateNetwork& net, const ControlList& controls,
                                int target);
inline void append_controlled_rotation(GateNetwork& net,
                                       const ControlList& controls,
                                       const PauliString& axis, double theta);

// Multi-controlled phase: multiplies the amplitude by e^{i phi} exactly when
// every control matches its value, up to a global phase. Compiled from Z-axis
// rotations whose signs telescope over the control values.
inline void append_controlled_phase(GateNetwork& net, const ControlList& controls,
                                    double phi) {
  const int m = static_cast<int>(controls.size());
  if (m == 0) return;  // a pure global phase is dropped
  if (m == 1) {
    auto [c, v] = controls[0];
    net.append(Gate::rotation(single_axis(net.n, c, PauliOp::Z),
                              -control_sign(v) * phi / 2));
    return;
  }
  if (m == 2) {
    auto [c1, v1] = controls[0];
    auto [c2, v2] = controls[1];
    double s1 = control_sign(v1), s2 = control_sign(v2);
    PauliString zz = single_axis(net.n, c1, PauliOp::Z);
    zz.set_op(c2, PauliOp::Z);
    net.append(Gate::rotation(single_axis(net.n, c1, PauliOp::Z), -s1 * phi / 4));
    net.append(Gate::rotation(single_axis(net.n, c2, PauliOp::Z), -s2 * phi / 4));
    net.append(Gate::rotation(zz, -s1 * s2 * phi / 4));
    return;
  }
  // Peel the last control: a phase of phi/2 on its matching Z branch plus a
  // phase of phi/2 conditioned on the remaining controls.
  ControlList rest(controls.begin(), controls.end() - 1);
  auto [cm, vm] = controls.back();
  append_controlled_rotation(net, rest, single_axis(net.n, cm, PauliOp::Z),
                             -control_sign(vm) * phi / 2);
  append_controlled_phase(net, rest, phi / 2);
}

// Multi-controlled Pauli rotation e^{-i sigma theta} active when all controls
// match, up to a global phase. Standard recursion: halve the angle on the
// last control, toggle that control with a multi-controlled X of the rest,
// undo, recurse on the rest.
inline void append_controlled_rotation(GateNetwork& net,
                                       const ControlList& controls,
                                       const PauliString& axis, double theta) {
  const int m = static_cast<int>(controls.size());
  if (m == 0) {
    net.append(Gate::rotation(axis, theta));
    return;
  }
  auto [cm, vm] = controls.back();
  if (m == 1) {
    net.append(Gate::controlled_rotation(cm, vm, axis, theta));
    return;
  }
  ControlList rest(controls.begin(), controls.end() - 1);
  net.append(Gate::controlled_rotation(cm, vm, axis, theta / 2));
  append_controlled_x(net, rest, cm);
  net.append(Gate::controlled_rotation(cm, vm, axis, -theta / 2));
  append_controlled_x(net, rest, cm);
  append_controlled_rotation(net, rest, axis, theta / 2);
}

// Multi-controlled X (times a global phase). m = 1 is the two-gate CNOT
// build; m = 2 goes through the rotation + phase pair; m >= 3 splits the
// controls in half around one borrowed wire d (restored regardless of its
// initial value): with F1 toggling d on the first half and F2 toggling the
// target on the second half plus d, the sequence F1 F2 F1 F2 flips the target
// exactly when all controls match.
inline void append_controlled_x(GateNetwork& net, const ControlList& controls,
                                int target) {
  const int m = static_cast<int>(controls.size());
  const double half_pi = std::numbers::pi / 2;
  if (m == 0) {
    net.append(Gate::rotation(single_axis(net.n, target, PauliOp::X), half_pi));
    return;
  }
  if (m == 1) {
    auto [c, v] = controls[0];
    net.append(Gate::controlled_rotation(
        c, v, single_axis(net.n, target, PauliOp::X), half_pi));
    net.append(Gate::rotation(single_axis(net.n, c, PauliOp::Z),
                              -control_sign(v) * std::numbers::pi / 4));
    return;
  }
  if (m == 2) {
    append_controlled_rotation(net, controls,
                               single_axis(net.n, target, PauliOp::X), half_pi);
    append_controlled_phase(net, controls, half_pi);
    return;
  }
  std::vector<bool> busy(net.n + 1, false);
  for (auto [c, v] : controls) busy[c] = true;
  busy[target] = true;
  int borrowed = 0;
  for (int q = 1; q <= net.n; ++q)
    if (!busy[q]) { borrowed = q; break; }
  if (borrowed == 0)
    throw std::invalid_argument(
        "append_controlled_x: no free wire to borrow (need one qubit outside "
        "controls and target)");
  int h = (m + 1) / 2;
  ControlList first(controls.begin(), controls.begin() + h);
  ControlList second(controls.begin() + h, controls.end());
  second.emplace_back(borrowed, 1);
  append_controlled_x(net, first, borrowed);
  append_controlled_x(net, second, target);
  append_controlled_x(net, first, borrowed);
  append_controlled_x(net, second, target);
}

}  // namespace detail

// Zero-controlled NOT on n+1 qubits: flips qubit 1 exactly when qubits
// 2..n+1 are all |0> (the pseudo-pure permutation), up to a global phase.
inline GateNetwork build_tn(int n) {
  if (n < 1) throw std::invalid_argument("build_tn: need n >= 1");
  GateNetwork net(n + 1);
  detail::ControlList controls;
  for (int q = 2; q <= n + 1; ++q) controls.emplace_back(q, 0);
  detail::append_controlled_rotation(
      net, controls, PauliString::single(n + 1, 1, PauliOp::X),
      std::numbers::pi / 2);
  detail::append_controlled_phase(net, controls, std::numbers::pi / 2);
  return net;
}

// SWAP of qubits a and b as three CNOT builds, up to a global phase.
inline GateNetwork swap_network(int a, int b, int n) {
  if (a == b || a < 1 || b < 1 || a > n || b > n)
    throw std::invalid_argument("swap_network: bad qubit pair");
  GateNetwork net(n);
  detail::append_controlled_x(net, {{a, 1}}, b);
  detail::append_controlled_x(net, {{b, 1}}, a);
  detail::append_controlled_x(net, {{a, 1}}, b);
  return net;
}

}  // namespace cleanq
