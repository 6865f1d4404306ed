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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "cleanq/circuit.hpp"
#include "cleanq/dense.hpp"
#include "cleanq/measure.hpp"
#include "cleanq/pauli.hpp"
#include "cleanq/state.hpp"

namespace cleanq {

// Network of pi/4 Pauli rotations (angles +-pi/4) whose conjugation action
// maps sigma_source to sign * sigma_target. The construction below always
// normalizes each step's sign into the rotation angle, so sign is +1; the
// field stays because the contract only promises +-1.
struct CliffordConjugation {
  GateNetwork network;
  PauliString source;
  PauliString target;
  int sign = 1;
};

namespace detail {

// One conjugation step: G sigma_cur G^dag = sigma_next for G = e^{-+i sigma_c pi/4}
// with c = cur XOR next, legal whenever next anticommutes with cur. The
// anticommuting-pair identity G sigma G^dag = -i sigma_c sigma fixes the sign,
// which is folded into the angle choice.
inline void conjugation_step(GateNetwork& net, PauliString& cur,
                             const PauliString& next) {
  PauliString axis = string_xor(cur, next);
  PhasedPauli prod = pauli_mul(axis, cur);
  // prod.phase_exp is odd exactly when axis and cur anticommute.
  if ((prod.phase_exp & 1) == 0)
    throw std::logic_error("conjugation_step: step target must anticommute");
  double angle = prod.phase_exp == 1 ? std::numbers::pi / 4
                                     : -std::numbers::pi / 4;
  net.append(Gate::rotation(axis, angle));
  cur = next;
}

// Network mapping sigma_s to +sigma_z^(1) in at most two pi/4 rotations,
// cased on the qubit-1 letter of s.
inline GateNetwork leg_to_z1(const PauliString& s) {
  const int n = s.num_qubits();
  const PauliString z1 = PauliString::single(n, 1, PauliOp::Z);
  GateNetwork net(n);
  PauliString cur = s;
  if (cur == z1) return net;
  PauliOp first = cur.op(1);
  if (first == PauliOp::I) {
    // No qubit-1 support: route through a string that anticommutes with cur
    // at some supported qubit k while planting X on qubit 1.
    int k = 0;
    for (int q = 2; q <= n; ++q)
      if (cur.op(q) != PauliOp::I) { k = q; break; }
    if (k == 0)
      throw std::logic_error("leg_to_z1: identity string slipped through");
    PauliOp partner = cur.op(k) == PauliOp::Z ? PauliOp::X : PauliOp::Z;
    PauliString mid = cur;
    mid.set_op(1, PauliOp::X);
    mid.set_op(k, static_cast<PauliOp>(static_cast<int>(cur.op(k)) ^
                                       static_cast<int>(partner)));
    conjugation_step(net, cur, mid);
  } else if (first == PauliOp::Z) {
    // Qubit-1 letter already Z but extra support remains; hop through the
    // same string with X at qubit 1, which anticommutes with cur there.
    PauliString mid = cur;
    mid.set_op(1, PauliOp::X);
    conjugation_step(net, cur, mid);
  }
  // Now the qubit-1 letter is X or Y, which anticommutes with Z, so one
  // rotation lands exactly on Z^(1).
  conjugation_step(net, cur, z1);
  return net;
}

}  // namespace detail

// Builds a conjugation network mapping sigma_source to sign * sigma_target
// (at most 4 gates: route source to Z^(1), then invert the target's route).
// Verified densely at construction when the register fits the dense limit.
inline CliffordConjugation synthesize_conjugation(
    const PauliString& source, const PauliString& target,
    int dense_limit = kDefaultDenseLimit) {
  if (source.is_identity() || target.is_identity())
    throw std::invalid_argument(
        "synthesize_conjugation: identity has no conjugation partner");
  if (source.num_qubits() != target.num_qubits())
    throw std::invalid_argument("synthesize_conjugation: register mismatch");
  CliffordConjugation out;
  out.source = source;
  out.target = target;
  out.sign = 1;
  out.network = detail::leg_to_z1(source);
  out.network.append(detail::leg_to_z1(target).inverse());
  if (source.num_qubits() <= dense_limit) {
    Eigen::MatrixXcd u = network_unitary(out.network, dense_limit);
    Eigen::MatrixXcd got = u * pauli_matrix(source, dense_limit) * u.adjoint();
    if ((got - static_cast<double>(out.sign) * pauli_matrix(target, dense_limit))
            .norm() > 1e-10)
      throw std::logic_error("synthesize_conjugation: dense verification failed");
  }
  return out;
}

// Estimated Pauli-expansion coefficient alpha_b = tr(sigma_b U)/2^n.
struct PauliCoefficient {
  PauliString b;
  std::complex<double> value;
  double std_error = 0;
  std::uint64_t shots = 0;
};

struct ComplexEstimate {
  std::complex<double> value;
  double std_error_re = 0;
  double std_error_im = 0;
  std::uint64_t shots = 0;
};

namespace detail {

// Measures <sigma_x^(1)> and <sigma_y^(1)> of a prepared state by rotating
// each onto sigma_z^(1) and running the scheduled readout. R^dag Z R = X for
// R = rot(Y, -pi/4) and R^dag Z R = Y for R = rot(X, +pi/4).
struct XyEstimate {
  EstimateResult x, y;
};

inline XyEstimate measure_xy(const DensityState& state, const NoisyMeter& meter,
                             std::uint64_t tag_x, std::uint64_t tag_y,
                             const EstimationBudget& budget) {
  const int n = state.num_qubits();
  XyEstimate out;
  {
    DensityState st = state;
    st.apply_gate(Gate::rotation(PauliString::single(n, 1, PauliOp::Y),
                                 -std::numbers::pi / 4));
    out.x = estimate_mean(st, meter.substream(tag_x), budget);
  }
  {
    DensityState st = state;
    st.apply_gate(Gate::rotation(PauliString::single(n, 1, PauliOp::X),
                                 std::numbers::pi / 4));
    out.y = estimate_mean(st, meter.substream(tag_y), budget);
  }
  return out;
}

// Embeds a network one qubit up (qubit k -> k + offset) on a larger register.
inline GateNetwork shift_network(const GateNetwork& net, int offset, int new_n) {
  GateNetwork out(new_n);
  for (const Gate& g : net.gates) {
    if (g.kind == Gate::Kind::PauliRotation)
      out.append(Gate::rotation(shifted(g.axis, offset, new_n), g.angle));
    else
      out.append(Gate::controlled_rotation(g.control + offset, g.control_value,
                                           shifted(g.axis, offset, new_n),
                                           g.angle));
  }
  return out;
}

}  // namespace detail

// DQC1 estimate of tr(sigma_a U sigma_b U^dag)/2^n: prepare deviation
// sigma_b from the clean qubit, run U, rotate sigma_a onto sigma_z^(1), read.
inline EstimateResult dqc1_pauli_pair(const GateNetwork& u, const PauliString& a,
                                      const PauliString& b,
                                      const NoisyMeter& meter,
                                      const EstimationBudget& budget) {
  if (a.is_identity() || b.is_identity())
    throw std::invalid_argument("dqc1_pauli_pair: identity Pauli input");
  if (a.num_qubits() != u.n || b.num_qubits() != u.n)
    throw std::invalid_argument("dqc1_pauli_pair: register mismatch");
  const PauliString z1 = PauliString::single(u.n, 1, PauliOp::Z);
  CliffordConjugation prep = synthesize_conjugation(z1, b);
  CliffordConjugation post = synthesize_conjugation(a, z1);
  DensityState state = DensityState::dqc1(u.n);
  state.apply_network(prep.network);
  state.apply_network(u);
  state.apply_network(post.network);
  EstimateResult est = estimate_mean(state, meter.substream(1), budget);
  est.value /= static_cast<double>(prep.sign * post.sign);
  return est;
}

// Two-computation estimate of alpha_b = tr(sigma_b U)/2^n: condition U on a
// fresh control qubit (active on |0>), prepare deviation sigma_x^(1) sigma_b,
// then Re alpha_b = <sigma_x^(1)> and Im alpha_b = -<sigma_y^(1)>.
// b may be the identity, giving the normalized trace of U itself.
inline PauliCoefficient estimate_pauli_coefficient(const GateNetwork& u,
                                                   const PauliString& b,
                                                   const NoisyMeter& meter,
                                                   const EstimationBudget& budget) {
  if (b.num_qubits() != u.n)
    throw std::invalid_argument("estimate_pauli_coefficient: register mismatch");
  const int big = u.n + 1;
  PauliString x1b = shifted(b, 1, big);
  x1b.set_op(1, PauliOp::X);
  CliffordConjugation prep =
      synthesize_conjugation(PauliString::single(big, 1, PauliOp::Z), x1b);
  DensityState state = DensityState::dqc1(big);
  state.apply_network(prep.network);
  state.apply_network(conditional_u(u, 0));
  detail::XyEstimate xy = detail::measure_xy(state, meter, 1, 2, budget);
  PauliCoefficient out;
  out.b = b;
  out.value = std::complex<double>(xy.x.value, -xy.y.value) /
              static_cast<double>(prep.sign);
  out.std_error = std::hypot(xy.x.std_error, xy.y.std_error);
  out.shots = xy.x.shots + xy.y.shots;
  return out;
}

// |bits> from |0...0>; bit of qubit k is (bits >> (n-k)) & 1, matching the
// qubit-1-is-most-significant dense convention.
inline GateNetwork basis_prepare(int n, std::uint64_t bits) {
  if (n < 1 || n > 63 || bits >> n)
    throw std::invalid_argument("basis_prepare: bits outside register");
  GateNetwork net(n);
  for (int k = 1; k <= n; ++k)
    if ((bits >> (n - k)) & 1)
      net.append(Gate::rotation(PauliString::single(n, k, PauliOp::X),
                                std::numbers::pi / 2));
  return net;
}

// (|a> + e^{i phi} |b>)/sqrt(2) from |0...0>, up to a global phase, in O(n)
// gates: split on a pivot qubit where a and b differ, then flip the other
// qubits conditioned on the pivot branch. Each conditional flip contributes
// -i to its branch; the pivot Z rotation absorbs those into phi.
inline GateNetwork superposition_prepare(int n, std::uint64_t a, std::uint64_t b,
                                         double phi) {
  if (n < 1 || n > 63 || (a >> n) || (b >> n))
    throw std::invalid_argument("superposition_prepare: bits outside register");
  if (a == b)
    throw std::invalid_argument("superposition_prepare: strings must differ");
  int pivot = 0;
  for (int k = 1; k <= n; ++k)
    if (((a ^ b) >> (n - k)) & 1) { pivot = k; break; }
  const bool a_low = ((a >> (n - pivot)) & 1) == 0;
  const std::uint64_t v = a_low ? a : b;  // pivot bit 0 branch
  const std::uint64_t w = a_low ? b : a;  // pivot bit 1 branch
  const double phi_eff = a_low ? phi : -phi;
  GateNetwork net(n);
  net.append(Gate::rotation(PauliString::single(n, pivot, PauliOp::Y),
                            std::numbers::pi / 4));
  int flips_v = 0, flips_w = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == pivot) continue;
    int vb = (v >> (n - k)) & 1, wb = (w >> (n - k)) & 1;
    PauliString xk = PauliString::single(n, k, PauliOp::X);
    if (vb && wb) {
      net.append(Gate::rotation(xk, std::numbers::pi / 2));
    } else if (vb) {
      net.append(Gate::controlled_rotation(pivot, 0, xk, std::numbers::pi / 2));
      ++flips_v;
    } else if (wb) {
      net.append(Gate::controlled_rotation(pivot, 1, xk, std::numbers::pi / 2));
      ++flips_w;
    }
  }
  double t = phi_eff / 2 +
             (flips_w - flips_v) * std::numbers::pi / 4;
  if (t != 0)
    net.append(Gate::rotation(PauliString::single(n, pivot, PauliOp::Z), t));
  return net;
}

namespace detail {

// Conditional-U trace protocol on a pure preparation: with the control in
// (|0> + |1>)/sqrt(2) and V = conditional_u(U, 0),
// <psi|U|psi> = <sigma_x^(1)> - i <sigma_y^(1)>.
inline ComplexEstimate trace_on_preparation(const GateNetwork& u,
                                            const GateNetwork& prep,
                                            const NoisyMeter& meter,
                                            std::uint64_t tag_base,
                                            const EstimationBudget& budget) {
  const int big = u.n + 1;
  DensityState state = DensityState::dqcp(big);
  state.apply_gate(Gate::rotation(PauliString::single(big, 1, PauliOp::Y),
                                  std::numbers::pi / 4));
  state.apply_network(shift_network(prep, 1, big));
  state.apply_network(conditional_u(u, 0));
  XyEstimate xy = measure_xy(state, meter, tag_base, tag_base + 1, budget);
  ComplexEstimate out;
  out.value = {xy.x.value, -xy.y.value};
  out.std_error_re = xy.x.std_error;
  out.std_error_im = xy.y.std_error;
  out.shots = xy.x.shots + xy.y.shots;
  return out;
}

}  // namespace detail

// Transition amplitude <a|U|b> via four pure preparations |a>, |b>,
// (|a>+|b>)/sqrt(2), (|a>+i|b>)/sqrt(2) and the closed-form recombination
// U_ab = m3 - i m4 + (i-1)(m1 + m2)/2; errors propagate by the delta method.
// a = b short-circuits to the diagonal entry tr(U |a><a|).
inline ComplexEstimate dqcp_matrix_element(const GateNetwork& u, std::uint64_t a,
                                           std::uint64_t b,
                                           const NoisyMeter& meter,
                                           const EstimationBudget& budget) {
  const int n = u.n;
  if (n > 62 || (a >> n) || (b >> n))
    throw std::invalid_argument("dqcp_matrix_element: basis string outside register");
  if (a == b)
    return detail::trace_on_preparation(u, basis_prepare(n, a), meter, 1, budget);
  const std::complex<double> coeff[4] = {
      {-0.5, 0.5}, {-0.5, 0.5}, {1, 0}, {0, -1}};
  ComplexEstimate runs[4];
  runs[0] = detail::trace_on_preparation(u, basis_prepare(n, a), meter, 1, budget);
  runs[1] = detail::trace_on_preparation(u, basis_prepare(n, b), meter, 3, budget);
  runs[2] = detail::trace_on_preparation(
      u, superposition_prepare(n, a, b, 0.0), meter, 5, budget);
  runs[3] = detail::trace_on_preparation(
      u, superposition_prepare(n, a, b, std::numbers::pi / 2), meter, 7, budget);
  ComplexEstimate out;
  double var_re = 0, var_im = 0;
  for (int j = 0; j < 4; ++j) {
    out.value += coeff[j] * runs[j].value;
    out.shots += runs[j].shots;
    double cr = coeff[j].real(), ci = coeff[j].imag();
    double sx = runs[j].std_error_re, sy = runs[j].std_error_im;
    var_re += cr * cr * sx * sx + ci * ci * sy * sy;
    var_im += ci * ci * sx * sx + cr * cr * sy * sy;
  }
  out.std_error_re = std::sqrt(var_re);
  out.std_error_im = std::sqrt(var_im);
  return out;
}

// Pseudo-pure preparation on n+1 qubits. The register stores the ancilla
// "bit 0" as qubit 1 and bits 1..n as qubits 2..n+1; with the input deviation
// sigma_z on qubit 2 (the clean bit), the output deviation is exactly
// sigma_z^(1) (2|0...0><0...0| - I) over qubits 2..n+1.
inline GateNetwork pseudo_pure_prepare(int n) {
  if (n < 1) throw std::invalid_argument("pseudo_pure_prepare: need n >= 1");
  GateNetwork net(n + 1);
  net.append(swap_network(1, 2, n + 1));
  net.append(build_tn(n));
  net.append(Gate::rotation(PauliString::single(n + 1, 1, PauliOp::X),
                            std::numbers::pi / 2));
  return net;
}

// The pseudo-pure input state: (I + sigma_z^(2)) / 2^{n+1}.
inline DensityState pseudo_pure_input(int n) {
  const int big = n + 1;
  const std::int64_t dim = std::int64_t{1} << big;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    double z2 = ((j >> (big - 2)) & 1) ? -1.0 : 1.0;
    rho(j, j) = (1.0 + z2) / static_cast<double>(dim);
  }
  return DensityState::from_matrix(std::move(rho));
}

struct PseudoPureReport {
  double alpha = 0;         // rescaled answer estimate, +-1 for a clean answer
  double raw_signal = 0;    // measured sigma_z^(1) sigma_z^(2) coefficient
  double signal_scale = 0;  // 2^{1-n}: expected |raw_signal| for |alpha| = 1
  double exact_signal = 0;  // dense value of the measured mean, noise-free
  double exact_alpha = 0;
  double std_error = 0;
  std::uint64_t shots = 0;
  std::uint64_t shots_for_sign = 0;  // 3-sigma sign resolution, grows as 4^n
};

// Runs the pseudo-pure pipeline for a computation U on bits 1..n and reads
// the answer coefficient alpha of sigma_z^(ancilla) sigma_z^(first bit):
// alpha = +1 for U = identity, -1 when U flips the answer bit. The raw
// measured signal carries the 2^{1-n} intensity loss.
inline PseudoPureReport pseudo_pure_answer(const GateNetwork& u,
                                           const NoisyMeter& meter,
                                           const EstimationBudget& budget) {
  const int n = u.n;
  const int big = n + 1;
  DensityState state = pseudo_pure_input(n);
  state.apply_network(pseudo_pure_prepare(n));
  state.apply_network(detail::shift_network(u, 1, big));
  PauliString z1z2 = PauliString::single(big, 1, PauliOp::Z);
  z1z2.set_op(2, PauliOp::Z);
  CliffordConjugation post =
      synthesize_conjugation(z1z2, PauliString::single(big, 1, PauliOp::Z));
  state.apply_network(post.network);
  double exact = state.expectation(PauliString::single(big, 1, PauliOp::Z)) /
                 static_cast<double>(post.sign);
  EstimateResult est = estimate_mean(state, meter.substream(1), budget);
  PseudoPureReport report;
  report.signal_scale = std::ldexp(1.0, 1 - n);
  report.raw_signal = est.value / static_cast<double>(post.sign);
  report.alpha = report.raw_signal / report.signal_scale;
  report.exact_signal = exact;
  report.exact_alpha = exact / report.signal_scale;
  report.std_error = est.std_error;
  report.shots = est.shots;
  double var = meter.variance_bound();
  report.shots_for_sign = static_cast<std::uint64_t>(
      std::ceil(9.0 * var / (report.signal_scale * report.signal_scale)));
  return report;
}

}  // namespace cleanq
