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

// Test-side reference constructions, deliberately independent of the library
// internals: Pauli matrices come from explicit 2x2 constants and Kronecker
// products, random unitaries from std::mt19937_64 Ginibre + QR, and the
// reference DFT is the naive O(N^2) sum.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cleanq/circuit.hpp"
#include "cleanq/pauli.hpp"

namespace testutil {

using complexd = std::complex<double>;

inline Eigen::Matrix2cd pauli2(char c) {
  Eigen::Matrix2cd m;
  const complexd i(0, 1);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli2: bad letter");
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit 1 is the leftmost letter and the leftmost Kronecker factor.
inline Eigen::MatrixXcd pauli_dense(const std::string& letters) {
  Eigen::MatrixXcd out = pauli2(letters.at(0));
  for (std::size_t k = 1; k < letters.size(); ++k)
    out = kron(out, pauli2(letters[k]));
  return out;
}

inline Eigen::MatrixXcd pauli_dense(const cleanq::PauliString& s) {
  return pauli_dense(s.str());
}

// e^{-i sigma angle} built from the reference Pauli matrix.
inline Eigen::MatrixXcd rotation_dense(const cleanq::PauliString& axis,
                                       double angle) {
  Eigen::MatrixXcd sigma = pauli_dense(axis);
  Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(sigma.rows(), sigma.cols());
  return std::cos(angle) * id - complexd(0, 1) * std::sin(angle) * sigma;
}

// Reference dense form of one gate: controlled rotations as
// P_match (x) e^{-i sigma theta} + P_other (x) I built from projectors.
inline Eigen::MatrixXcd gate_dense(const cleanq::Gate& g, int n) {
  if (g.kind == cleanq::Gate::Kind::PauliRotation)
    return rotation_dense(g.axis, g.angle);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd rot = rotation_dense(g.axis, g.angle);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    int bit = static_cast<int>((col >> (n - g.control)) & 1);
    if (bit == g.control_value)
      out.col(col) += rot.col(col);
    else
      out(col, col) += 1.0;
  }
  return out;
}

inline Eigen::MatrixXcd network_dense(const cleanq::GateNetwork& net) {
  const Eigen::Index dim = Eigen::Index{1} << net.n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const cleanq::Gate& g : net.gates) u = gate_dense(g, net.n) * u;
  return u;
}

// Smallest ||a - e^{i phase} b|| over global phases, via the phase of the
// largest entry of b.
inline double phase_aligned_distance(const Eigen::MatrixXcd& a,
                                     const Eigen::MatrixXcd& b) {
  Eigen::Index mi = 0, mj = 0;
  b.cwiseAbs().maxCoeff(&mi, &mj);
  if (std::abs(b(mi, mj)) < 1e-12) return (a - b).norm();
  complexd phase = a(mi, mj) / b(mi, mj);
  double mag = std::abs(phase);
  if (mag < 1e-12) return (a - b).norm();
  return (a - (phase / mag) * b).norm();
}

inline cleanq::PauliString random_pauli(int n, std::mt19937_64& gen,
                                        bool allow_identity = false) {
  std::uniform_int_distribution<int> op(0, 3);
  for (;;) {
    cleanq::PauliString s(n);
    for (int q = 1; q <= n; ++q)
      s.set_op(q, static_cast<cleanq::PauliOp>(op(gen)));
    if (allow_identity || !s.is_identity()) return s;
  }
}

inline cleanq::GateNetwork random_network(int n, int gates,
                                          std::mt19937_64& gen,
                                          bool with_controls = true) {
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_int_distribution<int> qubit(1, n);
  std::uniform_int_distribution<int> coin(0, 1);
  cleanq::GateNetwork net(n);
  for (int g = 0; g < gates; ++g) {
    if (with_controls && n >= 2 && coin(gen) == 1) {
      int c = qubit(gen);
      cleanq::PauliString axis = random_pauli(n, gen);
      axis.set_op(c, cleanq::PauliOp::I);
      if (axis.is_identity()) {
        int t = c == 1 ? 2 : 1;
        axis.set_op(t, cleanq::PauliOp::X);
      }
      net.append(cleanq::Gate::controlled_rotation(c, coin(gen), axis,
                                                   angle(gen)));
    } else {
      net.append(cleanq::Gate::rotation(random_pauli(n, gen), angle(gen)));
    }
  }
  return net;
}

inline Eigen::MatrixXcd random_dense_unitary(Eigen::Index dim,
                                             std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      g(i, j) = complexd(normal(gen), normal(gen));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    complexd d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : complexd(1, 0);
  }
  return q;
}

// S_j = sum_k x_k e^{+2 pi i jk/N}, the reference for the spectral transform.
inline std::vector<complexd> naive_positive_dft(const std::vector<complexd>& x) {
  const std::size_t n = x.size();
  std::vector<complexd> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    complexd acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      double arg = 2.0 * std::numbers::pi * static_cast<double>(j) *
                   static_cast<double>(k) / static_cast<double>(n);
      acc += x[k] * complexd(std::cos(arg), std::sin(arg));
    }
    s[j] = acc;
  }
  return s;
}

}  // namespace testutil
