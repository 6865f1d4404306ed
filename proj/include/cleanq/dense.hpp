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
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "cleanq/pauli.hpp"

namespace cleanq {

using complexd = std::complex<double>;

// Largest register the dense engine will materialize (2^n x 2^n matrices).
inline constexpr int kDefaultDenseLimit = 12;

inline void check_dense_limit(int n, int dense_limit) {
  if (n > dense_limit)
    throw std::invalid_argument("dense limit exceeded: " + std::to_string(n) +
                                " qubits > limit " + std::to_string(dense_limit));
}

// Basis convention: qubit 1 is the leftmost Kronecker factor, i.e. the most
// significant bit of the basis index. Qubit k maps to index bit (n - k).
struct PauliIndexMasks {
  std::uint64_t x = 0;  // flip mask: sigma_b |j> lands on |j ^ x|
  std::uint64_t z = 0;  // sign mask: (-1)^{popcount(z & j)}
  int num_y = 0;        // global i^{num_y} from the i^{xz} X^x Z^z convention
};

inline PauliIndexMasks pauli_index_masks(const PauliString& b) {
  PauliIndexMasks m;
  int n = b.num_qubits();
  for (int k = 1; k <= n; ++k) {
    PauliOp op = b.op(k);
    std::uint64_t bit = std::uint64_t{1} << (n - k);
    switch (op) {
      case PauliOp::I: break;
      case PauliOp::X: m.x |= bit; break;
      case PauliOp::Y: m.x |= bit; m.z |= bit; ++m.num_y; break;
      case PauliOp::Z: m.z |= bit; break;
    }
  }
  return m;
}

// Amplitude of sigma_b on basis column j: sigma_b |j> = phi(j) |j ^ x>.
inline complexd pauli_column_phase(const PauliIndexMasks& m, std::uint64_t j) {
  static const complexd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complexd phi = ipow[m.num_y & 3];
  if (std::popcount(m.z & j) & 1) phi = -phi;
  return phi;
}

inline Eigen::MatrixXcd pauli_matrix(const PauliString& b,
                                     int dense_limit = kDefaultDenseLimit) {
  check_dense_limit(b.num_qubits(), dense_limit);
  const auto m = pauli_index_masks(b);
  const std::uint64_t dim = std::uint64_t{1} << b.num_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t j = 0; j < dim; ++j)
    out(j ^ m.x, j) = pauli_column_phase(m, j);
  return out;
}

// A <- sigma_b A, using row permutation with phases instead of a matmul.
inline void pauli_apply_left(const PauliString& b, Eigen::MatrixXcd& A) {
  const auto m = pauli_index_masks(b);
  const std::uint64_t dim = std::uint64_t{1} << b.num_qubits();
  if (static_cast<std::uint64_t>(A.rows()) != dim)
    throw std::invalid_argument("pauli_apply_left: dimension mismatch");
  if (m.x == 0) {
    for (std::uint64_t i = 0; i < dim; ++i) A.row(i) *= pauli_column_phase(m, i);
    return;
  }
  Eigen::RowVectorXcd tmp(A.cols());
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t j = i ^ m.x;
    if (j < i) continue;
    tmp = A.row(i);
    A.row(i) = pauli_column_phase(m, j) * A.row(j);
    A.row(j) = pauli_column_phase(m, i) * tmp;
  }
}

// A <- A sigma_b, column permutation with phases.
inline void pauli_apply_right(const PauliString& b, Eigen::MatrixXcd& A) {
  const auto m = pauli_index_masks(b);
  const std::uint64_t dim = std::uint64_t{1} << b.num_qubits();
  if (static_cast<std::uint64_t>(A.cols()) != dim)
    throw std::invalid_argument("pauli_apply_right: dimension mismatch");
  if (m.x == 0) {
    for (std::uint64_t j = 0; j < dim; ++j) A.col(j) *= pauli_column_phase(m, j);
    return;
  }
  Eigen::VectorXcd tmp(A.rows());
  for (std::uint64_t j = 0; j < dim; ++j) {
    std::uint64_t k = j ^ m.x;
    if (k < j) continue;
    // (A sigma_b).col(j) = phi(j) A.col(j ^ x)
    tmp = A.col(j);
    A.col(j) = pauli_column_phase(m, j) * A.col(k);
    A.col(k) = pauli_column_phase(m, k) * tmp;
  }
}

// v <- sigma_b v.
inline void pauli_apply_vec(const PauliString& b, Eigen::VectorXcd& v) {
  const auto m = pauli_index_masks(b);
  const std::uint64_t dim = std::uint64_t{1} << b.num_qubits();
  if (static_cast<std::uint64_t>(v.size()) != dim)
    throw std::invalid_argument("pauli_apply_vec: dimension mismatch");
  if (m.x == 0) {
    for (std::uint64_t i = 0; i < dim; ++i) v(i) *= pauli_column_phase(m, i);
    return;
  }
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t j = i ^ m.x;
    if (j < i) continue;
    complexd tmp = v(i);
    v(i) = pauli_column_phase(m, j) * v(j);
    v(j) = pauli_column_phase(m, i) * tmp;
  }
}

// tr(sigma_b rho) in O(2^n): only entries rho(j ^ x, j) contribute.
inline complexd pauli_trace_product(const PauliString& b,
                                    const Eigen::MatrixXcd& rho) {
  const auto m = pauli_index_masks(b);
  const std::uint64_t dim = std::uint64_t{1} << b.num_qubits();
  if (static_cast<std::uint64_t>(rho.rows()) != dim ||
      static_cast<std::uint64_t>(rho.cols()) != dim)
    throw std::invalid_argument("pauli_trace_product: dimension mismatch");
  complexd sum = 0;
  for (std::uint64_t j = 0; j < dim; ++j)
    sum += pauli_column_phase(m, j ^ m.x) * rho(j ^ m.x, j);
  return sum;
}

}  // namespace cleanq
