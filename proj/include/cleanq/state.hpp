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
#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cleanq/circuit.hpp"
#include "cleanq/dense.hpp"
#include "cleanq/pauli.hpp"

namespace cleanq {

// Exact density-operator simulator. Pure states keep a 2^n statevector and
// materialize the density matrix only on demand; mixed states hold the full
// 2^n x 2^n matrix. Gate application mutates in place (documented here; every
// operation returning data returns fresh values). The mixed path
// re-symmetrizes rho every 100 gates and treats Hermiticity drift beyond
// 1e-8 as an internal error rather than silently repairing it.
class DensityState {
 public:
  static constexpr int kResymmetrizeInterval = 100;

  // |0...0><0...0| on n qubits, the DQCp initial state.
  static DensityState dqcp(int n, int dense_limit = kDefaultDenseLimit) {
    check_init(n, dense_limit);
    DensityState st;
    st.n_ = n;
    st.pure_ = true;
    st.psi_ = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
    st.psi_(0) = 1.0;
    return st;
  }

  // (I + sigma_z^(1)) / 2^n: one clean qubit, the rest maximally mixed.
  static DensityState dqc1(int n, int dense_limit = kDefaultDenseLimit) {
    check_init(n, dense_limit);
    DensityState st;
    st.n_ = n;
    st.pure_ = false;
    const std::int64_t dim = std::int64_t{1} << n;
    st.rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t j = 0; j < dim / 2; ++j) st.rho_(j, j) = 2.0 / dim;
    return st;
  }

  // Arbitrary density matrix; validated Hermitian and unit-trace to 1e-10.
  static DensityState from_matrix(Eigen::MatrixXcd rho,
                                  int dense_limit = kDefaultDenseLimit) {
    std::int64_t dim = rho.rows();
    int n = 0;
    while ((std::int64_t{1} << n) < dim) ++n;
    if ((std::int64_t{1} << n) != dim || rho.cols() != dim || n < 1)
      throw std::invalid_argument("DensityState: matrix is not 2^n x 2^n");
    check_init(n, dense_limit);
    if ((rho - rho.adjoint()).norm() > 1e-10)
      throw std::invalid_argument("DensityState: matrix is not Hermitian");
    if (std::abs(rho.trace() - complexd(1, 0)) > 1e-10)
      throw std::invalid_argument("DensityState: trace is not 1");
    DensityState st;
    st.n_ = n;
    st.pure_ = false;
    st.rho_ = std::move(rho);
    return st;
  }

  int num_qubits() const { return n_; }
  bool is_pure() const { return pure_; }

  Eigen::MatrixXcd matrix() const {
    if (pure_) return psi_ * psi_.adjoint();
    return rho_;
  }

  // U rho U^dagger for a full-register dense unitary; U is rejected unless
  // ||U^dagger U - I||_F <= 1e-8.
  void apply_unitary(const Eigen::MatrixXcd& u) {
    const std::int64_t dim = std::int64_t{1} << n_;
    if (u.rows() != dim || u.cols() != dim)
      throw std::invalid_argument("apply_unitary: dimension mismatch");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm() > 1e-8)
      throw std::invalid_argument("apply_unitary: matrix is not unitary");
    if (pure_) {
      psi_ = u * psi_;
    } else {
      rho_ = u * rho_ * u.adjoint();
      tick();
    }
  }

  // Same as apply_unitary but trusts the caller's one-time unitarity check.
  // For hot loops that reapply a fixed, already-validated matrix; the
  // periodic Hermiticity audit still catches drift from a bad caller.
  void apply_unitary_prechecked(const Eigen::MatrixXcd& u) {
    const std::int64_t dim = std::int64_t{1} << n_;
    if (u.rows() != dim || u.cols() != dim)
      throw std::invalid_argument("apply_unitary: dimension mismatch");
    if (pure_) {
      psi_ = u * psi_;
    } else {
      rho_ = u * rho_ * u.adjoint();
      tick();
    }
  }

  void apply_gate(const Gate& g) {
    if (g.axis.num_qubits() != n_)
      throw std::invalid_argument("apply_gate: gate register mismatch");
    if (g.kind == Gate::Kind::PauliRotation) {
      rotate(g.axis, g.angle);
    } else {
      double sv = g.control_value == 0 ? 1.0 : -1.0;
      PauliString axis_z = g.axis;
      axis_z.set_op(g.control, PauliOp::Z);
      rotate(g.axis, g.angle / 2);
      rotate(axis_z, sv * g.angle / 2);
    }
  }

  void apply_network(const GateNetwork& net) {
    if (net.n != n_)
      throw std::invalid_argument("apply_network: register mismatch");
    for (const Gate& g : net.gates) apply_gate(g);
  }

  // tr(sigma_a rho), real for Hermitian observables on Hermitian states.
  double expectation(const PauliString& a) const {
    if (a.num_qubits() != n_)
      throw std::invalid_argument("expectation: register mismatch");
    if (pure_) {
      Eigen::VectorXcd w = psi_;
      pauli_apply_vec(a, w);
      return psi_.dot(w).real();
    }
    return pauli_trace_product(a, rho_).real();
  }

  // Coefficient a_b in rho = (I + sum_b a_b sigma_b)/2^n; equals
  // expectation(b) identically, but b = identity is rejected (the identity
  // belongs to the normalization, not the deviation).
  double deviation_coefficient(const PauliString& b) const {
    if (b.is_identity())
      throw std::invalid_argument(
          "deviation_coefficient: identity is not a deviation term");
    return expectation(b);
  }

  // All deviation coefficients above `cutoff`. Enumerates 4^n strings, so it
  // is capped at n <= 8; it is an inspection tool, not a simulation path.
  std::map<PauliString, double> deviation_view(double cutoff = 1e-9) const {
    if (n_ > 8)
      throw std::invalid_argument("deviation_view: capped at 8 qubits (4^n scan)");
    std::map<PauliString, double> view;
    PauliString b(n_);
    scan_strings(b, 1, cutoff, view);
    return view;
  }

  // Debug dump: one "re,im" pair per line, row-major.
  void dump_csv(std::ostream& out) const {
    Eigen::MatrixXcd m = matrix();
    out << std::setprecision(17);
    for (std::int64_t r = 0; r < m.rows(); ++r)
      for (std::int64_t c = 0; c < m.cols(); ++c)
        out << m(r, c).real() << "," << m(r, c).imag() << "\n";
  }

 private:
  static void check_init(int n, int dense_limit) {
    if (n < 1) throw std::invalid_argument("DensityState: need at least 1 qubit");
    check_dense_limit(n, dense_limit);
  }

  // e^{-i sigma t} conjugation. Pure: psi <- cos t psi - i sin t sigma psi.
  // Mixed: rho <- c^2 rho + s^2 sigma rho sigma + i c s (rho sigma - sigma rho).
  void rotate(const PauliString& axis, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    if (pure_) {
      Eigen::VectorXcd w = psi_;
      pauli_apply_vec(axis, w);
      psi_ = c * psi_ - complexd(0, 1) * s * w;
      return;
    }
    Eigen::MatrixXcd right = rho_;   // rho sigma
    pauli_apply_right(axis, right);
    Eigen::MatrixXcd left = rho_;    // sigma rho
    pauli_apply_left(axis, left);
    rho_ = (c * c) * rho_ + complexd(0, 1) * (c * s) * (right - left);
    pauli_apply_left(axis, right);   // sigma rho sigma
    rho_ += (s * s) * right;
    tick();
  }

  void tick() {
    if (++ops_since_check_ < kResymmetrizeInterval) return;
    ops_since_check_ = 0;
    double drift = (rho_ - rho_.adjoint()).norm();
    if (drift > 1e-8)
      throw std::logic_error("DensityState: Hermiticity drift " +
                             std::to_string(drift) + " exceeds 1e-8");
    rho_ = ((rho_ + rho_.adjoint()) / 2).eval();
  }

  void scan_strings(PauliString& b, int qubit, double cutoff,
                    std::map<PauliString, double>& view) const {
    if (qubit > n_) {
      if (!b.is_identity()) {
        double a = expectation(b);
        if (std::abs(a) > cutoff) view.emplace(b, a);
      }
      return;
    }
    for (int op = 0; op < 4; ++op) {
      b.set_op(qubit, static_cast<PauliOp>(op));
      scan_strings(b, qubit + 1, cutoff, view);
    }
    b.set_op(qubit, PauliOp::I);
  }

  int n_ = 0;
  bool pure_ = false;
  Eigen::VectorXcd psi_;
  Eigen::MatrixXcd rho_;
  int ops_since_check_ = 0;
};

inline Eigen::MatrixXcd hamiltonian_matrix(const PauliSum& h,
                                           int dense_limit = kDefaultDenseLimit) {
  check_dense_limit(h.n, dense_limit);
  const std::int64_t dim = std::int64_t{1} << h.n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [c, b] : h.terms) m += c * pauli_matrix(b, dense_limit);
  return m;
}

// Eigenvalues of H = sum c_j sigma_j, ascending, with multiplicity. Clusters
// within 1e-9 are reported as-is, never merged.
inline std::vector<double> eigen_spectrum(const PauliSum& h,
                                          int dense_limit = kDefaultDenseLimit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      hamiltonian_matrix(h, dense_limit), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::logic_error("eigen_spectrum: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// e^{-iHt} through the eigendecomposition of Hermitian H.
inline Eigen::MatrixXcd hamiltonian_exponential(
    const PauliSum& h, double t, int dense_limit = kDefaultDenseLimit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      hamiltonian_matrix(h, dense_limit));
  if (solver.info() != Eigen::Success)
    throw std::logic_error("hamiltonian_exponential: eigensolver failed");
  const auto& v = solver.eigenvectors();
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (std::int64_t i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(complexd(0, -solver.eigenvalues()(i) * t));
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace cleanq
