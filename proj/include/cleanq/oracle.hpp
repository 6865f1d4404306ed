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
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cleanq/circuit.hpp"
#include "cleanq/dense.hpp"
#include "cleanq/pauli.hpp"
#include "cleanq/rng.hpp"

namespace cleanq {

// n-qubit unitary that maps |0...0> to |answer bit>|psi>: the answer sits in
// qubit 1 as a definite basis state and psi is the residual on qubits 2..n.
struct DeterministicOracle {
  int n = 0;
  Eigen::MatrixXcd unitary;
  int answer = 1;  // +1 for answer bit 0, -1 for answer bit 1
  Eigen::VectorXcd residual;
};

// Haar-ish random unitary: QR of a complex Ginibre matrix with the R diagonal
// phases folded back into Q.
inline Eigen::MatrixXcd random_unitary(std::int64_t dim, SeqRng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
  Eigen::MatrixXcd g(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j)
    for (std::int64_t i = 0; i < dim; ++i)
      g(i, j) = complexd(rng.next_normal(), rng.next_normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd r = qr.matrixQR();
  for (std::int64_t i = 0; i < dim; ++i) {
    complexd d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= mag > 1e-300 ? d / mag : complexd(1, 0);
  }
  return q;
}

// Builds W * X^(1)^a * W' where W' sends |0...0> to |0>|phi>, the conditional
// flip writes the answer bit a, and W scrambles the residual register. By
// construction U|0...0> = |a>|W phi> exactly.
inline DeterministicOracle random_oracle(int n, SeqRng& rng) {
  if (n < 1) throw std::invalid_argument("random_oracle: need n >= 1");
  check_dense_limit(n, kDefaultDenseLimit);
  const std::int64_t half = std::int64_t{1} << (n - 1);
  const std::int64_t dim = 2 * half;
  const int a = static_cast<int>(rng.next_below(2));

  Eigen::VectorXcd phi(half);
  for (std::int64_t i = 0; i < half; ++i)
    phi(i) = complexd(rng.next_normal(), rng.next_normal());
  double nrm = phi.norm();
  if (nrm < 1e-12) phi(0) = 1.0; else phi /= nrm;

  // Unitary completion of the column |0>|phi| via QR against Ginibre columns.
  Eigen::MatrixXcd seed(dim, dim);
  seed.col(0).setZero();
  seed.col(0).head(half) = phi;
  for (std::int64_t j = 1; j < dim; ++j)
    for (std::int64_t i = 0; i < dim; ++i)
      seed(i, j) = complexd(rng.next_normal(), rng.next_normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(seed);
  Eigen::MatrixXcd wp = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  complexd align = wp.col(0).dot(seed.col(0));  // conj(Q.col0) . target
  wp.col(0) *= align / std::abs(align);

  Eigen::MatrixXcd wsub = random_unitary(half, rng);
  Eigen::MatrixXcd u(dim, dim);
  u.setZero();
  u.block(0, 0, half, half) = wsub;
  u.block(half, half, half, half) = wsub;  // I_2 (x) W
  if (a == 1) {
    Eigen::MatrixXcd x1 =
        pauli_matrix(PauliString::single(n, 1, PauliOp::X));
    u = u * x1;
  }
  DeterministicOracle orc;
  orc.n = n;
  orc.unitary = u * wp;
  orc.answer = a == 0 ? 1 : -1;
  orc.residual = wsub * phi;
  return orc;
}

// Rank-1 flip projector P = |-><-| (x) |psi><psi| on the oracle register.
inline Eigen::MatrixXcd flip_projector(const DeterministicOracle& orc) {
  const std::int64_t half = orc.residual.size();
  Eigen::MatrixXcd g = orc.residual * orc.residual.adjoint();
  Eigen::MatrixXcd p(2 * half, 2 * half);
  p.block(0, 0, half, half) = 0.5 * g;
  p.block(0, half, half, half) = -0.5 * g;
  p.block(half, 0, half, half) = -0.5 * g;
  p.block(half, half, half, half) = 0.5 * g;
  return p;
}

// U' = (I - 2P) U: a one-reflection edit that flips the written answer bit
// while leaving the residual untouched. Rejects oracles whose action on
// |0...0> is not a definite answer-bit state.
inline DeterministicOracle make_flipped_oracle(const DeterministicOracle& orc) {
  const std::int64_t half = std::int64_t{1} << (orc.n - 1);
  if (orc.unitary.rows() != 2 * half || orc.residual.size() != half)
    throw std::invalid_argument("make_flipped_oracle: malformed oracle");
  Eigen::VectorXcd image = orc.unitary.col(0);
  const bool bit_one = orc.answer < 0;
  double off_norm =
      bit_one ? image.head(half).norm() : image.tail(half).norm();
  if (off_norm > 1e-9)
    throw std::invalid_argument("make_flipped_oracle: oracle is not deterministic");
  DeterministicOracle out;
  out.n = orc.n;
  out.unitary = orc.unitary - 2.0 * (flip_projector(orc) * orc.unitary);
  out.answer = -orc.answer;
  out.residual = orc.residual;
  return out;
}

// u (x) I_anc, ancillas as the least significant index bits.
inline Eigen::MatrixXcd kron_with_identity_below(const Eigen::MatrixXcd& u,
                                                 std::int64_t anc_dim) {
  const std::int64_t sub = u.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sub * anc_dim, sub * anc_dim);
  for (std::int64_t i = 0; i < sub; ++i)
    for (std::int64_t j = 0; j < sub; ++j)
      for (std::int64_t a = 0; a < anc_dim; ++a)
        out(i * anc_dim + a, j * anc_dim + a) = u(i, j);
  return out;
}

// m <- (u (x) I_anc) m for u on the most significant index bits, applied
// blockwise through strided views instead of materializing the Kronecker
// product.
inline void embed_apply_left(const Eigen::MatrixXcd& u, Eigen::MatrixXcd& m) {
  const std::int64_t sub = u.rows();
  const std::int64_t rows = m.rows();
  if (sub < 1 || u.cols() != sub || rows % sub != 0)
    throw std::invalid_argument("embed_apply_left: dimension mismatch");
  const std::int64_t anc = rows / sub;
  if (anc == 1) {
    m = u * m;
    return;
  }
  using Stride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
  using View = Eigen::Map<Eigen::MatrixXcd, 0, Stride>;
  for (std::int64_t a = 0; a < anc; ++a) {
    View view(m.data() + a, sub, m.cols(), Stride(rows, anc));
    view = (u * view).eval();
  }
}

// Interleaved computation V_r U V_{r-1} ... V_1 U V_0 on m qubits with the
// oracle acting on qubits 1..n.
struct InterleavedAlgorithm {
  int m = 0;
  std::vector<GateNetwork> networks;  // size r + 1

  int rounds() const { return static_cast<int>(networks.size()) - 1; }
};

inline InterleavedAlgorithm random_algorithm(int m, int r, int gates_per_network,
                                             SeqRng& rng) {
  if (m < 1 || r < 0 || gates_per_network < 0)
    throw std::invalid_argument("random_algorithm: bad shape");
  InterleavedAlgorithm alg;
  alg.m = m;
  for (int i = 0; i <= r; ++i) {
    GateNetwork net(m);
    for (int g = 0; g < gates_per_network; ++g) {
      // Random rotation about a weight-1 or weight-2 axis.
      int weight = m == 1 ? 1 : 1 + static_cast<int>(rng.next_below(2));
      int q1 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
      PauliString axis(m);
      axis.set_op(q1, static_cast<PauliOp>(1 + rng.next_below(3)));
      if (weight == 2) {
        int q2 = q1;
        while (q2 == q1)
          q2 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
        axis.set_op(q2, static_cast<PauliOp>(1 + rng.next_below(3)));
      }
      net.append(Gate::rotation(axis, rng.next_uniform() * 2.0 *
                                          std::numbers::pi));
    }
    alg.networks.push_back(std::move(net));
  }
  return alg;
}

// Dense matrix of the interleaved computation for a given oracle unitary.
inline Eigen::MatrixXcd algorithm_matrix(const InterleavedAlgorithm& alg,
                                         const Eigen::MatrixXcd& oracle_u,
                                         int dense_limit = kDefaultDenseLimit) {
  if (alg.networks.empty())
    throw std::invalid_argument("algorithm_matrix: no networks");
  check_dense_limit(alg.m, dense_limit);
  const std::int64_t dim = std::int64_t{1} << alg.m;
  if (oracle_u.rows() > dim)
    throw std::invalid_argument("algorithm_matrix: oracle larger than register");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < alg.networks.size(); ++i) {
    if (alg.networks[i].n != alg.m)
      throw std::invalid_argument("algorithm_matrix: network register mismatch");
    if (i > 0) embed_apply_left(oracle_u, m);
    network_apply_left(alg.networks[i], m);
  }
  return m;
}

// v(M) = tr(M sigma_z^(1) M^dag sigma_z^(1)) / 2^m = sum_ij z_i z_j |M_ij|^2 / 2^m.
inline double v_of_matrix(const Eigen::MatrixXcd& m) {
  const std::int64_t half = m.rows() / 2;
  double tl = m.block(0, 0, half, half).squaredNorm();
  double tr = m.block(0, half, half, half).squaredNorm();
  double bl = m.block(half, 0, half, half).squaredNorm();
  double br = m.block(half, half, half, half).squaredNorm();
  return (tl + br - tr - bl) / static_cast<double>(m.rows());
}

inline double evaluate_v(const InterleavedAlgorithm& alg,
                         const DeterministicOracle& orc) {
  return v_of_matrix(algorithm_matrix(alg, orc.unitary));
}

// Telescoping decomposition of v(U') - v(U): prime the 2r oracle slots of the
// written product M Z M^dag Z one at a time, left to right. Term i is the
// trace with slots left of i primed, slot i replaced by the difference
// insertion (-2PU forward, -2U^dag P on the dagger side), and the rest plain.
// Then v(U') - v(U) = sum_i a_i / 2^m with each |a_i| <= 2^{m-n+1}.
inline std::vector<std::complex<double>> telescoping_terms(
    const InterleavedAlgorithm& alg, const DeterministicOracle& orc,
    int dense_limit = kDefaultDenseLimit) {
  check_dense_limit(alg.m, dense_limit);
  const int r = alg.rounds();
  const std::int64_t dim = std::int64_t{1} << alg.m;
  const std::int64_t anc = dim >> orc.n;
  DeterministicOracle flipped = make_flipped_oracle(orc);

  const Eigen::MatrixXcd u = kron_with_identity_below(orc.unitary, anc);
  const Eigen::MatrixXcd up = kron_with_identity_below(flipped.unitary, anc);
  const Eigen::MatrixXcd p = kron_with_identity_below(flip_projector(orc), anc);
  const Eigen::MatrixXcd u_dag = u.adjoint();
  const Eigen::MatrixXcd up_dag = up.adjoint();
  const Eigen::MatrixXcd ins_fwd = -2.0 * (p * u);
  const Eigen::MatrixXcd ins_dag = -2.0 * (u_dag * p);
  const Eigen::MatrixXcd z1 =
      pauli_matrix(PauliString::single(alg.m, 1, PauliOp::Z), dense_limit);
  std::vector<Eigen::MatrixXcd> nets, nets_dag;
  for (const GateNetwork& net : alg.networks) {
    nets.push_back(network_unitary(net, dense_limit));
    nets_dag.push_back(nets.back().adjoint());
  }

  // Written product, left to right. Slot entries carry their position index
  // (1..2r); network and Z factors carry position 0.
  struct Factor {
    const Eigen::MatrixXcd* fixed;  // null for a slot
    int position;
    bool dagger;
  };
  std::vector<Factor> chain;
  for (int j = r; j >= 1; --j) {
    chain.push_back({&nets[j], 0, false});
    chain.push_back({nullptr, r - j + 1, false});
  }
  chain.push_back({&nets[0], 0, false});
  chain.push_back({&z1, 0, false});
  chain.push_back({&nets_dag[0], 0, false});
  for (int j = 1; j <= r; ++j) {
    chain.push_back({nullptr, r + j, true});
    chain.push_back({&nets_dag[j], 0, false});
  }
  chain.push_back({&z1, 0, false});

  std::vector<std::complex<double>> terms;
  for (int i = 1; i <= 2 * r; ++i) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Factor& f : chain) {
      const Eigen::MatrixXcd* factor = f.fixed;
      if (!factor) {
        if (f.position == i)
          factor = f.dagger ? &ins_dag : &ins_fwd;
        else if (f.position < i)
          factor = f.dagger ? &up_dag : &up;
        else
          factor = f.dagger ? &u_dag : &u;
      }
      prod = prod * (*factor);
    }
    terms.push_back(prod.trace());
  }
  return terms;
}

struct SeparationCell {
  int n = 0;
  int r = 0;
  int m = 0;
  double bound = 0;  // 4r / 2^n
  double observed_max = 0;
  int violations = 0;
  int trials = 0;
};

// Sweeps |v(U') - v(U)| across register sizes, oracle-call counts, and
// workspace sizes m in {n, n+1, n+2}, with fresh random oracles and
// algorithms per trial. Reproducible: trial streams derive from (seed, cell,
// trial index) only.
inline std::vector<SeparationCell> separation_sweep(int n_lo, int n_hi, int r_lo,
                                                    int r_hi, int trials,
                                                    std::uint64_t seed) {
  if (n_lo < 1 || n_lo > n_hi || r_lo < 0 || r_lo > r_hi || trials < 1)
    throw std::invalid_argument("separation_sweep: bad ranges");
  check_dense_limit(n_hi + 2, kDefaultDenseLimit);
  std::vector<SeparationCell> cells;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int r = r_lo; r <= r_hi; ++r) {
      for (int m = n; m <= n + 2; ++m) {
        SeparationCell cell;
        cell.n = n;
        cell.r = r;
        cell.m = m;
        cell.bound = 4.0 * r * std::ldexp(1.0, -n);
        cell.trials = trials;
        for (int t = 0; t < trials; ++t) {
          std::uint64_t stream =
              ((static_cast<std::uint64_t>(n) * 64 + static_cast<std::uint64_t>(r)) *
                   64 +
               static_cast<std::uint64_t>(m - n)) *
                  0x100000000ull +
              static_cast<std::uint64_t>(t);
          SeqRng rng(seed, stream);
          DeterministicOracle orc = random_oracle(n, rng);
          InterleavedAlgorithm alg = random_algorithm(m, r, 10, rng);
          double v_plain = evaluate_v(alg, orc);
          double v_flip = v_of_matrix(
              algorithm_matrix(alg, make_flipped_oracle(orc).unitary));
          double diff = std::abs(v_flip - v_plain);
          cell.observed_max = std::max(cell.observed_max, diff);
          if (diff > cell.bound + 1e-9) ++cell.violations;
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

}  // namespace cleanq
