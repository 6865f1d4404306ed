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

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cleanq {

// Single-qubit Pauli letter, two bits per the encoding I=00, X=01, Y=10, Z=11.
// The low bit is code&1, the high bit is code>>1. In symplectic terms
// z = high and x = high XOR low, matching sigma = i^{xz} X^x Z^z per qubit.
enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_op_char(PauliOp op) {
  return "IXYZ"[static_cast<int>(op)];
}

// An n-qubit Pauli string without phase, packed two bits per qubit,
// 32 qubits per 64-bit word. Qubit indices are 1-based; qubit k lives at
// bits 2(k-1) and 2(k-1)+1 of word (k-1)/32. Bits past 2n are always zero,
// so equality is plain word comparison.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(int n) : n_(n), words_((n + 31) / 32, 0) {
    if (n < 1) throw std::invalid_argument("PauliString: need at least 1 qubit");
  }

  static PauliString identity(int n) { return PauliString(n); }

  static PauliString single(int n, int qubit, PauliOp op) {
    PauliString s(n);
    s.set_op(qubit, op);
    return s;
  }

  // Text order puts qubit 1 first: "XZI" is X on qubit 1, Z on qubit 2.
  static PauliString parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("PauliString: empty text");
    PauliString s(static_cast<int>(text.size()));
    for (int k = 0; k < static_cast<int>(text.size()); ++k) {
      PauliOp op;
      switch (text[k]) {
        case 'I': op = PauliOp::I; break;
        case 'X': op = PauliOp::X; break;
        case 'Y': op = PauliOp::Y; break;
        case 'Z': op = PauliOp::Z; break;
        default:
          throw std::invalid_argument(
              std::string("PauliString: invalid character '") + text[k] +
              "' at position " + std::to_string(k + 1) + " (want I, X, Y, or Z)");
      }
      s.set_op(k + 1, op);
    }
    return s;
  }

  int num_qubits() const { return n_; }
  int num_words() const { return static_cast<int>(words_.size()); }
  std::uint64_t word(int i) const { return words_[i]; }

  PauliOp op(int qubit) const {
    check_qubit(qubit);
    int q = qubit - 1;
    return static_cast<PauliOp>((words_[q >> 5] >> (2 * (q & 31))) & 3u);
  }

  void set_op(int qubit, PauliOp op) {
    check_qubit(qubit);
    int q = qubit - 1;
    std::uint64_t& w = words_[q >> 5];
    int shift = 2 * (q & 31);
    w = (w & ~(std::uint64_t{3} << shift)) |
        (static_cast<std::uint64_t>(op) << shift);
  }

  bool is_identity() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  int weight() const {
    int count = 0;
    for (std::uint64_t w : words_) {
      std::uint64_t lo = w & kLowBits, hi = (w >> 1) & kLowBits;
      count += std::popcount(lo | hi);
    }
    return count;
  }

  std::string str() const {
    std::string out(n_, 'I');
    for (int k = 1; k <= n_; ++k) out[k - 1] = pauli_op_char(op(k));
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.words_ < b.words_;
  }

  friend PauliString string_xor(const PauliString& a, const PauliString& b);

  static constexpr std::uint64_t kLowBits = 0x5555555555555555ull;

 private:
  void check_qubit(int qubit) const {
    if (qubit < 1 || qubit > n_)
      throw std::out_of_range("PauliString: qubit index " +
                              std::to_string(qubit) + " outside 1.." +
                              std::to_string(n_));
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A Pauli string together with an exact phase i^{phase_exp}, phase_exp in 0..3.
struct PhasedPauli {
  PauliString string;
  std::uint8_t phase_exp = 0;

  std::complex<double> phase() const {
    static const std::complex<double> table[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_exp & 3];
  }
};

// Codewise XOR of the packed strings: the unphased product string.
inline PauliString string_xor(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("pauli product: size mismatch (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + " qubits)");
  PauliString out = a;
  for (size_t i = 0; i < out.words_.size(); ++i) out.words_[i] ^= b.words_[i];
  return out;
}

// sigma_a sigma_b = i^e sigma_{a xor b}. With per-word symplectic halves
// x = hi^lo, z = hi, the exponent is
//   e = |x1&z1| + |x2&z2| - |x3&z3| + 2|z1&x2|  (mod 4),  x3=x1^x2, z3=z1^z2,
// which is the i^{xz} X^x Z^z bookkeeping summed over qubits.
inline PhasedPauli pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("pauli_mul: size mismatch (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + " qubits)");
  PhasedPauli result;
  int e = 0;
  for (int i = 0; i < a.num_words(); ++i) {
    std::uint64_t wa = a.word(i), wb = b.word(i);
    std::uint64_t lo1 = wa & PauliString::kLowBits,
                  hi1 = (wa >> 1) & PauliString::kLowBits;
    std::uint64_t lo2 = wb & PauliString::kLowBits,
                  hi2 = (wb >> 1) & PauliString::kLowBits;
    std::uint64_t x1 = hi1 ^ lo1, z1 = hi1;
    std::uint64_t x2 = hi2 ^ lo2, z2 = hi2;
    std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
    e += std::popcount(x1 & z1) + std::popcount(x2 & z2) -
         std::popcount(x3 & z3) + 2 * std::popcount(z1 & x2);
  }
  result.phase_exp = static_cast<std::uint8_t>(((e % 4) + 4) % 4);
  result.string = string_xor(a, b);
  return result;
}

// Strings commute iff the symplectic overlap |x1&z2| + |z1&x2| is even.
inline bool commutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("commutes: size mismatch");
  int overlap = 0;
  for (int i = 0; i < a.num_words(); ++i) {
    std::uint64_t wa = a.word(i), wb = b.word(i);
    std::uint64_t lo1 = wa & PauliString::kLowBits,
                  hi1 = (wa >> 1) & PauliString::kLowBits;
    std::uint64_t lo2 = wb & PauliString::kLowBits,
                  hi2 = (wb >> 1) & PauliString::kLowBits;
    std::uint64_t x1 = hi1 ^ lo1, z1 = hi1;
    std::uint64_t x2 = hi2 ^ lo2, z2 = hi2;
    overlap += std::popcount((x1 & z2) ^ (z1 & x2));
  }
  return (overlap & 1) == 0;
}

// Embeds s into a longer register with its qubits moved up by `offset`
// (new qubit index = old + offset); the new slots are identity.
inline PauliString shifted(const PauliString& s, int offset, int new_n) {
  if (offset < 0 || s.num_qubits() + offset > new_n)
    throw std::invalid_argument("shifted: target register too small");
  PauliString out(new_n);
  for (int k = 1; k <= s.num_qubits(); ++k) out.set_op(k + offset, s.op(k));
  return out;
}

}  // namespace cleanq
