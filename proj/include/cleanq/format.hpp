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

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cleanq/circuit.hpp"
#include "cleanq/pauli.hpp"

namespace cleanq {

// Parse failure with a file:line:column location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, int col, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        file_(file), line_(line), col_(col) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string file_;
  int line_, col_;
};

namespace detail {

struct Token {
  std::string text;
  int col = 0;  // 1-based column of the first character
};

// Whitespace-separated tokens; '#' starts a comment running to end of line.
inline std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

inline double parse_double(const Token& tok, const std::string& file, int line) {
  try {
    size_t used = 0;
    double v = std::stod(tok.text, &used);
    if (used != tok.text.size())
      throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ParseError(file, line, tok.col,
                     "expected a decimal number, got '" + tok.text + "'");
  }
}

inline long parse_int(const Token& tok, const std::string& file, int line) {
  try {
    size_t used = 0;
    long v = std::stol(tok.text, &used);
    if (used != tok.text.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(file, line, tok.col,
                     "expected an integer, got '" + tok.text + "'");
  }
}

inline PauliString parse_pauli_token(const Token& tok, const std::string& file,
                                     int line, int expect_n) {
  PauliString s(1);
  try {
    s = PauliString::parse(tok.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(file, line, tok.col, e.what());
  }
  if (expect_n > 0 && s.num_qubits() != expect_n)
    throw ParseError(file, line, tok.col,
                     "Pauli string has " + std::to_string(s.num_qubits()) +
                         " qubits, expected " + std::to_string(expect_n));
  return s;
}

}  // namespace detail

// Circuit text format, one gate per line (qubits are 1-based, angles in
// radians, '#' comments):
//   rot <pauli-string> <angle>
//   crot <control-qubit> <0|1> <pauli-string> <angle>
// The register size is inferred from the first Pauli string; crot strings
// span all qubits with 'I' at the control position.
inline GateNetwork parse_circuit(std::istream& in, const std::string& file) {
  GateNetwork net;
  std::string line;
  int lineno = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (kw.text == "rot") {
      if (tokens.size() != 3)
        throw ParseError(file, lineno, kw.col,
                         "rot takes <pauli-string> <angle>");
      PauliString axis = detail::parse_pauli_token(tokens[1], file, lineno, n);
      double angle = detail::parse_double(tokens[2], file, lineno);
      if (n == 0) { n = axis.num_qubits(); net = GateNetwork(n); }
      try {
        net.append(Gate::rotation(axis, angle));
      } catch (const std::invalid_argument& e) {
        throw ParseError(file, lineno, tokens[1].col, e.what());
      }
    } else if (kw.text == "crot") {
      if (tokens.size() != 5)
        throw ParseError(file, lineno, kw.col,
                         "crot takes <control-qubit> <0|1> <pauli-string> <angle>");
      long control = detail::parse_int(tokens[1], file, lineno);
      long value = detail::parse_int(tokens[2], file, lineno);
      if (value != 0 && value != 1)
        throw ParseError(file, lineno, tokens[2].col,
                         "control value must be 0 or 1");
      PauliString axis = detail::parse_pauli_token(tokens[3], file, lineno, n);
      double angle = detail::parse_double(tokens[4], file, lineno);
      if (n == 0) { n = axis.num_qubits(); net = GateNetwork(n); }
      if (control < 1 || control > n)
        throw ParseError(file, lineno, tokens[1].col,
                         "control qubit " + std::to_string(control) +
                             " outside 1.." + std::to_string(n));
      try {
        net.append(Gate::controlled_rotation(static_cast<int>(control),
                                             static_cast<int>(value), axis,
                                             angle));
      } catch (const std::invalid_argument& e) {
        throw ParseError(file, lineno, tokens[3].col, e.what());
      }
    } else {
      throw ParseError(file, lineno, kw.col,
                       "unknown gate keyword '" + kw.text +
                           "' (expected rot or crot)");
    }
  }
  if (n == 0)
    throw ParseError(file, lineno == 0 ? 1 : lineno, 1,
                     "circuit file contains no gates");
  return net;
}

inline GateNetwork parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
  return parse_circuit(in, path);
}

// Hamiltonian text format, one term per line: <coefficient> <pauli-string>.
inline PauliSum parse_hamiltonian(std::istream& in, const std::string& file) {
  std::string line;
  int lineno = 0;
  int n = 0;
  std::vector<std::pair<double, PauliString>> terms;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError(file, lineno, tokens[0].col,
                       "expected <coefficient> <pauli-string>");
    double c = detail::parse_double(tokens[0], file, lineno);
    PauliString b = detail::parse_pauli_token(tokens[1], file, lineno, n);
    if (n == 0) n = b.num_qubits();
    terms.emplace_back(c, b);
  }
  if (n == 0)
    throw ParseError(file, lineno == 0 ? 1 : lineno, 1,
                     "Hamiltonian file contains no terms");
  return PauliSum(n, std::move(terms));
}

inline PauliSum parse_hamiltonian_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Hamiltonian file: " + path);
  return parse_hamiltonian(in, path);
}

inline void write_circuit(std::ostream& out, const GateNetwork& net) {
  out << std::setprecision(17);
  for (const Gate& g : net.gates) {
    if (g.kind == Gate::Kind::PauliRotation)
      out << "rot " << g.axis.str() << " " << g.angle << "\n";
    else
      out << "crot " << g.control << " " << g.control_value << " "
          << g.axis.str() << " " << g.angle << "\n";
  }
}

inline void write_hamiltonian(std::ostream& out, const PauliSum& h) {
  out << std::setprecision(17);
  for (const auto& [c, b] : h.terms) out << c << " " << b.str() << "\n";
}

}  // namespace cleanq
