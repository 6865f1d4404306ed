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

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cleanq/cleanq.hpp"

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

struct SharedOptions {
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  double fail_prob = 0.05;
  std::string meter = "projective";
  double noise_variance = 1.0;
  std::uint64_t shots = 0;
  int dense_limit = cleanq::kDefaultDenseLimit;

  cleanq::NoisyMeter make_meter() const {
    return cleanq::NoisyMeter(cleanq::parse_meter_mode(meter), noise_variance,
                              seed);
  }
  cleanq::EstimationBudget make_budget() const {
    return cleanq::EstimationBudget(epsilon, fail_prob, shots);
  }
};

void add_shared_options(CLI::App* cmd, SharedOptions& opt) {
  cmd->add_option("--seed", opt.seed, "Base RNG seed")
      ->envname("CLEANQ_SEED");
  cmd->add_option("--epsilon", opt.epsilon, "Target estimate accuracy")
      ->envname("CLEANQ_EPSILON");
  cmd->add_option("--fail-prob", opt.fail_prob,
                  "Estimate failure probability bound")
      ->envname("CLEANQ_FAIL_PROB");
  cmd->add_option("--meter", opt.meter, "Readout model: projective|gaussian")
      ->envname("CLEANQ_METER");
  cmd->add_option("--noise-variance", opt.noise_variance,
                  "Gaussian readout variance s")
      ->envname("CLEANQ_NOISE_VARIANCE");
  cmd->add_option("--shots", opt.shots,
                  "Total shot override (0 = derive from epsilon)")
      ->envname("CLEANQ_SHOTS");
  cmd->add_option("--dense-limit", opt.dense_limit,
                  "Largest register kept as a dense matrix")
      ->envname("CLEANQ_DENSE_LIMIT");
}

json shared_json(const SharedOptions& opt) {
  return json{{"seed", opt.seed},
              {"epsilon", opt.epsilon},
              {"fail_prob", opt.fail_prob},
              {"meter", opt.meter},
              {"noise_variance", opt.noise_variance},
              {"shots_override", opt.shots}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t parse_basis_bits(const std::string& text, int n) {
  if (static_cast<int>(text.size()) != n)
    throw std::invalid_argument("basis string '" + text + "' must have length " +
                                std::to_string(n));
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("basis string must be over {0,1}");
    v = v * 2 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

void lint_locality(const cleanq::PauliSum& h) {
  for (const auto& [c, b] : h.terms) {
    if (b.weight() > 2) {
      std::cerr << "warning: term " << b.str() << " has weight " << b.weight()
                << "; the spectroscopy guarantees are tuned for 2-local terms\n";
    }
  }
}

void write_spectrum_csv(const std::string& path,
                        const cleanq::SpectrumEstimate& spec) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << std::setprecision(17);
  out << "frequency,density\n";
  for (std::size_t i = 0; i < spec.frequencies.size(); ++i)
    out << spec.frequencies[i] << "," << spec.density[i] << "\n";
}

void write_samples_csv(const std::string& path,
                       const std::vector<cleanq::TimeSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << std::setprecision(17);
  out << "t,re,im,std_error\n";
  for (const auto& s : samples)
    out << s.t << "," << s.value.real() << "," << s.value.imag() << ","
        << s.std_error << "\n";
}

json peaks_json(const std::vector<cleanq::Peak>& peaks) {
  json arr = json::array();
  for (const auto& p : peaks)
    arr.push_back({{"frequency", p.frequency},
                   {"height", p.height},
                   {"bin", p.bin}});
  return arr;
}

void write_sidecar(const std::string& csv_path, const json& j) {
  std::ofstream out(csv_path + ".json");
  if (!out)
    throw std::invalid_argument("cannot open output file: " + csv_path + ".json");
  out << j.dump(2) << "\n";
}

int run_trace_pair(const SharedOptions& opt, const std::string& circuit_path,
                   const std::string& a_text, const std::string& b_text) {
  cleanq::GateNetwork u = cleanq::parse_circuit_file(circuit_path);
  cleanq::PauliString a = cleanq::PauliString::parse(a_text);
  cleanq::PauliString b = cleanq::PauliString::parse(b_text);
  cleanq::EstimateResult est =
      cleanq::dqc1_pauli_pair(u, a, b, opt.make_meter(), opt.make_budget());
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "trace-pair";
  j["n"] = u.n;
  j["a"] = a.str();
  j["b"] = b.str();
  j["value"] = est.value;
  j["std_error"] = est.std_error;
  j["total_shots"] = est.shots;
  if (u.n <= opt.dense_limit) {
    Eigen::MatrixXcd ud = cleanq::network_unitary(u, opt.dense_limit);
    Eigen::MatrixXcd prod = cleanq::pauli_matrix(a, opt.dense_limit) * ud *
                            cleanq::pauli_matrix(b, opt.dense_limit) *
                            ud.adjoint();
    j["exact"] = prod.trace().real() / static_cast<double>(prod.rows());
  }
  emit(j);
  return 0;
}

int run_pauli_coeff(const SharedOptions& opt, const std::string& circuit_path,
                    const std::string& b_text) {
  cleanq::GateNetwork u = cleanq::parse_circuit_file(circuit_path);
  cleanq::PauliString b = cleanq::PauliString::parse(b_text);
  cleanq::PauliCoefficient est =
      cleanq::estimate_pauli_coefficient(u, b, opt.make_meter(), opt.make_budget());
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "pauli-coeff";
  j["n"] = u.n;
  j["b"] = b.str();
  j["value_re"] = est.value.real();
  j["value_im"] = est.value.imag();
  j["std_error"] = est.std_error;
  j["total_shots"] = est.shots;
  if (u.n <= opt.dense_limit) {
    Eigen::MatrixXcd ud = cleanq::network_unitary(u, opt.dense_limit);
    std::complex<double> exact =
        (cleanq::pauli_matrix(b, opt.dense_limit) * ud).trace() /
        static_cast<double>(ud.rows());
    j["exact_re"] = exact.real();
    j["exact_im"] = exact.imag();
  }
  emit(j);
  return 0;
}

int run_matrix_element(const SharedOptions& opt, const std::string& circuit_path,
                       const std::string& row_text, const std::string& col_text) {
  cleanq::GateNetwork u = cleanq::parse_circuit_file(circuit_path);
  std::uint64_t row = parse_basis_bits(row_text, u.n);
  std::uint64_t col = parse_basis_bits(col_text, u.n);
  cleanq::ComplexEstimate est = cleanq::dqcp_matrix_element(
      u, row, col, opt.make_meter(), opt.make_budget());
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "matrix-element";
  j["n"] = u.n;
  j["row"] = row_text;
  j["col"] = col_text;
  j["value_re"] = est.value.real();
  j["value_im"] = est.value.imag();
  j["std_error_re"] = est.std_error_re;
  j["std_error_im"] = est.std_error_im;
  j["total_shots"] = est.shots;
  if (u.n <= opt.dense_limit) {
    Eigen::MatrixXcd ud = cleanq::network_unitary(u, opt.dense_limit);
    std::complex<double> exact = ud(static_cast<Eigen::Index>(row),
                                    static_cast<Eigen::Index>(col));
    j["exact_re"] = exact.real();
    j["exact_im"] = exact.imag();
  }
  emit(j);
  return 0;
}

int run_pseudo_pure(const SharedOptions& opt, const std::string& circuit_path) {
  cleanq::GateNetwork u = cleanq::parse_circuit_file(circuit_path);
  cleanq::PseudoPureReport rep =
      cleanq::pseudo_pure_answer(u, opt.make_meter(), opt.make_budget());
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "pseudo-pure";
  j["n"] = u.n;
  j["alpha"] = rep.alpha;
  j["raw_signal"] = rep.raw_signal;
  j["signal_scale"] = rep.signal_scale;
  j["exact_alpha"] = rep.exact_alpha;
  j["exact_signal"] = rep.exact_signal;
  j["std_error"] = rep.std_error;
  j["total_shots"] = rep.shots;
  j["shots_for_sign"] = rep.shots_for_sign;
  emit(j);
  return 0;
}

int run_spectrum(const SharedOptions& opt, const std::string& ham_path,
                 double dt, int npoints, int steps, const std::string& window,
                 const std::string& out_path, const std::string& samples_path,
                 bool force) {
  cleanq::PauliSum h = cleanq::parse_hamiltonian_file(ham_path);
  lint_locality(h);
  double bound = cleanq::nyquist_dt_bound(h);
  if (dt >= bound && !force)
    throw std::invalid_argument(
        "dt = " + std::to_string(dt) + " reaches the aliasing bound pi/|c|_1 = " +
        std::to_string(bound) + "; shrink dt or pass --force");
  cleanq::WindowKind kind = cleanq::parse_window_kind(window);
  std::vector<cleanq::TimeSample> samples = cleanq::sample_f_grid(
      h, dt, npoints, steps, opt.make_meter(), opt.make_budget());
  cleanq::SpectrumEstimate spec = cleanq::spectrum_fft(samples, kind);
  std::vector<cleanq::Peak> peaks = cleanq::detect_peaks(spec);
  write_spectrum_csv(out_path, spec);
  if (!samples_path.empty()) write_samples_csv(samples_path, samples);

  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "spectrum";
  j["n"] = h.n;
  j["dt"] = dt;
  j["npoints"] = npoints;
  j["trotter_steps_per_dt"] = steps;
  j["window"] = cleanq::window_kind_name(kind);
  j["resolution"] = spec.resolution;
  j["nyquist_dt"] = bound;
  j["out"] = out_path;
  j["peaks"] = peaks_json(peaks);
  if (h.n <= opt.dense_limit) {
    json ev = json::array();
    for (double lambda : cleanq::eigen_spectrum(h, opt.dense_limit))
      ev.push_back(lambda);
    j["dense_eigenvalues"] = ev;
  }
  write_sidecar(out_path, j);
  emit(j);
  return 0;
}

int run_unitary_spectrum(const SharedOptions& opt, const std::string& circuit_path,
                         int npoints, const std::string& window,
                         const std::string& out_path,
                         const std::string& samples_path) {
  cleanq::GateNetwork w = cleanq::parse_circuit_file(circuit_path);
  cleanq::WindowKind kind = cleanq::parse_window_kind(window);
  std::vector<cleanq::TimeSample> samples = cleanq::sample_f_unitary_grid(
      w, npoints, opt.make_meter(), opt.make_budget());
  cleanq::SpectrumEstimate spec = cleanq::spectrum_fft(samples, kind);
  std::vector<cleanq::Peak> peaks = cleanq::detect_peaks(spec);
  write_spectrum_csv(out_path, spec);
  if (!samples_path.empty()) write_samples_csv(samples_path, samples);

  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "unitary-spectrum";
  j["n"] = w.n;
  j["npoints"] = npoints;
  j["window"] = cleanq::window_kind_name(kind);
  j["resolution"] = spec.resolution;
  j["out"] = out_path;
  j["peaks"] = peaks_json(peaks);
  if (w.n <= opt.dense_limit) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(
        cleanq::network_unitary(w, opt.dense_limit), false);
    std::vector<double> phases;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      phases.push_back(-std::arg(es.eigenvalues()(i)));
    std::sort(phases.begin(), phases.end());
    j["dense_eigenphases"] = phases;
  }
  write_sidecar(out_path, j);
  emit(j);
  return 0;
}

int run_separation(const SharedOptions& opt, int nmin, int nmax, int rmin,
                   int rmax, int trials, const std::string& out_path) {
  std::vector<cleanq::SeparationCell> cells =
      cleanq::separation_sweep(nmin, nmax, rmin, rmax, trials, opt.seed);
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << std::setprecision(17);
  out << "n,r,m,bound,observed_max,violations,trials\n";
  int violations = 0;
  double max_margin = -1e300;
  for (const auto& c : cells) {
    out << c.n << "," << c.r << "," << c.m << "," << c.bound << ","
        << c.observed_max << "," << c.violations << "," << c.trials << "\n";
    violations += c.violations;
    max_margin = std::max(max_margin, c.observed_max - c.bound);
  }
  out.close();
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "separation";
  j["cells"] = cells.size();
  j["trials_per_cell"] = trials;
  j["violations"] = violations;
  j["max_observed_minus_bound"] = max_margin;
  j["out"] = out_path;
  emit(j);
  if (violations > 0) {
    std::cerr << "separation bound violated in " << violations << " trials\n";
    return 3;
  }
  return 0;
}

int run_trotter_check(const SharedOptions& opt, const std::string& ham_path,
                      double t, std::vector<int> steps,
                      const std::string& out_path) {
  cleanq::PauliSum h = cleanq::parse_hamiltonian_file(ham_path);
  if (h.n > opt.dense_limit)
    throw std::invalid_argument("trotter-check needs a dense register");
  if (steps.empty()) steps = {8, 16, 32, 64, 128};
  std::sort(steps.begin(), steps.end());
  Eigen::MatrixXcd exact = cleanq::hamiltonian_exponential(h, t, opt.dense_limit);
  std::vector<double> errors;
  for (int s : steps) {
    Eigen::MatrixXcd approx =
        cleanq::network_unitary(cleanq::trotterize(h, t, s), opt.dense_limit);
    errors.push_back((approx - exact).norm());
  }
  // Least-squares slope of log error against log(t/steps); first-order
  // accumulation gives slope ~1.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] <= 0) continue;
    double x = std::log(t / steps[i]);
    double y = std::log(errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++k;
  }
  double slope = k >= 2 ? (k * sxy - sx * sy) / (k * sxx - sx * sx) : 0.0;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << std::setprecision(17);
    out << "steps,delta,error\n";
    for (std::size_t i = 0; i < errors.size(); ++i)
      out << steps[i] << "," << t / steps[i] << "," << errors[i] << "\n";
  }
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "trotter-check";
  j["n"] = h.n;
  j["t"] = t;
  j["steps"] = steps;
  j["errors"] = errors;
  j["slope"] = slope;
  if (!out_path.empty()) j["out"] = out_path;
  emit(j);
  return 0;
}

int run_simulate(const SharedOptions& opt, const std::string& circuit_path,
                 const std::string& init, std::vector<std::string> observables) {
  cleanq::GateNetwork u = cleanq::parse_circuit_file(circuit_path);
  cleanq::DensityState state = [&] {
    if (init == "dqcp") return cleanq::DensityState::dqcp(u.n, opt.dense_limit);
    if (init == "dqc1") return cleanq::DensityState::dqc1(u.n, opt.dense_limit);
    throw std::invalid_argument("unknown init state: " + init);
  }();
  state.apply_network(u);
  if (observables.empty())
    observables.push_back("Z" + std::string(static_cast<std::size_t>(u.n - 1), 'I'));
  json results = json::array();
  std::uint64_t tag = 1;
  for (const std::string& text : observables) {
    cleanq::PauliString b = cleanq::PauliString::parse(text);
    json row;
    row["observable"] = b.str();
    row["exact"] = state.expectation(b);
    if (!b.is_identity()) {
      cleanq::CliffordConjugation conj = cleanq::synthesize_conjugation(
          b, cleanq::PauliString::single(u.n, 1, cleanq::PauliOp::Z),
          opt.dense_limit);
      cleanq::DensityState st = state;
      st.apply_network(conj.network);
      cleanq::EstimateResult est = cleanq::estimate_mean(
          st, opt.make_meter().substream(tag), opt.make_budget());
      row["estimate"] = est.value / conj.sign;
      row["std_error"] = est.std_error;
      row["total_shots"] = est.shots;
    }
    results.push_back(row);
    ++tag;
  }
  json j = shared_json(opt);
  j["format_version"] = kFormatVersion;
  j["command"] = "simulate";
  j["n"] = u.n;
  j["init"] = init;
  j["results"] = results;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cleanq: one-clean-qubit and pure-state simulation protocols"};
  app.require_subcommand(1);

  SharedOptions opt;

  auto* trace_pair = app.add_subcommand(
      "trace-pair", "Estimate tr(sigma_a U sigma_b U^dag)/2^n");
  std::string tp_circuit, tp_a, tp_b;
  trace_pair->add_option("--circuit", tp_circuit, "Gate network file")
      ->required();
  trace_pair->add_option("--a", tp_a, "Readout Pauli string")->required();
  trace_pair->add_option("--b", tp_b, "Prepared Pauli string")->required();
  add_shared_options(trace_pair, opt);

  auto* pauli_coeff = app.add_subcommand(
      "pauli-coeff", "Estimate the expansion coefficient tr(sigma_b U)/2^n");
  std::string pc_circuit, pc_b;
  pauli_coeff->add_option("--circuit", pc_circuit, "Gate network file")
      ->required();
  pauli_coeff->add_option("--b", pc_b, "Pauli string (identity allowed)")
      ->required();
  add_shared_options(pauli_coeff, opt);

  auto* matrix_element = app.add_subcommand(
      "matrix-element", "Estimate <row|U|col> from basis-state preparations");
  std::string me_circuit, me_row, me_col;
  matrix_element->add_option("--circuit", me_circuit, "Gate network file")
      ->required();
  matrix_element->add_option("--row", me_row, "Bra basis string over {0,1}")
      ->required();
  matrix_element->add_option("--col", me_col, "Ket basis string over {0,1}")
      ->required();
  add_shared_options(matrix_element, opt);

  auto* pseudo_pure = app.add_subcommand(
      "pseudo-pure", "Run a computation on the pseudo-pure preparation");
  std::string pp_circuit;
  pseudo_pure->add_option("--circuit", pp_circuit, "Gate network file")
      ->required();
  add_shared_options(pseudo_pure, opt);

  auto* spectrum = app.add_subcommand(
      "spectrum", "Estimate the eigenvalue density of a Pauli-sum Hamiltonian");
  std::string sp_ham, sp_window = "hann", sp_out, sp_samples;
  double sp_dt = 0.25;
  int sp_npoints = 256, sp_steps = 32;
  bool sp_force = false;
  spectrum->add_option("--hamiltonian", sp_ham, "Pauli-sum file")->required();
  spectrum->add_option("--dt", sp_dt, "Time grid spacing");
  spectrum->add_option("--npoints", sp_npoints, "Number of grid points");
  spectrum->add_option("--trotter-steps", sp_steps, "Trotter steps per dt");
  spectrum->add_option("--window", sp_window, "boxcar|hann|exponential");
  spectrum->add_option("--out", sp_out, "Spectrum CSV path")->required();
  spectrum->add_option("--samples-out", sp_samples, "Time samples CSV path");
  spectrum->add_flag("--force", sp_force, "Ignore the aliasing bound on dt");
  add_shared_options(spectrum, opt);

  auto* unitary_spectrum = app.add_subcommand(
      "unitary-spectrum", "Estimate the eigenphase density of a gate network");
  std::string us_circuit, us_window = "hann", us_out, us_samples;
  int us_npoints = 64;
  unitary_spectrum->add_option("--circuit", us_circuit, "Gate network file")
      ->required();
  unitary_spectrum->add_option("--npoints", us_npoints,
                               "Number of powers (k = 0..npoints-1)");
  unitary_spectrum->add_option("--window", us_window, "boxcar|hann|exponential");
  unitary_spectrum->add_option("--out", us_out, "Spectrum CSV path")->required();
  unitary_spectrum->add_option("--samples-out", us_samples,
                               "Time samples CSV path");
  add_shared_options(unitary_spectrum, opt);

  auto* separation = app.add_subcommand(
      "separation", "Sweep the oracle-answer separation bound 4r/2^n");
  int se_nmin = 2, se_nmax = 6, se_rmin = 0, se_rmax = 4, se_trials = 200;
  std::string se_out;
  separation->add_option("--nmin", se_nmin, "Smallest oracle register");
  separation->add_option("--nmax", se_nmax, "Largest oracle register");
  separation->add_option("--rmin", se_rmin, "Fewest oracle calls");
  separation->add_option("--rmax", se_rmax, "Most oracle calls");
  separation->add_option("--trials", se_trials, "Trials per cell");
  separation->add_option("--out", se_out, "Sweep table CSV path")->required();
  add_shared_options(separation, opt);

  auto* trotter_check = app.add_subcommand(
      "trotter-check", "Measure product-formula error against the dense truth");
  std::string tc_ham, tc_out;
  double tc_t = 1.0;
  std::vector<int> tc_steps;
  trotter_check->add_option("--hamiltonian", tc_ham, "Pauli-sum file")
      ->required();
  trotter_check->add_option("--t", tc_t, "Evolution time");
  trotter_check->add_option("--steps", tc_steps,
                            "Step counts (default 8,16,32,64,128)")
      ->delimiter(',');
  trotter_check->add_option("--out", tc_out, "Error table CSV path");
  add_shared_options(trotter_check, opt);

  auto* simulate = app.add_subcommand(
      "simulate", "Evolve an initial state and report observables");
  std::string si_circuit, si_init = "dqcp";
  std::vector<std::string> si_obs;
  simulate->add_option("--circuit", si_circuit, "Gate network file")
      ->required();
  simulate->add_option("--init", si_init, "Initial state: dqcp|dqc1");
  simulate->add_option("--observable", si_obs,
                       "Pauli observable (repeatable; default Z on qubit 1)");
  add_shared_options(simulate, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(trace_pair))
      return run_trace_pair(opt, tp_circuit, tp_a, tp_b);
    if (app.got_subcommand(pauli_coeff))
      return run_pauli_coeff(opt, pc_circuit, pc_b);
    if (app.got_subcommand(matrix_element))
      return run_matrix_element(opt, me_circuit, me_row, me_col);
    if (app.got_subcommand(pseudo_pure)) return run_pseudo_pure(opt, pp_circuit);
    if (app.got_subcommand(spectrum))
      return run_spectrum(opt, sp_ham, sp_dt, sp_npoints, sp_steps, sp_window,
                          sp_out, sp_samples, sp_force);
    if (app.got_subcommand(unitary_spectrum))
      return run_unitary_spectrum(opt, us_circuit, us_npoints, us_window, us_out,
                                  us_samples);
    if (app.got_subcommand(separation))
      return run_separation(opt, se_nmin, se_nmax, se_rmin, se_rmax, se_trials,
                            se_out);
    if (app.got_subcommand(trotter_check))
      return run_trotter_check(opt, tc_ham, tc_t, tc_steps, tc_out);
    if (app.got_subcommand(simulate))
      return run_simulate(opt, si_circuit, si_init, si_obs);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const cleanq::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
