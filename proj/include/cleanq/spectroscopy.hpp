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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "cleanq/circuit.hpp"
#include "cleanq/measure.hpp"
#include "cleanq/pauli.hpp"
#include "cleanq/protocols.hpp"
#include "cleanq/state.hpp"

namespace cleanq {

// One point of f(t) = tr(e^{-iHt}) / 2^{n+1} estimated on n+1 qubits.
// |value| <= 1/2 up to estimation noise.
struct TimeSample {
  double t = 0;
  std::complex<double> value;
  double std_error = 0;
};

namespace detail {

// Shared readout: with the control qubit conjugated from Z to X before the
// conditional evolution, f = (<sigma_x^(1)> - i <sigma_y^(1)>) / 2.
inline TimeSample read_f(const DensityState& state, double t,
                         const NoisyMeter& meter, std::uint64_t tag_base,
                         const EstimationBudget& budget) {
  XyEstimate xy = measure_xy(state, meter, tag_base, tag_base + 1, budget);
  TimeSample s;
  s.t = t;
  s.value = std::complex<double>(xy.x.value, -xy.y.value) / 2.0;
  s.std_error = std::hypot(xy.x.std_error, xy.y.std_error) / 2.0;
  return s;
}

inline DensityState spectroscopy_input(int big) {
  DensityState state = DensityState::dqc1(big);
  state.apply_gate(Gate::rotation(PauliString::single(big, 1, PauliOp::Y),
                                  std::numbers::pi / 4));
  return state;
}

}  // namespace detail

// Single-time estimate of f(t) for a Pauli-sum Hamiltonian, Trotterized with
// the given step count.
inline TimeSample sample_f(const PauliSum& h, double t, int steps,
                           const NoisyMeter& meter,
                           const EstimationBudget& budget) {
  DensityState state = detail::spectroscopy_input(h.n + 1);
  state.apply_network(conditional_half_evolutions(h, t, steps));
  return detail::read_f(state, t, meter, 1, budget);
}

// f at integer powers of a gate-network unitary W: value = tr(W^k) / 2^{n+1}.
// Powers split into ceil(k/2) conditioned-on-|0> copies of W and floor(k/2)
// conditioned-on-|1> copies of W^dag, keeping every factor a conditional
// network of at most 2x the source gate count.
inline TimeSample sample_f_unitary(const GateNetwork& w, int k,
                                   const NoisyMeter& meter,
                                   const EstimationBudget& budget) {
  if (k < 0) throw std::invalid_argument("sample_f_unitary: negative power");
  DensityState state = detail::spectroscopy_input(w.n + 1);
  const GateNetwork fwd = conditional_u(w, 0);
  const GateNetwork bwd = conditional_u(w.inverse(), 1);
  for (int i = 0; i < (k + 1) / 2; ++i) state.apply_network(fwd);
  for (int i = 0; i < k / 2; ++i) state.apply_network(bwd);
  return detail::read_f(state, static_cast<double>(k), meter, 1, budget);
}

// Uniform grid f(k dt), k = 0..npoints-1, reusing the evolved state: each
// point extends the previous one by the same per-increment network, so point
// k carries exactly k * steps_per_dt Trotter steps. Readouts at point k use
// meter substreams 2k+1 and 2k+2 (point 0 matches a standalone sample_f).
inline std::vector<TimeSample> sample_f_grid(const PauliSum& h, double dt,
                                             int npoints, int steps_per_dt,
                                             const NoisyMeter& meter,
                                             const EstimationBudget& budget) {
  if (!(dt > 0) || !std::isfinite(dt))
    throw std::invalid_argument("sample_f_grid: need dt > 0");
  if (npoints < 1)
    throw std::invalid_argument("sample_f_grid: need at least one point");
  GateNetwork inc = conditional_half_evolutions(h, dt, steps_per_dt);
  // The increment is a fixed product of rotations; build it densely once and
  // reuse through the checked-once fast path.
  Eigen::MatrixXcd u = network_unitary(inc);
  DensityState state = detail::spectroscopy_input(h.n + 1);
  std::vector<TimeSample> out;
  out.reserve(static_cast<std::size_t>(npoints));
  for (int k = 0; k < npoints; ++k) {
    if (k > 0) state.apply_unitary_prechecked(u);
    out.push_back(detail::read_f(state, k * dt, meter,
                                 2 * static_cast<std::uint64_t>(k) + 1, budget));
  }
  return out;
}

// Grid of tr(W^k)/2^{n+1} for k = 0..npoints-1, alternating conditional W and
// conditional W^dag appends so each point reuses the previous state.
inline std::vector<TimeSample> sample_f_unitary_grid(
    const GateNetwork& w, int npoints, const NoisyMeter& meter,
    const EstimationBudget& budget) {
  if (npoints < 1)
    throw std::invalid_argument("sample_f_unitary_grid: need at least one point");
  const GateNetwork fwd = conditional_u(w, 0);
  const GateNetwork bwd = conditional_u(w.inverse(), 1);
  DensityState state = detail::spectroscopy_input(w.n + 1);
  std::vector<TimeSample> out;
  out.reserve(static_cast<std::size_t>(npoints));
  for (int k = 0; k < npoints; ++k) {
    if (k > 0) state.apply_network(k % 2 == 1 ? fwd : bwd);
    out.push_back(detail::read_f(state, static_cast<double>(k), meter,
                                 2 * static_cast<std::uint64_t>(k) + 1, budget));
  }
  return out;
}

enum class WindowKind { boxcar, hann, exponential };

inline const char* window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::boxcar: return "boxcar";
    case WindowKind::hann: return "hann";
    case WindowKind::exponential: return "exponential";
  }
  throw std::invalid_argument("window_kind_name: unknown kind");
}

inline WindowKind parse_window_kind(const std::string& name) {
  if (name == "boxcar") return WindowKind::boxcar;
  if (name == "hann") return WindowKind::hann;
  if (name == "exponential") return WindowKind::exponential;
  throw std::invalid_argument("unknown window: " + name);
}

// Positive weights; hann is the periodic variant, exponential decays to
// e^{-3} across the record.
inline std::vector<double> window_weights(WindowKind kind, int n) {
  if (n < 2) throw std::invalid_argument("window_weights: need n >= 2");
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    switch (kind) {
      case WindowKind::boxcar:
        w[k] = 1.0;
        break;
      case WindowKind::hann:
        w[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / n));
        break;
      case WindowKind::exponential:
        w[k] = std::exp(-3.0 * k / (n - 1));
        break;
    }
  }
  return w;
}

// Windowed spectral density on the signed frequency grid
// lambda_j = 2 pi j / (N dt), j in (-N/2, N/2], sorted ascending.
struct SpectrumEstimate {
  std::vector<double> frequencies;
  std::vector<double> density;
  double resolution = 0;  // bin width 2 pi / (N dt)
  WindowKind window = WindowKind::hann;
};

// Density from uniformly spaced samples: S_j = sum_k w_k f_k e^{+2 pi i jk/N},
// density_j = |S_j| / (||W_hat||_1 domega). The e^{-i lambda t} convention of
// the time signal makes the positive-sign kernel place an eigenvalue lambda
// at the bin nearest +lambda. The normalization makes
// sum_j density_j domega equal the total signal weight (1/2 for a full
// trace signal) whenever the lines sit on bins and do not overlap.
inline SpectrumEstimate spectrum_fft(const std::vector<TimeSample>& samples,
                                     WindowKind window) {
  const int n = static_cast<int>(samples.size());
  if (n < 2)
    throw std::invalid_argument("spectrum_fft: need at least two samples");
  const double t0 = samples[0].t;
  const double dt = samples[1].t - t0;
  if (!(dt > 0) || !std::isfinite(dt))
    throw std::invalid_argument("spectrum_fft: need increasing sample times");
  for (int k = 0; k < n; ++k) {
    double expect = t0 + k * dt;
    if (std::abs(samples[k].t - expect) >
        1e-9 * std::max(1.0, std::abs(samples[k].t)))
      throw std::invalid_argument("spectrum_fft: sample times are not uniform");
  }
  const std::vector<double> w = window_weights(window, n);
  std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> wc(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    x[k] = w[k] * samples[k].value;
    wc[k] = w[k];
  }
  // Eigen's inverse transform is (1/N) sum_k e^{+2 pi i jk/N}; rescale by N.
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> s, ws;
  fft.inv(s, x);
  fft.inv(ws, wc);
  double window_l1 = 0;
  for (int j = 0; j < n; ++j) window_l1 += std::abs(ws[j]) * n;
  const double domega = 2.0 * std::numbers::pi / (n * dt);
  std::vector<std::pair<double, double>> bins;
  bins.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int js = j <= n / 2 ? j : j - n;
    bins.emplace_back(js * domega, std::abs(s[j]) * n / (window_l1 * domega));
  }
  std::sort(bins.begin(), bins.end());
  SpectrumEstimate out;
  out.resolution = domega;
  out.window = window;
  out.frequencies.reserve(bins.size());
  out.density.reserve(bins.size());
  for (const auto& [freq, dens] : bins) {
    out.frequencies.push_back(freq);
    out.density.push_back(dens);
  }
  return out;
}

struct Peak {
  double frequency = 0;  // parabola-refined
  double height = 0;
  int bin = 0;  // index into the sorted spectrum arrays
};

// Local maxima above threshold_factor times the median density, refined by
// fitting a parabola through the peak bin and its two neighbors. The sorted
// frequency axis is circular (the two array ends are Nyquist neighbors).
inline std::vector<Peak> detect_peaks(const SpectrumEstimate& spec,
                                      double threshold_factor = 4.0) {
  const int n = static_cast<int>(spec.density.size());
  std::vector<Peak> peaks;
  if (n < 3) return peaks;
  std::vector<double> sorted = spec.density;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double threshold = threshold_factor * sorted[n / 2];
  for (int i = 0; i < n; ++i) {
    double ym = spec.density[(i + n - 1) % n];
    double y0 = spec.density[i];
    double yp = spec.density[(i + 1) % n];
    if (!(y0 > threshold) || !(y0 > ym) || !(y0 > yp)) continue;
    double denom = ym - 2 * y0 + yp;
    double delta = 0;
    if (denom < 0) delta = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    Peak p;
    p.bin = i;
    p.frequency = spec.frequencies[i] + delta * spec.resolution;
    p.height = y0 - 0.25 * (ym - yp) * delta;
    peaks.push_back(p);
  }
  return peaks;
}

// Largest grid spacing that keeps every eigenvalue of H inside the
// unambiguous band (-pi/dt, pi/dt]: dt < pi / sum_j |c_j|.
inline double nyquist_dt_bound(const PauliSum& h) {
  double l1 = h.coefficient_l1();
  if (l1 <= 0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / l1;
}

}  // namespace cleanq
