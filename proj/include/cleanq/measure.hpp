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
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cleanq/rng.hpp"
#include "cleanq/state.hpp"

namespace cleanq {

enum class MeterMode { projective, gaussian };

inline MeterMode parse_meter_mode(const std::string& name) {
  if (name == "projective") return MeterMode::projective;
  if (name == "gaussian") return MeterMode::gaussian;
  throw std::invalid_argument("meter mode must be projective or gaussian");
}

inline const char* meter_mode_name(MeterMode mode) {
  return mode == MeterMode::projective ? "projective" : "gaussian";
}

// The sigma_z^(1) readout process: every sample has mean tr(sigma_z^(1) rho)
// and variance bounded by max(1, s). Projective mode returns +-1 with
// P(+1) = (1 + mean)/2 (variance 1 - mean^2 <= 1); gaussian mode adds normal
// noise of variance s. Draw i consumes RNG counters {2i, 2i+1}, so samples
// are addressed by index and independent of evaluation order.
struct NoisyMeter {
  MeterMode mode = MeterMode::projective;
  double s = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;  // consumed by the stateful sample() entry point

  NoisyMeter() = default;
  NoisyMeter(MeterMode mode, double s, std::uint64_t seed,
             std::uint64_t stream = 0)
      : mode(mode), s(s), seed(seed), stream(stream) {
    if (s < 0) throw std::invalid_argument("NoisyMeter: variance bound s < 0");
  }

  // Independent stream for a sub-experiment; tag choice is the caller's
  // namespace. Counter restarts at zero.
  NoisyMeter substream(std::uint64_t tag) const {
    NoisyMeter m = *this;
    m.stream = mix64(stream ^ mix64(tag ^ 0x243F6A8885A308D3ull));
    m.counter = 0;
    return m;
  }

  // Variance bound actually in force for this mode.
  double variance_bound() const {
    return mode == MeterMode::projective ? 1.0 : std::max(1.0, s);
  }

  double draw_at(double mean, std::uint64_t index) const {
    CounterRng rng(seed, stream);
    if (mode == MeterMode::projective) {
      double p_plus = std::clamp((1.0 + mean) / 2.0, 0.0, 1.0);
      return rng.uniform_at(2 * index) < p_plus ? 1.0 : -1.0;
    }
    return mean + std::sqrt(s) * rng.normal_at(index);
  }
};

// One estimate of <sigma_z^(1)>; advances the meter's call counter.
inline double sample(NoisyMeter& meter, const DensityState& state) {
  double mean =
      state.expectation(PauliString::single(state.num_qubits(), 1, PauliOp::Z));
  return meter.draw_at(mean, meter.counter++);
}

// Repetition schedule for |estimate - mean| <= epsilon with failure
// probability <= p: B = ceil(8 ln(1/p)) blocks of m = ceil(4 max(1,s)/eps^2)
// samples each (constants c1 = 8, c2 = 4). Chebyshev bounds each block's
// failure at 1/4; the median of blocks amplifies to e^{-B/8} <= p.
// `shots_override`, when nonzero, fixes the total budget instead and splits
// it evenly over the blocks (the guarantee then no longer applies).
struct EstimationBudget {
  double epsilon = 0.05;
  double p = 0.05;
  std::uint64_t shots_override = 0;

  EstimationBudget() = default;
  EstimationBudget(double epsilon, double p, std::uint64_t shots_override = 0)
      : epsilon(epsilon), p(p), shots_override(shots_override) {
    if (!(epsilon > 0 && epsilon < 1))
      throw std::invalid_argument("EstimationBudget: epsilon outside (0,1)");
    if (!(p > 0 && p < 1))
      throw std::invalid_argument("EstimationBudget: p outside (0,1)");
  }

  std::uint64_t blocks() const {
    return static_cast<std::uint64_t>(std::ceil(8.0 * std::log(1.0 / p)));
  }

  std::uint64_t block_size(double variance_bound) const {
    if (shots_override > 0)
      return std::max<std::uint64_t>(1, shots_override / blocks());
    return static_cast<std::uint64_t>(
        std::ceil(4.0 * std::max(1.0, variance_bound) / (epsilon * epsilon)));
  }
};

struct EstimateResult {
  double value = 0;
  double std_error = 0;
  std::uint64_t shots = 0;
};

// Median-of-means estimate of <sigma_z^(1)> on the state a repeatable
// computation produces. The computation is deterministic and the meter noise
// is sampled by index, so the final state is evaluated once and the R
// repetitions are R indexed draws against its exact mean; this is
// distribution-identical to re-running the computation per repetition.
inline EstimateResult estimate_mean(const DensityState& state,
                                    const NoisyMeter& meter,
                                    const EstimationBudget& budget) {
  double mean =
      state.expectation(PauliString::single(state.num_qubits(), 1, PauliOp::Z));
  const std::uint64_t b = budget.blocks();
  const std::uint64_t m = budget.block_size(meter.variance_bound());
  std::vector<double> block_means(b);
  std::uint64_t index = 0;
  for (std::uint64_t i = 0; i < b; ++i) {
    double sum = 0;
    for (std::uint64_t k = 0; k < m; ++k) sum += meter.draw_at(mean, index++);
    block_means[i] = sum / static_cast<double>(m);
  }
  std::vector<double> sorted = block_means;
  std::sort(sorted.begin(), sorted.end());
  double median = (b % 2 == 1)
                      ? sorted[b / 2]
                      : 0.5 * (sorted[b / 2 - 1] + sorted[b / 2]);
  double var = 0;
  double avg = 0;
  for (double v : block_means) avg += v;
  avg /= static_cast<double>(b);
  for (double v : block_means) var += (v - avg) * (v - avg);
  var = b > 1 ? var / static_cast<double>(b - 1) : 0.0;
  // Asymptotic stderr of a median of B near-normal block means.
  double std_error = 1.2533 * std::sqrt(var / static_cast<double>(b));
  return {median, std_error, b * m};
}

inline EstimateResult estimate_mean(const std::function<DensityState()>& run,
                                    const NoisyMeter& meter,
                                    const EstimationBudget& budget) {
  return estimate_mean(run(), meter, budget);
}

}  // namespace cleanq
