// Copyright 2026 The specsense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "specsense/detectors.hpp"
#include "specsense/random.hpp"
#include "specsense/signal.hpp"

namespace specsense {

enum class ThresholdMethod {
  TheoreticalEnergy,
  TheoreticalMatchedFilter,
  QuietTime,
  FixedMargin,
};

/// "theoretical_energy", "theoretical_mf", "quiet_time", "fixed_margin".
[[nodiscard]] std::string_view to_string(ThresholdMethod method) noexcept;

/**
 * How a threshold is obtained. Only the fields relevant to `method` are
 * meaningful: target_pf for the theoretical methods, quiet_windows for
 * QuietTime, margin for FixedMargin. factor_k is the cumulative scale
 * applied by apply_factor.
 */
struct ThresholdSpec {
  ThresholdMethod method = ThresholdMethod::QuietTime;
  double factor_k = 1.0;
  double target_pf = 0.1;
  std::size_t quiet_windows = 1;
  double margin = 0.5;

  /// Throws std::invalid_argument on a violated field invariant.
  void validate() const;
};

struct ThresholdValue {
  double lambda;
  ThresholdSpec spec;
};

/// (Q^-1(pf) sqrt(2N) + N) * noise_variance.
ThresholdValue energy_threshold_theoretical(double target_pf, std::size_t n,
                                            double noise_variance);

/// Q^-1(pf) * sqrt(E * noise_variance).
ThresholdValue mf_threshold_theoretical(double target_pf, double pilot_energy,
                                        double noise_variance);

/**
 * Theoretical threshold for a frame-level setup in either sample mode. The
 * Complex-mode substitution follows effective_real_model. Throws for the
 * autocorrelation detector, which has no closed form.
 */
ThresholdValue theoretical_threshold(DetectorKind kind, SampleMode mode,
                                     double target_pf, std::size_t n,
                                     double signal_power, double noise_variance);

/**
 * Quiet-time matched-filter threshold. Draws `windows_m` noise-only frames
 * w_j and forms c_j = Re(sum w_j(n) conj(x_p(n))). Returns max_j |c_j|; with
 * one window that is the single-draw estimate |c_1|.
 */
ThresholdValue quiet_time_mf_threshold(const SampleFrame& pilot,
                                       double noise_variance,
                                       std::size_t windows_m, RandomStream& rng);

/// Energy analogue: max over `windows_m` quiet windows of sum |w(n)|^2.
ThresholdValue quiet_time_energy_threshold(std::size_t n, double noise_variance,
                                           std::size_t windows_m, SampleMode mode,
                                           RandomStream& rng);

/// Autocorrelation lag-ratio margin, must lie in (0, 1).
ThresholdValue fixed_margin_threshold(double margin);

/// lambda' = k * lambda, with k > 0. spec.factor_k accumulates the product.
ThresholdValue apply_factor(const ThresholdValue& threshold, double k);

}  // namespace specsense
