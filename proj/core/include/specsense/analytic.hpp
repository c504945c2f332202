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

#include "specsense/detectors.hpp"
#include "specsense/signal.hpp"

namespace specsense {

/// Gaussian tail Q(x) = P(Z > x) = erfc(x / sqrt 2) / 2.
[[nodiscard]] double q_function(double x) noexcept;

/**
 * Inverse of q_function on (0, 1). Safeguarded Newton iteration inside a
 * shrinking bisection bracket; |Q(x) - p| <= 1e-10 on return.
 * Throws std::invalid_argument for p outside (0, 1).
 */
[[nodiscard]] double q_inverse(double p);

/// Below this sample count the CLT approximation behind the energy-detector
/// formulas is unreliable; results are still computed.
inline constexpr std::size_t kCltMinSamples = 250;

[[nodiscard]] constexpr bool low_sample_caveat(std::size_t n) noexcept {
  return n <= kCltMinSamples;
}

// Energy detector, CLT approximation. `lambda` is the absolute threshold; the
// P_d formula works on the normalized threshold lambda / noise_variance.
double energy_pd_analytic(double lambda, std::size_t n, double gamma,
                          double noise_variance);
double energy_pf_analytic(double lambda, std::size_t n, double noise_variance);

// Matched filter: the statistic is N(E, E*var) under H1, N(0, E*var) under H0.
double mf_pd_analytic(double lambda, double pilot_energy, double noise_variance);
double mf_pf_analytic(double lambda, double pilot_energy, double noise_variance);

/**
 * The closed forms above are real-Gaussian derivations. A Complex-mode frame
 * of N samples at total variance v maps onto them as follows:
 *   energy: N_eff = 2N, v_eff = v / 2   (2N real quadratures)
 *   matched filter: v_eff = v / 2       (only the real part is kept)
 * Real mode maps onto itself.
 */
struct EffectiveRealModel {
  std::size_t n;
  double noise_variance;
};

[[nodiscard]] EffectiveRealModel effective_real_model(DetectorKind kind,
                                                      SampleMode mode,
                                                      std::size_t n,
                                                      double noise_variance);

struct AnalyticPoint {
  double pd;
  double pf;
  bool low_n_caveat;
};

/**
 * Analytic (P_d, P_f) for a frame-level setup: SNR is signal_power /
 * noise_variance, and for the matched filter the pilot energy is
 * N * signal_power. Autocorrelation has no closed form here and throws
 * std::invalid_argument.
 */
AnalyticPoint analytic_point(DetectorKind kind, SampleMode mode, double lambda,
                             std::size_t n, double signal_power,
                             double noise_variance);

}  // namespace specsense
