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

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "specsense/signal.hpp"

namespace specsense {

enum class DetectorKind { Energy, MatchedFilter, Autocorrelation };

inline constexpr std::array<DetectorKind, 3> kAllDetectors = {
    DetectorKind::Energy, DetectorKind::MatchedFilter,
    DetectorKind::Autocorrelation};

/// "energy", "matched_filter", "autocorrelation".
[[nodiscard]] std::string_view to_string(DetectorKind kind) noexcept;
[[nodiscard]] std::optional<DetectorKind> parse_detector_kind(std::string_view name) noexcept;

/**
 * A scalar test statistic tagged with the detector that produced it.
 * Energy values are >= 0; autocorrelation lag ratios lie in [0, 1].
 */
struct DetectorStatistic {
  DetectorKind kind;
  double value;
};

enum class Decision { PuAbsent, PuPresent };

/// Thrown when a statistic is undefined for its input (e.g. an all-zero frame
/// for the lag ratio).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sum of |y(n)|^2 over the frame.
DetectorStatistic energy_statistic(const SampleFrame& frame);

/**
 * Re( sum_n y(n) * conj(x_p(n)) ).
 * Frame and pilot must match in length and mode.
 */
DetectorStatistic matched_filter_statistic(const SampleFrame& frame,
                                           const SampleFrame& pilot);

/// One-sided unnormalized R(lag) = sum_{n=lag}^{N-1} y(n) conj(y(n-lag)).
std::complex<double> autocorrelation(const SampleFrame& frame, std::size_t lag);

/**
 * |R(1)| / R(0). Bounded to [0, 1] by Cauchy-Schwarz. Noise stays near 0;
 * a held or otherwise correlated signal pushes it up.
 *
 * Requires N >= 2 and R(0) > 0 (throws DegenerateInputError otherwise).
 */
DetectorStatistic lag_ratio_statistic(const SampleFrame& frame);

/// PuPresent iff value >= threshold.
[[nodiscard]] constexpr Decision decide(const DetectorStatistic& statistic,
                                        double threshold) noexcept {
  return statistic.value >= threshold ? Decision::PuPresent : Decision::PuAbsent;
}

}  // namespace specsense
