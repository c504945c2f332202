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

#include "specsense/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace specsense {

std::string_view to_string(DetectorKind kind) noexcept {
  switch (kind) {
    case DetectorKind::Energy:
      return "energy";
    case DetectorKind::MatchedFilter:
      return "matched_filter";
    case DetectorKind::Autocorrelation:
      return "autocorrelation";
  }
  return "unknown";
}

std::optional<DetectorKind> parse_detector_kind(std::string_view name) noexcept {
  for (DetectorKind kind : kAllDetectors) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

DetectorStatistic energy_statistic(const SampleFrame& frame) {
  double sum = 0.0;
  for (const Sample& y : frame.samples()) {
    sum += std::norm(y);
  }
  return {DetectorKind::Energy, sum};
}

DetectorStatistic matched_filter_statistic(const SampleFrame& frame,
                                           const SampleFrame& pilot) {
  if (frame.size() != pilot.size()) {
    throw std::invalid_argument("matched_filter_statistic: frame length " +
                                std::to_string(frame.size()) +
                                " != pilot length " + std::to_string(pilot.size()));
  }
  if (frame.mode() != pilot.mode()) {
    throw std::invalid_argument("matched_filter_statistic: frame/pilot mode mismatch");
  }
  // Re(y * conj(x)) = y.re * x.re + y.im * x.im
  double sum = 0.0;
  const auto y = frame.samples();
  const auto x = pilot.samples();
  for (std::size_t n = 0; n < y.size(); ++n) {
    sum += y[n].real() * x[n].real() + y[n].imag() * x[n].imag();
  }
  return {DetectorKind::MatchedFilter, sum};
}

std::complex<double> autocorrelation(const SampleFrame& frame, std::size_t lag) {
  if (lag >= frame.size()) {
    throw std::invalid_argument("autocorrelation: lag " + std::to_string(lag) +
                                " must be < N = " + std::to_string(frame.size()));
  }
  const auto y = frame.samples();
  std::complex<double> sum = 0.0;
  for (std::size_t n = lag; n < y.size(); ++n) {
    sum += y[n] * std::conj(y[n - lag]);
  }
  return sum;
}

DetectorStatistic lag_ratio_statistic(const SampleFrame& frame) {
  if (frame.size() < 2) {
    throw DegenerateInputError("lag_ratio_statistic: need N >= 2");
  }
  const double r0 = energy_statistic(frame).value;
  if (!(r0 > 0.0)) {
    throw DegenerateInputError("lag_ratio_statistic: R(0) = 0 (all-zero frame)");
  }
  const double ratio = std::abs(autocorrelation(frame, 1)) / r0;
  return {DetectorKind::Autocorrelation, std::min(ratio, 1.0)};
}

}  // namespace specsense
