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

#include "specsense/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specsense/analytic.hpp"

namespace specsense {

std::string_view to_string(ThresholdMethod method) noexcept {
  switch (method) {
    case ThresholdMethod::TheoreticalEnergy:
      return "theoretical_energy";
    case ThresholdMethod::TheoreticalMatchedFilter:
      return "theoretical_mf";
    case ThresholdMethod::QuietTime:
      return "quiet_time";
    case ThresholdMethod::FixedMargin:
      return "fixed_margin";
  }
  return "unknown";
}

void ThresholdSpec::validate() const {
  if (!(factor_k > 0.0)) {
    throw std::invalid_argument("ThresholdSpec: factor_k must be > 0");
  }
  switch (method) {
    case ThresholdMethod::TheoreticalEnergy:
    case ThresholdMethod::TheoreticalMatchedFilter:
      if (!(target_pf > 0.0 && target_pf < 1.0)) {
        throw std::invalid_argument("ThresholdSpec: target_pf must lie in (0, 1)");
      }
      break;
    case ThresholdMethod::QuietTime:
      if (quiet_windows == 0) {
        throw std::invalid_argument("ThresholdSpec: quiet_windows must be >= 1");
      }
      break;
    case ThresholdMethod::FixedMargin:
      if (!(margin > 0.0 && margin < 1.0)) {
        throw std::invalid_argument("ThresholdSpec: margin must lie in (0, 1)");
      }
      break;
  }
}

ThresholdValue energy_threshold_theoretical(double target_pf, std::size_t n,
                                            double noise_variance) {
  if (n == 0 || !(noise_variance > 0.0)) {
    throw std::invalid_argument(
        "energy_threshold_theoretical: need n >= 1 and noise_variance > 0");
  }
  ThresholdSpec spec{.method = ThresholdMethod::TheoreticalEnergy,
                     .target_pf = target_pf};
  spec.validate();
  const double nn = static_cast<double>(n);
  const double lambda = (q_inverse(target_pf) * std::sqrt(2.0 * nn) + nn) * noise_variance;
  return {lambda, spec};
}

ThresholdValue mf_threshold_theoretical(double target_pf, double pilot_energy,
                                        double noise_variance) {
  if (!(pilot_energy > 0.0) || !(noise_variance > 0.0)) {
    throw std::invalid_argument(
        "mf_threshold_theoretical: pilot_energy and noise_variance must be > 0");
  }
  ThresholdSpec spec{.method = ThresholdMethod::TheoreticalMatchedFilter,
                     .target_pf = target_pf};
  spec.validate();
  return {q_inverse(target_pf) * std::sqrt(pilot_energy * noise_variance), spec};
}

ThresholdValue theoretical_threshold(DetectorKind kind, SampleMode mode,
                                     double target_pf, std::size_t n,
                                     double signal_power, double noise_variance) {
  const EffectiveRealModel eff = effective_real_model(kind, mode, n, noise_variance);
  if (kind == DetectorKind::Energy) {
    return energy_threshold_theoretical(target_pf, eff.n, eff.noise_variance);
  }
  return mf_threshold_theoretical(target_pf, static_cast<double>(n) * signal_power,
                                  eff.noise_variance);
}

ThresholdValue quiet_time_mf_threshold(const SampleFrame& pilot,
                                       double noise_variance,
                                       std::size_t windows_m, RandomStream& rng) {
  ThresholdSpec spec{.method = ThresholdMethod::QuietTime, .quiet_windows = windows_m};
  spec.validate();
  double envelope = 0.0;
  for (std::size_t j = 0; j < windows_m; ++j) {
    const SampleFrame quiet =
        generate_noise_frame(pilot.size(), noise_variance, pilot.mode(), rng);
    const double c = matched_filter_statistic(quiet, pilot).value;
    envelope = std::max(envelope, std::abs(c));
  }
  return {envelope, spec};
}

ThresholdValue quiet_time_energy_threshold(std::size_t n, double noise_variance,
                                           std::size_t windows_m, SampleMode mode,
                                           RandomStream& rng) {
  ThresholdSpec spec{.method = ThresholdMethod::QuietTime, .quiet_windows = windows_m};
  spec.validate();
  double envelope = 0.0;
  for (std::size_t j = 0; j < windows_m; ++j) {
    const SampleFrame quiet = generate_noise_frame(n, noise_variance, mode, rng);
    envelope = std::max(envelope, energy_statistic(quiet).value);
  }
  return {envelope, spec};
}

ThresholdValue fixed_margin_threshold(double margin) {
  ThresholdSpec spec{.method = ThresholdMethod::FixedMargin, .margin = margin};
  spec.validate();
  return {margin, spec};
}

ThresholdValue apply_factor(const ThresholdValue& threshold, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("apply_factor: k must be a finite value > 0");
  }
  ThresholdValue out = threshold;
  out.lambda = k * threshold.lambda;
  out.spec.factor_k = threshold.spec.factor_k * k;
  return out;
}

}  // namespace specsense
