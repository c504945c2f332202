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

#include "specsense/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specsense {

double q_function(double x) noexcept {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("q_inverse: p = " + std::to_string(p) +
                                " is outside (0, 1)");
  }
  if (p == 0.5) {
    return 0.0;
  }
  // Q(-40) rounds to 1 and Q(40) underflows to 0, so the root is bracketed
  // for every representable p in (0, 1).
  double lo = -40.0;
  double hi = 40.0;
  double x = 0.0;
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = q_function(x) - p;
    if (residual == 0.0) {
      return x;
    }
    if (residual > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    double next = density > 0.0 ? x + residual / density : lo;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

double energy_pd_analytic(double lambda, std::size_t n, double gamma,
                          double noise_variance) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("energy_pd_analytic: noise_variance must be > 0");
  }
  const double nn = static_cast<double>(n);
  const double normalized = lambda / noise_variance;
  const double mean = nn * (1.0 + gamma);
  const double sd = std::sqrt(2.0 * nn) * (1.0 + gamma);
  return q_function((normalized - mean) / sd);
}

double energy_pf_analytic(double lambda, std::size_t n, double noise_variance) {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("energy_pf_analytic: noise_variance must be > 0");
  }
  const double nn = static_cast<double>(n);
  return q_function((lambda - nn * noise_variance) /
                    std::sqrt(2.0 * nn * noise_variance * noise_variance));
}

double mf_pd_analytic(double lambda, double pilot_energy, double noise_variance) {
  if (!(pilot_energy > 0.0) || !(noise_variance > 0.0)) {
    throw std::invalid_argument("mf_pd_analytic: energy and variance must be > 0");
  }
  return q_function((lambda - pilot_energy) / std::sqrt(pilot_energy * noise_variance));
}

double mf_pf_analytic(double lambda, double pilot_energy, double noise_variance) {
  if (!(pilot_energy > 0.0) || !(noise_variance > 0.0)) {
    throw std::invalid_argument("mf_pf_analytic: energy and variance must be > 0");
  }
  return q_function(lambda / std::sqrt(pilot_energy * noise_variance));
}

EffectiveRealModel effective_real_model(DetectorKind kind, SampleMode mode,
                                        std::size_t n, double noise_variance) {
  if (kind == DetectorKind::Autocorrelation) {
    throw std::invalid_argument("effective_real_model: no closed form for " +
                                std::string(to_string(kind)));
  }
  if (mode == SampleMode::Real) {
    return {n, noise_variance};
  }
  const std::size_t real_n = kind == DetectorKind::Energy ? 2 * n : n;
  return {real_n, noise_variance / 2.0};
}

AnalyticPoint analytic_point(DetectorKind kind, SampleMode mode, double lambda,
                             std::size_t n, double signal_power,
                             double noise_variance) {
  const EffectiveRealModel eff = effective_real_model(kind, mode, n, noise_variance);
  const double gamma = signal_power / noise_variance;
  if (kind == DetectorKind::Energy) {
    return {energy_pd_analytic(lambda, eff.n, gamma, eff.noise_variance),
            energy_pf_analytic(lambda, eff.n, eff.noise_variance),
            low_sample_caveat(n)};
  }
  const double pilot_energy = static_cast<double>(n) * signal_power;
  return {mf_pd_analytic(lambda, pilot_energy, eff.noise_variance),
          mf_pf_analytic(lambda, pilot_energy, eff.noise_variance), false};
}

}  // namespace specsense
