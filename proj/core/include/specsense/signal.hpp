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

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "specsense/random.hpp"

namespace specsense {

using Sample = std::complex<double>;

enum class SampleMode { Real, Complex };

[[nodiscard]] std::string_view to_string(SampleMode mode) noexcept;

//---------------------------------------------------------------------------//
/*!
 * A finite block of baseband samples.
 *
 * Invariants, checked on construction: at least one sample, every component
 * finite, and in Real mode every imaginary part is exactly zero.
 */
class SampleFrame {
 public:
  SampleFrame(std::vector<Sample> samples, SampleMode mode);

  static SampleFrame from_real(std::span<const double> values);
  static SampleFrame from_complex(std::vector<Sample> values);

  [[nodiscard]] std::span<const Sample> samples() const noexcept {
    return samples_;
  }
  [[nodiscard]] SampleMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] const Sample& operator[](std::size_t i) const {
    return samples_[i];
  }

  /// Returns c * frame. Mode is preserved.
  [[nodiscard]] SampleFrame scaled(double c) const;

  friend bool operator==(const SampleFrame&, const SampleFrame&) = default;

 private:
  std::vector<Sample> samples_;
  SampleMode mode_;
};

/// Linear-gain AWGN channel. SNR is quoted in dB.
struct ChannelParams {
  double snr_db = 0.0;
  double channel_gain = 1.0;
  double noise_variance = 1.0;

  /// Throws std::invalid_argument unless noise_variance > 0 and gain > 0.
  void validate() const;
};

/**
 * Rectangular-hold QPSK: each symbol in {(+-1 +- i)/sqrt(2)} is repeated for
 * `oversample` consecutive samples. Every sample has unit modulus.
 */
SampleFrame generate_qpsk_frame(std::size_t n_symbols, std::size_t oversample,
                                RandomStream& rng);

/// Real-mode counterpart of QPSK: uniform +-1 symbols with the same hold.
SampleFrame generate_bpsk_frame(std::size_t n_symbols, std::size_t oversample,
                                RandomStream& rng);

/**
 * PU waveform of exactly `n_samples` samples. Draws ceil(n_samples /
 * oversample) symbols and truncates the tail of the last symbol.
 */
SampleFrame generate_pu_frame(std::size_t n_samples, std::size_t oversample,
                              SampleMode mode, RandomStream& rng);

/// The matched filter's pilot is a copy of the clean PU frame.
SampleFrame generate_pilot(const SampleFrame& frame);

/// delta_w^2 = signal_power / 10^(snr_db / 10).
double noise_variance_from_snr(double signal_power, double snr_db);

/**
 * White Gaussian noise. Real mode: N(0, v) per sample. Complex mode:
 * circularly symmetric with total variance v (v/2 per quadrature).
 * Draw order is re then im for each sample.
 */
SampleFrame generate_noise_frame(std::size_t n, double noise_variance,
                                 SampleMode mode, RandomStream& rng);

/// frame + noise, where the noise is exactly what generate_noise_frame
/// would return for the same rng state.
SampleFrame add_awgn(const SampleFrame& frame, double noise_variance,
                     RandomStream& rng);

/// y = h * s + w with w drawn at params.noise_variance.
SampleFrame apply_channel(const SampleFrame& frame, const ChannelParams& params,
                          RandomStream& rng);

double signal_energy(const SampleFrame& frame) noexcept;
double signal_power(const SampleFrame& frame) noexcept;

}  // namespace specsense
