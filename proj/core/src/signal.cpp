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

#include "specsense/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specsense {

std::string_view to_string(SampleMode mode) noexcept {
  return mode == SampleMode::Real ? "real" : "complex";
}

SampleFrame::SampleFrame(std::vector<Sample> samples, SampleMode mode)
    : samples_(std::move(samples)), mode_(mode) {
  if (samples_.empty()) {
    throw std::invalid_argument("SampleFrame: frame must hold at least one sample");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Sample& s = samples_[i];
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::invalid_argument("SampleFrame: non-finite sample at index " +
                                  std::to_string(i));
    }
    if (mode_ == SampleMode::Real && s.imag() != 0.0) {
      throw std::invalid_argument(
          "SampleFrame: real-mode sample with nonzero imaginary part at index " +
          std::to_string(i));
    }
  }
}

SampleFrame SampleFrame::from_real(std::span<const double> values) {
  std::vector<Sample> samples(values.begin(), values.end());
  return SampleFrame(std::move(samples), SampleMode::Real);
}

SampleFrame SampleFrame::from_complex(std::vector<Sample> values) {
  return SampleFrame(std::move(values), SampleMode::Complex);
}

SampleFrame SampleFrame::scaled(double c) const {
  std::vector<Sample> out(samples_);
  for (auto& s : out) {
    s *= c;
  }
  return SampleFrame(std::move(out), mode_);
}

void ChannelParams::validate() const {
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("ChannelParams: noise_variance must be > 0");
  }
  if (!(channel_gain > 0.0)) {
    throw std::invalid_argument("ChannelParams: channel_gain must be > 0");
  }
}

namespace {

void require_positive(std::size_t value, const char* what) {
  if (value == 0) {
    throw std::invalid_argument(std::string(what) + " must be >= 1");
  }
}

template <typename DrawSymbol>
std::vector<Sample> hold_symbols(std::size_t n_symbols, std::size_t oversample,
                                 DrawSymbol&& draw) {
  std::vector<Sample> out;
  out.reserve(n_symbols * oversample);
  for (std::size_t k = 0; k < n_symbols; ++k) {
    const Sample symbol = draw();
    out.insert(out.end(), oversample, symbol);
  }
  return out;
}

}  // namespace

SampleFrame generate_qpsk_frame(std::size_t n_symbols, std::size_t oversample,
                                RandomStream& rng) {
  require_positive(n_symbols, "n_symbols");
  require_positive(oversample, "oversample_factor");
  const double a = 1.0 / std::sqrt(2.0);
  auto samples = hold_symbols(n_symbols, oversample, [&] {
    const double re = rng.sign();
    const double im = rng.sign();
    return Sample(re * a, im * a);
  });
  return SampleFrame(std::move(samples), SampleMode::Complex);
}

SampleFrame generate_bpsk_frame(std::size_t n_symbols, std::size_t oversample,
                                RandomStream& rng) {
  require_positive(n_symbols, "n_symbols");
  require_positive(oversample, "oversample_factor");
  auto samples = hold_symbols(n_symbols, oversample,
                              [&] { return Sample(rng.sign(), 0.0); });
  return SampleFrame(std::move(samples), SampleMode::Real);
}

SampleFrame generate_pu_frame(std::size_t n_samples, std::size_t oversample,
                              SampleMode mode, RandomStream& rng) {
  require_positive(n_samples, "n_samples");
  require_positive(oversample, "oversample_factor");
  const std::size_t n_symbols = (n_samples + oversample - 1) / oversample;
  SampleFrame full = mode == SampleMode::Complex
                         ? generate_qpsk_frame(n_symbols, oversample, rng)
                         : generate_bpsk_frame(n_symbols, oversample, rng);
  if (full.size() == n_samples) {
    return full;
  }
  std::vector<Sample> head(full.samples().begin(),
                           full.samples().begin() + static_cast<std::ptrdiff_t>(n_samples));
  return SampleFrame(std::move(head), mode);
}

SampleFrame generate_pilot(const SampleFrame& frame) { return frame; }

double noise_variance_from_snr(double signal_power, double snr_db) {
  if (!(signal_power > 0.0)) {
    throw std::invalid_argument("noise_variance_from_snr: signal_power must be > 0");
  }
  return signal_power / std::pow(10.0, snr_db / 10.0);
}

SampleFrame generate_noise_frame(std::size_t n, double noise_variance,
                                 SampleMode mode, RandomStream& rng) {
  require_positive(n, "n");
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("generate_noise_frame: noise_variance must be > 0");
  }
  std::vector<Sample> w(n);
  if (mode == SampleMode::Real) {
    const double sigma = std::sqrt(noise_variance);
    for (auto& s : w) {
      s = Sample(sigma * rng.gaussian(), 0.0);
    }
  } else {
    const double sigma = std::sqrt(noise_variance / 2.0);
    for (auto& s : w) {
      const double re = sigma * rng.gaussian();
      const double im = sigma * rng.gaussian();
      s = Sample(re, im);
    }
  }
  return SampleFrame(std::move(w), mode);
}

SampleFrame add_awgn(const SampleFrame& frame, double noise_variance,
                     RandomStream& rng) {
  const SampleFrame noise =
      generate_noise_frame(frame.size(), noise_variance, frame.mode(), rng);
  std::vector<Sample> out(frame.samples().begin(), frame.samples().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += noise[i];
  }
  return SampleFrame(std::move(out), frame.mode());
}

SampleFrame apply_channel(const SampleFrame& frame, const ChannelParams& params,
                          RandomStream& rng) {
  params.validate();
  if (params.channel_gain == 1.0) {
    return add_awgn(frame, params.noise_variance, rng);
  }
  return add_awgn(frame.scaled(params.channel_gain), params.noise_variance, rng);
}

double signal_energy(const SampleFrame& frame) noexcept {
  double energy = 0.0;
  for (const Sample& s : frame.samples()) {
    energy += std::norm(s);
  }
  return energy;
}

double signal_power(const SampleFrame& frame) noexcept {
  return signal_energy(frame) / static_cast<double>(frame.size());
}

}  // namespace specsense
