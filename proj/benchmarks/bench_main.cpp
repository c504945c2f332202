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

#include <benchmark/benchmark.h>

#include "specsense/analytic.hpp"
#include "specsense/detectors.hpp"
#include "specsense/montecarlo.hpp"
#include "specsense/threshold.hpp"

namespace {

using namespace specsense;

SampleFrame noisy_frame(std::size_t n) {
  RandomStream rng(1);
  return add_awgn(generate_qpsk_frame(n / 2, 2, rng), 1.0, rng);
}

void BM_EnergyStatistic(benchmark::State& state) {
  const SampleFrame f = noisy_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_statistic(f).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnergyStatistic)->Arg(1000)->Arg(100000);

void BM_MatchedFilterStatistic(benchmark::State& state) {
  const SampleFrame f = noisy_frame(static_cast<std::size_t>(state.range(0)));
  RandomStream rng(2);
  const SampleFrame pilot = generate_qpsk_frame(f.size() / 2, 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matched_filter_statistic(f, pilot).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchedFilterStatistic)->Arg(1000)->Arg(100000);

void BM_LagRatio(benchmark::State& state) {
  const SampleFrame f = noisy_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lag_ratio_statistic(f).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LagRatio)->Arg(1000)->Arg(100000);

void BM_NoiseFrame(benchmark::State& state) {
  RandomStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_noise_frame(1000, 1.0, SampleMode::Complex, rng));
  }
}
BENCHMARK(BM_NoiseFrame);

void BM_QInverse(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_inverse(p));
    p = p < 0.7 ? p * 1.37 : 1e-6;
  }
}
BENCHMARK(BM_QInverse);

void BM_RunCondition(benchmark::State& state) {
  TrialCondition c;
  c.detector = static_cast<DetectorKind>(state.range(0));
  c.threshold.method = c.detector == DetectorKind::Autocorrelation
                           ? ThresholdMethod::FixedMargin
                           : ThresholdMethod::QuietTime;
  c.snr_db = -10.0;
  c.trials = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_condition(c).pd);
  }
  state.SetItemsProcessed(state.iterations() * 2 * static_cast<long>(c.trials));
}
BENCHMARK(BM_RunCondition)
    ->Arg(static_cast<int>(DetectorKind::Energy))
    ->Arg(static_cast<int>(DetectorKind::MatchedFilter))
    ->Arg(static_cast<int>(DetectorKind::Autocorrelation))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
