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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specsense/detectors.hpp"
#include "specsense/signal.hpp"
#include "specsense/threshold.hpp"

namespace specsense {

enum class Hypothesis : std::uint64_t { H0 = 0, H1 = 1 };

/// One point of a sweep. Trials under both hypotheses share this setup.
struct TrialCondition {
  DetectorKind detector = DetectorKind::MatchedFilter;
  double snr_db = 0.0;
  std::size_t n_samples = 1000;
  std::size_t oversample = 2;
  ThresholdSpec threshold;
  SampleMode mode = SampleMode::Complex;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;

  /**
   * Throws std::invalid_argument if a field is out of range or the threshold
   * method does not fit the detector. Autocorrelation takes FixedMargin only;
   * the theoretical methods are tied to their own detector.
   */
  void validate() const;
};

/**
 * Hash of the fields that shape a trial's random draws. k, target_pf,
 * margin and the trial count are left out: conditions that differ only in
 * those see identical frames, and trial i does not change when more trials
 * are requested.
 */
[[nodiscard]] std::uint64_t condition_fingerprint(const TrialCondition& c) noexcept;

/// Stream key for one trial.
[[nodiscard]] std::uint64_t trial_stream_key(const TrialCondition& c,
                                             Hypothesis hypothesis,
                                             std::uint64_t trial_index) noexcept;

struct TrialOutcome {
  Decision decision;
  double threshold;  // lambda' actually compared against
};

/// Runs one full sensing pass.
TrialOutcome simulate_trial(const TrialCondition& condition, Hypothesis hypothesis,
                            std::size_t trial_index);

Decision run_trial(const TrialCondition& condition, Hypothesis hypothesis,
                   std::size_t trial_index);

struct TrialCounts {
  std::size_t nt = 0;
  std::size_t nd = 0;  // detections on H1 trials
  std::size_t nf = 0;  // alarms on H0 trials
};

struct SweepResult {
  TrialCondition condition;
  TrialCounts counts;
  double pd = 0.0;
  double pf = 0.0;
  std::optional<double> pd_analytic;
  std::optional<double> pf_analytic;
  bool low_n_caveat = false;
  double mean_threshold = 0.0;
  /// Summed execution time of this condition's trial chunks.
  double wall_time_ms = 0.0;
};

struct RunOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

SweepResult run_condition(const TrialCondition& condition, RunOptions options = {});

/**
 * One result per condition, in input order. Output is independent of the
 * thread count and of how the grid is ordered.
 */
std::vector<SweepResult> run_sweep(std::span<const TrialCondition> grid,
                                   RunOptions options = {});

}  // namespace specsense
