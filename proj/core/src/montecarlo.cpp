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

#include "specsense/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "specsense/analytic.hpp"

namespace specsense {

namespace {

constexpr double kNominalSignalPower = 1.0;
constexpr std::size_t kChunkTrials = 250;

bool method_fits(DetectorKind detector, ThresholdMethod method) {
  switch (method) {
    case ThresholdMethod::TheoreticalEnergy:
      return detector == DetectorKind::Energy;
    case ThresholdMethod::TheoreticalMatchedFilter:
      return detector == DetectorKind::MatchedFilter;
    case ThresholdMethod::QuietTime:
      return detector != DetectorKind::Autocorrelation;
    case ThresholdMethod::FixedMargin:
      return detector == DetectorKind::Autocorrelation;
  }
  return false;
}

bool is_theoretical(ThresholdMethod method) {
  return method == ThresholdMethod::TheoreticalEnergy ||
         method == ThresholdMethod::TheoreticalMatchedFilter;
}

// Per-condition quantities that do not vary between trials.
struct ConditionPlan {
  double noise_variance;
  std::optional<ThresholdValue> fixed_threshold;  // before k
};

ConditionPlan make_plan(const TrialCondition& c) {
  c.validate();
  ConditionPlan plan{noise_variance_from_snr(kNominalSignalPower, c.snr_db),
                     std::nullopt};
  if (is_theoretical(c.threshold.method)) {
    plan.fixed_threshold =
        theoretical_threshold(c.detector, c.mode, c.threshold.target_pf,
                              c.n_samples, kNominalSignalPower, plan.noise_variance);
  } else if (c.threshold.method == ThresholdMethod::FixedMargin) {
    plan.fixed_threshold = fixed_margin_threshold(c.threshold.margin);
  }
  return plan;
}

DetectorStatistic compute_statistic(DetectorKind kind, const SampleFrame& received,
                                    const std::optional<SampleFrame>& pilot) {
  switch (kind) {
    case DetectorKind::Energy:
      return energy_statistic(received);
    case DetectorKind::MatchedFilter:
      return matched_filter_statistic(received, *pilot);
    case DetectorKind::Autocorrelation:
      return lag_ratio_statistic(received);
  }
  throw std::logic_error("unreachable detector kind");
}

TrialOutcome simulate_planned(const TrialCondition& c, const ConditionPlan& plan,
                              Hypothesis hypothesis, std::size_t trial_index) {
  RandomStream rng(trial_stream_key(c, hypothesis, trial_index));

  // The matched filter needs the pilot under H0 as well; it is simply not
  // transmitted.
  std::optional<SampleFrame> pu;
  if (hypothesis == Hypothesis::H1 || c.detector == DetectorKind::MatchedFilter) {
    pu = generate_pu_frame(c.n_samples, c.oversample, c.mode, rng);
  }

  const ChannelParams channel{.snr_db = c.snr_db,
                              .noise_variance = plan.noise_variance};
  const SampleFrame received =
      hypothesis == Hypothesis::H1
          ? apply_channel(*pu, channel, rng)
          : generate_noise_frame(c.n_samples, plan.noise_variance, c.mode, rng);

  std::optional<SampleFrame> pilot;
  if (pu) {
    pilot = generate_pilot(*pu);
  }

  ThresholdValue base = plan.fixed_threshold
                            ? *plan.fixed_threshold
                            : ThresholdValue{0.0, c.threshold};
  if (c.threshold.method == ThresholdMethod::QuietTime) {
    base = c.detector == DetectorKind::MatchedFilter
               ? quiet_time_mf_threshold(*pilot, plan.noise_variance,
                                         c.threshold.quiet_windows, rng)
               : quiet_time_energy_threshold(c.n_samples, plan.noise_variance,
                                             c.threshold.quiet_windows, c.mode, rng);
  }
  const ThresholdValue scaled = apply_factor(base, c.threshold.factor_k);

  const DetectorStatistic statistic = compute_statistic(c.detector, received, pilot);
  return {decide(statistic, scaled.lambda), scaled.lambda};
}

struct ChunkTask {
  std::size_t condition;
  Hypothesis hypothesis;
  std::size_t begin;
  std::size_t end;
};

struct ChunkTally {
  std::size_t present = 0;
  double threshold_sum = 0.0;
  double elapsed_ms = 0.0;
};

}  // namespace

void TrialCondition::validate() const {
  if (n_samples == 0) {
    throw std::invalid_argument("TrialCondition: n_samples must be >= 1");
  }
  if (oversample == 0) {
    throw std::invalid_argument("TrialCondition: oversample must be >= 1");
  }
  if (trials == 0) {
    throw std::invalid_argument("TrialCondition: trials must be >= 1");
  }
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("TrialCondition: snr_db must be finite");
  }
  if (detector == DetectorKind::Autocorrelation && n_samples < 2) {
    throw std::invalid_argument("TrialCondition: autocorrelation needs n_samples >= 2");
  }
  threshold.validate();
  if (!method_fits(detector, threshold.method)) {
    throw std::invalid_argument("TrialCondition: threshold method " +
                                std::string(to_string(threshold.method)) +
                                " does not apply to detector " +
                                std::string(to_string(detector)));
  }
}

std::uint64_t condition_fingerprint(const TrialCondition& c) noexcept {
  return hash_words({static_cast<std::uint64_t>(c.detector),
                     static_cast<std::uint64_t>(c.mode),
                     std::bit_cast<std::uint64_t>(c.snr_db),
                     static_cast<std::uint64_t>(c.n_samples),
                     static_cast<std::uint64_t>(c.oversample),
                     static_cast<std::uint64_t>(c.threshold.method),
                     static_cast<std::uint64_t>(c.threshold.quiet_windows)});
}

std::uint64_t trial_stream_key(const TrialCondition& c, Hypothesis hypothesis,
                               std::uint64_t trial_index) noexcept {
  return hash_words({c.master_seed, condition_fingerprint(c),
                     static_cast<std::uint64_t>(hypothesis), trial_index});
}

TrialOutcome simulate_trial(const TrialCondition& condition, Hypothesis hypothesis,
                            std::size_t trial_index) {
  if (trial_index >= condition.trials) {
    throw std::invalid_argument("simulate_trial: trial_index out of range");
  }
  return simulate_planned(condition, make_plan(condition), hypothesis, trial_index);
}

Decision run_trial(const TrialCondition& condition, Hypothesis hypothesis,
                   std::size_t trial_index) {
  return simulate_trial(condition, hypothesis, trial_index).decision;
}

SweepResult run_condition(const TrialCondition& condition, RunOptions options) {
  return run_sweep(std::span(&condition, 1), options).front();
}

std::vector<SweepResult> run_sweep(std::span<const TrialCondition> grid,
                                   RunOptions options) {
  std::vector<ConditionPlan> plans;
  plans.reserve(grid.size());
  for (const TrialCondition& c : grid) {
    plans.push_back(make_plan(c));
  }

  // Chunk layout depends only on the grid, so reduction order is fixed.
  std::vector<ChunkTask> tasks;
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    for (Hypothesis h : {Hypothesis::H1, Hypothesis::H0}) {
      for (std::size_t b = 0; b < grid[ci].trials; b += kChunkTrials) {
        tasks.push_back({ci, h, b, std::min(b + kChunkTrials, grid[ci].trials)});
      }
    }
  }
  std::vector<ChunkTally> tallies(tasks.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size() && !failed; t = next++) {
      const ChunkTask& task = tasks[t];
      const auto start = std::chrono::steady_clock::now();
      try {
        ChunkTally tally;
        for (std::size_t i = task.begin; i < task.end; ++i) {
          const TrialOutcome outcome = simulate_planned(
              grid[task.condition], plans[task.condition], task.hypothesis, i);
          tally.present += outcome.decision == Decision::PuPresent ? 1 : 0;
          tally.threshold_sum += outcome.threshold;
        }
        tally.elapsed_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        tallies[t] = tally;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::max<std::size_t>(tasks.size(), 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }

  std::vector<SweepResult> results(grid.size());
  std::vector<double> threshold_sums(grid.size(), 0.0);
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    results[ci].condition = grid[ci];
    results[ci].counts.nt = grid[ci].trials;
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    SweepResult& r = results[tasks[t].condition];
    if (tasks[t].hypothesis == Hypothesis::H1) {
      r.counts.nd += tallies[t].present;
    } else {
      r.counts.nf += tallies[t].present;
    }
    threshold_sums[tasks[t].condition] += tallies[t].threshold_sum;
    r.wall_time_ms += tallies[t].elapsed_ms;
  }

  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    SweepResult& r = results[ci];
    const TrialCondition& c = grid[ci];
    const double nt = static_cast<double>(r.counts.nt);
    r.pd = static_cast<double>(r.counts.nd) / nt;
    r.pf = static_cast<double>(r.counts.nf) / nt;
    r.mean_threshold = threshold_sums[ci] / (2.0 * nt);
    if (is_theoretical(c.threshold.method)) {
      const double lambda = apply_factor(*plans[ci].fixed_threshold,
                                         c.threshold.factor_k).lambda;
      const AnalyticPoint point =
          analytic_point(c.detector, c.mode, lambda, c.n_samples,
                         kNominalSignalPower, plans[ci].noise_variance);
      r.pd_analytic = point.pd;
      r.pf_analytic = point.pf;
      r.low_n_caveat = point.low_n_caveat;
    } else if (c.detector == DetectorKind::Energy) {
      r.low_n_caveat = low_sample_caveat(c.n_samples);
    }
  }
  return results;
}

}  // namespace specsense
