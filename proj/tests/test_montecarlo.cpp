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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "specsense/experiment.hpp"
#include "specsense/montecarlo.hpp"

namespace specsense {
namespace {

TrialCondition mf_quiet(double snr_db, double k = 1.0) {
  TrialCondition c;
  c.detector = DetectorKind::MatchedFilter;
  c.snr_db = snr_db;
  c.n_samples = 1000;
  c.threshold.method = ThresholdMethod::QuietTime;
  c.threshold.factor_k = k;
  c.master_seed = 7;
  return c;
}

TEST(RunTrial, HighSnrMatchedFilterDetects) {
  TrialCondition c = mf_quiet(20.0);
  std::size_t present = 0;
  for (std::size_t i = 0; i < c.trials; ++i) {
    present += run_trial(c, Hypothesis::H1, i) == Decision::PuPresent ? 1 : 0;
  }
  EXPECT_GE(present, 990u);
}

TEST(RunTrial, HugeThresholdNeverFires) {
  for (DetectorKind kind : kAllDetectors) {
    TrialCondition c;
    c.detector = kind;
    c.n_samples = 200;
    c.snr_db = 10.0;
    c.trials = 50;
    c.threshold.method = kind == DetectorKind::Autocorrelation
                             ? ThresholdMethod::FixedMargin
                             : ThresholdMethod::QuietTime;
    c.threshold.factor_k = 1e300;
    for (std::size_t i = 0; i < c.trials; ++i) {
      EXPECT_EQ(run_trial(c, Hypothesis::H0, i), Decision::PuAbsent);
    }
  }
}

TEST(RunTrial, Deterministic) {
  const TrialCondition c = mf_quiet(-15.0);
  for (std::size_t i = 0; i < 20; ++i) {
    for (Hypothesis h : {Hypothesis::H0, Hypothesis::H1}) {
      const TrialOutcome a = simulate_trial(c, h, i);
      const TrialOutcome b = simulate_trial(c, h, i);
      EXPECT_EQ(a.decision, b.decision);
      EXPECT_EQ(a.threshold, b.threshold);
    }
  }
}

TEST(RunTrial, IndexOutOfRange) {
  TrialCondition c = mf_quiet(0.0);
  c.trials = 5;
  EXPECT_THROW(run_trial(c, Hypothesis::H1, 5), std::invalid_argument);
}

TEST(TrialConditionValidate, MethodMustFitDetector) {
  TrialCondition c = mf_quiet(0.0);
  c.detector = DetectorKind::Autocorrelation;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.threshold.method = ThresholdMethod::FixedMargin;
  EXPECT_NO_THROW(c.validate());
  c.detector = DetectorKind::MatchedFilter;
  c.threshold.method = ThresholdMethod::TheoreticalEnergy;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = mf_quiet(0.0);
  c.trials = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = mf_quiet(0.0);
  c.n_samples = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(StreamKeys, DependOnDrawShapingFieldsOnly) {
  const TrialCondition base = mf_quiet(-4.0);
  TrialCondition k4 = base;
  k4.threshold.factor_k = 4.0;
  k4.trials = 12345;
  EXPECT_EQ(condition_fingerprint(base), condition_fingerprint(k4));
  TrialCondition other_snr = base;
  other_snr.snr_db = -6.0;
  EXPECT_NE(condition_fingerprint(base), condition_fingerprint(other_snr));
  TrialCondition other_seed = base;
  other_seed.master_seed = 8;
  EXPECT_NE(trial_stream_key(base, Hypothesis::H1, 0),
            trial_stream_key(other_seed, Hypothesis::H1, 0));
  EXPECT_NE(trial_stream_key(base, Hypothesis::H1, 0),
            trial_stream_key(base, Hypothesis::H0, 0));
  EXPECT_NE(trial_stream_key(base, Hypothesis::H1, 0),
            trial_stream_key(base, Hypothesis::H1, 1));
}

TEST(RunCondition, EnergyTheoreticalRealMode) {
  TrialCondition c;
  c.detector = DetectorKind::Energy;
  c.snr_db = 10.0;
  c.n_samples = 1000;
  c.mode = SampleMode::Real;
  c.threshold.method = ThresholdMethod::TheoreticalEnergy;
  c.threshold.target_pf = 0.1;
  c.master_seed = 3;
  const SweepResult r = run_condition(c);
  EXPECT_GE(r.pd, 0.97);
  EXPECT_GE(r.pf, 0.07);
  EXPECT_LE(r.pf, 0.13);
  ASSERT_TRUE(r.pd_analytic.has_value());
  EXPECT_FALSE(r.low_n_caveat);
}

TEST(RunCondition, VeryLowSnrIsIndistinguishable) {
  TrialCondition c = mf_quiet(-25.0);
  c.n_samples = 10;
  const SweepResult r = run_condition(c);
  EXPECT_LT(r.pd - r.pf, 0.15);
}

TEST(RunCondition, CountsAreExact) {
  TrialCondition c = mf_quiet(-18.0, 2.0);
  c.trials = 777;
  const SweepResult r = run_condition(c);
  EXPECT_EQ(r.counts.nt, 777u);
  EXPECT_LE(r.counts.nd, r.counts.nt);
  EXPECT_LE(r.counts.nf, r.counts.nt);
  EXPECT_EQ(r.pd, static_cast<double>(r.counts.nd) / 777.0);
  EXPECT_EQ(r.pf, static_cast<double>(r.counts.nf) / 777.0);
  EXPECT_EQ(std::round(r.pd * 777.0), static_cast<double>(r.counts.nd));
  EXPECT_FALSE(r.pd_analytic.has_value());
  EXPECT_GT(r.mean_threshold, 0.0);
}

TEST(RunCondition, MatchesManualTally) {
  TrialCondition c = mf_quiet(-16.0, 3.0);
  c.trials = 300;
  std::size_t nd = 0;
  std::size_t nf = 0;
  for (std::size_t i = 0; i < c.trials; ++i) {
    nd += run_trial(c, Hypothesis::H1, i) == Decision::PuPresent;
    nf += run_trial(c, Hypothesis::H0, i) == Decision::PuPresent;
  }
  const SweepResult r = run_condition(c);
  EXPECT_EQ(r.counts.nd, nd);
  EXPECT_EQ(r.counts.nf, nf);
}

TEST(RunSweep, ThreadCountDoesNotChangeResults) {
  ExperimentConfig cfg;
  cfg.detectors = {kAllDetectors.begin(), kAllDetectors.end()};
  cfg.snr_grid_db = {-10.0, 0.0, 6.0};
  cfg.n_grid = {300};
  cfg.k_grid = {1.0, 2.0};
  cfg.trials = 600;
  cfg.master_seed = 11;
  const auto grid = expand_grid(cfg);
  const auto one = run_sweep(grid, {.threads = 1});
  const auto four = run_sweep(grid, {.threads = 4});
  EXPECT_EQ(format_results_csv(one), format_results_csv(four));
}

TEST(RunSweep, OrderIndependentAndSingleConditionEquivalent) {
  ExperimentConfig cfg;
  cfg.snr_grid_db = {-20.0, -14.0, -8.0, 0.0};
  cfg.trials = 300;
  cfg.master_seed = 5;
  const auto grid = expand_grid(cfg);
  const auto ordered = run_sweep(grid);

  std::vector<std::size_t> perm(grid.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(1));
  std::vector<TrialCondition> shuffled;
  for (std::size_t i : perm) {
    shuffled.push_back(grid[i]);
  }
  const auto out = run_sweep(shuffled, {.threads = 3});
  for (std::size_t j = 0; j < perm.size(); ++j) {
    const SweepResult& a = ordered[perm[j]];
    const SweepResult& b = out[j];
    EXPECT_EQ(a.counts.nd, b.counts.nd);
    EXPECT_EQ(a.counts.nf, b.counts.nf);
    EXPECT_EQ(a.mean_threshold, b.mean_threshold);
  }

  const SweepResult single = run_condition(grid[2]);
  EXPECT_EQ(single.counts.nd, ordered[2].counts.nd);
  EXPECT_EQ(single.counts.nf, ordered[2].counts.nf);
}

TEST(RunSweep, ThresholdFactorTrendsUseCommonDraws) {
  // Conditions that differ only in k reuse the same draws, so raising k can
  // only remove detections and alarms.
  for (double snr : {-20.0, -14.0, -8.0}) {
    std::vector<TrialCondition> grid;
    for (double k : {1.0, 2.0, 3.0, 4.0}) {
      TrialCondition c = mf_quiet(snr, k);
      c.trials = 400;
      grid.push_back(c);
    }
    const auto rows = run_sweep(grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_LE(rows[i].counts.nd, rows[i - 1].counts.nd) << "snr " << snr;
      EXPECT_LE(rows[i].counts.nf, rows[i - 1].counts.nf) << "snr " << snr;
    }
  }
}

TEST(RunSweep, PrefixStableWhenTrialsGrow) {
  TrialCondition small = mf_quiet(-19.0);
  small.trials = 250;
  TrialCondition big = small;
  big.trials = 1000;
  for (std::size_t i = 0; i < small.trials; ++i) {
    EXPECT_EQ(simulate_trial(small, Hypothesis::H1, i).threshold,
              simulate_trial(big, Hypothesis::H1, i).threshold);
  }
}

TEST(RunSweep, PdRisesWithSnr) {
  std::vector<TrialCondition> grid;
  for (double snr = -30.0; snr <= -14.0; snr += 4.0) {
    TrialCondition c = mf_quiet(snr);
    c.trials = 500;
    grid.push_back(c);
  }
  const auto rows = run_sweep(grid);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].pd + 0.03, rows[i - 1].pd);
  }
  EXPECT_GT(rows.back().pd, rows.front().pd + 0.2);
}

TEST(RunSweep, PropagatesErrors) {
  TrialCondition bad = mf_quiet(0.0);
  bad.threshold.method = ThresholdMethod::FixedMargin;
  const std::vector<TrialCondition> grid = {mf_quiet(0.0), bad};
  EXPECT_THROW(run_sweep(grid, {.threads = 2}), std::invalid_argument);
}

}  // namespace
}  // namespace specsense
