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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Every tolerance is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specsense/analytic.hpp"
#include "specsense/detectors.hpp"
#include "specsense/experiment.hpp"
#include "specsense/threshold.hpp"

namespace {

using namespace specsense;

constexpr double kFig5PdFloor = 0.90;
constexpr double kFig5MfPdFloor = 0.99;
constexpr double kFig5SnrFrom = 2.0;
constexpr double kFig5RuntimeSec = 120.0;
constexpr double kFig6MfPdFloor = 0.99;
constexpr double kFig6SnrFrom = -4.0;
constexpr double kFig6Slack = 0.03;
constexpr double kFig7Slack = 0.03;
constexpr double kFig8SnrUpTo = -10.0;
constexpr double kFig8Slack = 0.05;
constexpr double kAnalyticTol = 0.03;
constexpr double kAnalyticRuntimeSec = 300.0;
constexpr double kRoundTripTol = 1e-9;
constexpr double kQInverseTol = 1e-9;
constexpr double kQAt12816 = 0.1000;
constexpr double kQAt12816Tol = 1e-4;
constexpr double kComplexRelTol = 1e-12;
constexpr int kOracleFrames = 100;

struct Timed {
  std::vector<SweepResult> results;
  double seconds;
};

Timed run_preset(const char* name, unsigned threads = 1) {
  ExperimentConfig cfg = preset_config(name);
  const auto start = std::chrono::steady_clock::now();
  auto results = run_sweep(expand_grid(cfg), {.threads = threads});
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(results), elapsed.count()};
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, name, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion_fig5() {
  const Timed run = run_preset("fig5");
  double worst = 1.0;
  double worst_mf = 1.0;
  for (const SweepResult& r : run.results) {
    if (r.condition.snr_db < kFig5SnrFrom) {
      continue;
    }
    worst = std::min(worst, r.pd);
    if (r.condition.detector == DetectorKind::MatchedFilter) {
      worst_mf = std::min(worst_mf, r.pd);
    }
  }
  const bool ok =
      worst >= kFig5PdFloor && worst_mf >= kFig5MfPdFloor && run.seconds < kFig5RuntimeSec;
  report(1, "fig5 pd above +2 dB", ok,
         fmt("min pd %.4f (>= %.2f), min mf pd %.4f (>= %.2f), %.1f s (< %.0f s)", worst,
             kFig5PdFloor, worst_mf, kFig5MfPdFloor, run.seconds, kFig5RuntimeSec));
}

void criterion_fig6() {
  const Timed run = run_preset("fig6");
  double worst_high = 1.0;
  double worst_step = 0.0;  // most negative pd(N_next) - pd(N)
  std::map<double, std::vector<const SweepResult*>> by_snr;
  for (const SweepResult& r : run.results) {
    by_snr[r.condition.snr_db].push_back(&r);
    if (r.condition.n_samples == 1000 && r.condition.snr_db >= kFig6SnrFrom) {
      worst_high = std::min(worst_high, r.pd);
    }
  }
  for (auto& [snr, rows] : by_snr) {
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) {
      return a->condition.n_samples < b->condition.n_samples;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
      worst_step = std::min(worst_step, rows[i]->pd - rows[i - 1]->pd);
    }
  }
  const bool ok = worst_high >= kFig6MfPdFloor && worst_step >= -kFig6Slack;
  report(2, "fig6 pd vs N", ok,
         fmt("min pd at N=1000, snr>=-4: %.4f (>= %.2f); worst N step %+.4f (>= -%.2f)",
             worst_high, kFig6MfPdFloor, worst_step, kFig6Slack));
}

// Keyed by (snr, k).
std::map<std::pair<double, double>, const SweepResult*> index_by_snr_k(
    const std::vector<SweepResult>& rows) {
  std::map<std::pair<double, double>, const SweepResult*> out;
  for (const SweepResult& r : rows) {
    out[{r.condition.snr_db, r.condition.threshold.factor_k}] = &r;
  }
  return out;
}

void criterion_fig7(const std::vector<SweepResult>& rows) {
  const auto idx = index_by_snr_k(rows);
  const std::vector<double> ks = {1.0, 2.0, 3.0, 4.0};
  double worst = 0.0;  // most negative pd(k) - pd(k+1)
  std::size_t points = 0;
  for (const double snr : preset_config("fig7").snr_grid_db) {
    for (std::size_t i = 1; i < ks.size(); ++i) {
      worst = std::min(worst, idx.at({snr, ks[i - 1]})->pd - idx.at({snr, ks[i]})->pd);
    }
    ++points;
  }
  report(3, "fig7 pd falls with k", worst >= -kFig7Slack && points == 21,
         fmt("worst pd(k) - pd(k+1) %+.4f (>= -%.2f) over %zu snr points", worst,
             kFig7Slack, points));
}

void criterion_fig8(const std::vector<SweepResult>& rows) {
  const auto idx = index_by_snr_k(rows);
  const auto snrs = preset_config("fig8").snr_grid_db;
  double worst_k = 0.0;  // most negative pf(k=1) - pf(k=4) at low SNR
  double worst_snr = 0.0;  // most negative pf(snr) - pf(snr_next) at k=4
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    if (snrs[i] <= kFig8SnrUpTo) {
      worst_k = std::min(worst_k, idx.at({snrs[i], 1.0})->pf - idx.at({snrs[i], 4.0})->pf);
    }
    if (i > 0) {
      worst_snr = std::min(worst_snr,
                           idx.at({snrs[i - 1], 4.0})->pf - idx.at({snrs[i], 4.0})->pf);
    }
  }
  report(4, "fig8 pf vs k and snr", worst_k >= 0.0 && worst_snr >= -kFig8Slack,
         fmt("worst pf(k=1)-pf(k=4) at snr<=-10: %+.4f (>= 0); worst pf rise with snr "
             "at k=4: %+.4f (>= -%.2f)",
             worst_k, worst_snr, kFig8Slack));
}

void criterion_analytic() {
  const Timed run = run_preset("validate-analytic");
  const AnalyticCheck check = check_against_analytic(run.results, kAnalyticTol);
  const bool ok = check.passed() && check.rows_checked == 32 &&
                  run.seconds < kAnalyticRuntimeSec;
  report(5, "analytic vs monte carlo", ok,
         fmt("%zu rows, max |dpd| %.4f, max |dpf| %.4f (<= %.2f), %.1f s (< %.0f s)",
             check.rows_checked, check.max_pd_error, check.max_pf_error, kAnalyticTol,
             run.seconds, kAnalyticRuntimeSec));
}

void criterion_round_trip() {
  double worst = 0.0;
  for (double pf : {0.01, 0.05, 0.1, 0.3, 0.5}) {
    for (std::size_t n : {256u, 1000u}) {
      for (double var : {0.5, 1.0, 2.0}) {
        const double le = energy_threshold_theoretical(pf, n, var).lambda;
        worst = std::max(worst, std::abs(energy_pf_analytic(le, n, var) - pf));
        const double e = static_cast<double>(n);
        const double lm = mf_threshold_theoretical(pf, e, var).lambda;
        worst = std::max(worst, std::abs(mf_pf_analytic(lm, e, var) - pf));
      }
    }
  }
  report(6, "threshold round trips", worst <= kRoundTripTol,
         fmt("max |pf - target| %.3g (<= %.0e) over 60 points", worst, kRoundTripTol));
}

void criterion_q() {
  const bool exact_half = q_function(0.0) == 0.5;
  double worst = 0.0;
  for (double p : {1e-4, 0.01, 0.1, 0.5, 0.9, 0.99}) {
    worst = std::max(worst, std::abs(q_function(q_inverse(p)) - p));
  }
  const double oracle_q = oracle::gaussian_tail(1.2816);
  const double lib_q = q_function(1.2816);
  const bool ok = exact_half && worst <= kQInverseTol &&
                  std::abs(oracle_q - kQAt12816) <= kQAt12816Tol &&
                  std::abs(lib_q - kQAt12816) <= kQAt12816Tol &&
                  std::abs(lib_q - oracle_q) <= kQAt12816Tol;
  report(7, "q-function numerics", ok,
         fmt("Q(0)=%.17g; max |Q(Qinv(p))-p| %.3g (<= %.0e); Q(1.2816) lib %.8f "
             "quadrature %.8f (0.1000 +- %.0e)",
             q_function(0.0), worst, kQInverseTol, lib_q, oracle_q, kQAt12816Tol));
}

void criterion_determinism(const std::vector<SweepResult>& first) {
  const std::string a = format_results_csv(first);
  const std::string b = format_results_csv(run_preset("fig7", 1).results);
  const std::string c = format_results_csv(run_preset("fig7", 4).results);
  report(8, "fig7 byte-identical reruns", a == b && a == c,
         fmt("rerun %s, 4 threads %s (%zu bytes)", a == b ? "identical" : "DIFFERS",
             a == c ? "identical" : "DIFFERS", a.size()));
}

void criterion_oracles() {
  std::size_t mismatches = 0;
  double worst_rel = 0.0;
  auto rel = [](std::complex<double> got, std::complex<double> want) {
    const double scale = std::abs(want);
    return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
  };
  for (int i = 0; i < kOracleFrames; ++i) {
    const SampleMode mode = i % 2 == 0 ? SampleMode::Real : SampleMode::Complex;
    const std::size_t n = 2 + static_cast<std::size_t>(i) * 13 % 500;
    const SampleFrame y = oracle::random_frame(n, mode, 9000 + i);
    const SampleFrame p = oracle::random_frame(n, mode, 19000 + i);
    const double e = energy_statistic(y).value;
    const double m = matched_filter_statistic(y, p).value;
    const auto r1 = autocorrelation(y, 1);
    const auto r1_want = oracle::autocorrelation(y, 1);
    if (mode == SampleMode::Real) {
      mismatches += e != oracle::energy(y);
      mismatches += m != oracle::matched_filter(y, p);
      mismatches += r1 != r1_want;
    } else {
      const double r_e = rel(e, oracle::energy(y));
      const double r_m = rel(m, oracle::matched_filter(y, p));
      const double r_a = rel(r1, r1_want);
      worst_rel = std::max({worst_rel, r_e, r_m, r_a});
      mismatches += (r_e > kComplexRelTol) + (r_m > kComplexRelTol) + (r_a > kComplexRelTol);
    }
  }
  report(9, "statistic oracles", mismatches == 0,
         fmt("%d frames, %zu mismatches, worst complex rel err %.3g (<= %.0e)",
             kOracleFrames, mismatches, worst_rel, kComplexRelTol));
}

}  // namespace

int main() {
  criterion_fig5();
  criterion_fig6();
  const std::vector<SweepResult> fig7 = run_preset("fig7").results;
  criterion_fig7(fig7);
  // fig8 is the same sweep read through the pf column.
  criterion_fig8(run_preset("fig8").results);
  criterion_analytic();
  criterion_round_trip();
  criterion_q();
  criterion_determinism(fig7);
  criterion_oracles();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
