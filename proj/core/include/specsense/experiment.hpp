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
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "specsense/montecarlo.hpp"

namespace specsense {

/// Library version, also recorded in run manifests.
[[nodiscard]] std::string_view version() noexcept;

/// How Energy and MatchedFilter thresholds are set in an experiment.
/// Autocorrelation always uses the fixed lag-ratio margin.
enum class ThresholdPolicy { Theoretical, QuietTime };

struct ExperimentConfig {
  std::string preset;  // informational; empty when built from scratch
  std::vector<DetectorKind> detectors{DetectorKind::MatchedFilter};
  std::vector<double> snr_grid_db;  // default -20..20 step 2
  std::vector<std::size_t> n_grid{1000};
  std::vector<double> k_grid{1.0, 2.0, 3.0, 4.0};
  std::vector<double> target_pf{0.1};
  ThresholdPolicy threshold_method = ThresholdPolicy::QuietTime;
  std::size_t quiet_windows = 1;
  double autocorr_margin = 0.5;
  std::size_t trials = 1000;
  std::size_t oversample = 2;
  SampleMode mode = SampleMode::Complex;
  std::uint64_t master_seed = 0;
  std::string output_path = "results.csv";

  ExperimentConfig();
};

/// Raised for any invalid configuration document; key() names the offender.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Values supplied on the command line; they win over the document.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> output_path;
};

/**
 * Parses a JSON configuration document.
 *
 * Keys: preset, detectors, snr_grid_db, n_grid, k_grid, target_pf,
 * threshold_method ("theoretical" | "quiet_time"), quiet_windows,
 * autocorr_margin, trials, oversample, mode ("real" | "complex"), seed,
 * output. When "preset" is given the preset's values are the starting point
 * and the remaining keys override them. A run manifest (an object holding
 * "tool", "version" and "config") is also accepted and unwrapped.
 *
 * A seed is mandatory unless it comes from a preset or the overrides.
 */
ExperimentConfig parse_config(std::string_view text,
                              const ConfigOverrides& overrides = {});

/// Serializes a config to the same JSON schema parse_config reads.
std::string config_to_json(const ExperimentConfig& config);

struct PresetInfo {
  std::string name;
  std::string description;
};

/// fig5, fig6, fig7, fig8, validate-analytic, in that order.
std::vector<PresetInfo> list_presets();

/// Throws ConfigError (key "preset") for an unknown name.
ExperimentConfig preset_config(std::string_view name);

/// Fixed seed used by presets when none is supplied.
inline constexpr std::uint64_t kPresetSeed = 20160808;

/**
 * Cross product of the config grids, ordered detector, N, target_pf, k, SNR
 * (SNR varies fastest). The target_pf axis applies only to theoretical
 * thresholds; other rows are not duplicated along it.
 */
std::vector<TrialCondition> expand_grid(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "detector,mode,snr_db,n_samples,oversample,k_factor,threshold_method,"
    "trials,pd,pf,pd_analytic,pf_analytic,mean_threshold,seed";

/// Threshold column text, e.g. "quiet_time(m=1)" or "theoretical_mf(pf=0.05)".
std::string describe_threshold(const ThresholdSpec& spec);

/// Header plus one row per result. Reals use 12 significant digits.
std::string format_results_csv(std::span<const SweepResult> results);

/// One parsed CSV row.
struct CsvRow {
  std::string detector;
  std::string mode;
  double snr_db;
  std::size_t n_samples;
  std::size_t oversample;
  double k_factor;
  std::string threshold_method;
  std::size_t trials;
  double pd;
  double pf;
  std::optional<double> pd_analytic;
  std::optional<double> pf_analytic;
  double mean_threshold;
  std::uint64_t seed;
};

/// Throws std::runtime_error on a malformed document or header mismatch.
std::vector<CsvRow> parse_results_csv(std::string_view text);

std::string format_manifest(const ExperimentConfig& config);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path);

struct ExperimentOutput {
  std::vector<SweepResult> results;
  std::string csv;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
};

/// Expands the grid, runs the sweep, writes the CSV and its manifest.
ExperimentOutput run_experiment(const ExperimentConfig& config,
                                RunOptions options = {});

struct AnalyticCheck {
  std::size_t rows_checked = 0;
  double max_pd_error = 0.0;
  double max_pf_error = 0.0;
  std::vector<std::size_t> failing_rows;

  [[nodiscard]] bool passed() const noexcept {
    return rows_checked > 0 && failing_rows.empty();
  }
};

/// Compares measured and analytic probabilities for every row that has both.
AnalyticCheck check_against_analytic(std::span<const SweepResult> results,
                                     double tolerance);

}  // namespace specsense
