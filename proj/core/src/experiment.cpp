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

#include "specsense/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#ifndef SPECSENSE_VERSION
#define SPECSENSE_VERSION "0.0.0"
#endif

namespace specsense {

using json = nlohmann::ordered_json;

std::string_view version() noexcept { return SPECSENSE_VERSION; }

namespace {

std::vector<double> default_snr_grid() {
  std::vector<double> grid;
  for (int snr = -20; snr <= 20; snr += 2) {
    grid.push_back(static_cast<double>(snr));
  }
  return grid;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string_view to_string(ThresholdPolicy policy) noexcept {
  return policy == ThresholdPolicy::Theoretical ? "theoretical" : "quiet_time";
}

//---------------------------------------------------------------------------//
// JSON field readers. Each one names its key in the error it raises.

const std::set<std::string, std::less<>> kKnownKeys = {
    "preset", "detectors", "snr_grid_db", "n_grid",   "k_grid",
    "target_pf", "threshold_method", "quiet_windows", "autocorr_margin",
    "trials", "oversample", "mode", "seed", "output"};

std::uint64_t read_unsigned(const json& doc, const std::string& key,
                            std::uint64_t min_value) {
  const json& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  const auto value = v.get<std::uint64_t>();
  if (value < min_value) {
    throw ConfigError(key, "must be >= " + std::to_string(min_value));
  }
  return value;
}

double read_real(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError(key, "expected a number");
  }
  const double value = v.get<double>();
  if (!std::isfinite(value)) {
    throw ConfigError(key, "must be finite");
  }
  return value;
}

std::string read_string(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) {
    throw ConfigError(key, "expected a string");
  }
  return v.get<std::string>();
}

const json& read_nonempty_array(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array()) {
    throw ConfigError(key, "expected an array");
  }
  if (v.empty()) {
    throw ConfigError(key, "must not be empty");
  }
  return v;
}

void apply_document(ExperimentConfig& cfg, const json& doc) {
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) {
      throw ConfigError(key, "unknown key");
    }
  }
  if (doc.contains("detectors")) {
    cfg.detectors.clear();
    for (const json& item : read_nonempty_array(doc, "detectors")) {
      const auto kind = item.is_string()
                            ? parse_detector_kind(item.get<std::string>())
                            : std::nullopt;
      if (!kind) {
        throw ConfigError("detectors",
                          "expected energy, matched_filter or autocorrelation");
      }
      cfg.detectors.push_back(*kind);
    }
  }
  if (doc.contains("snr_grid_db")) {
    cfg.snr_grid_db.clear();
    for (const json& item : read_nonempty_array(doc, "snr_grid_db")) {
      cfg.snr_grid_db.push_back(read_real(item, "snr_grid_db"));
    }
  }
  if (doc.contains("n_grid")) {
    cfg.n_grid.clear();
    for (const json& item : read_nonempty_array(doc, "n_grid")) {
      if (!item.is_number_unsigned() || item.get<std::uint64_t>() == 0) {
        throw ConfigError("n_grid", "entries must be integers >= 1");
      }
      cfg.n_grid.push_back(item.get<std::size_t>());
    }
  }
  if (doc.contains("k_grid")) {
    cfg.k_grid.clear();
    for (const json& item : read_nonempty_array(doc, "k_grid")) {
      const double k = read_real(item, "k_grid");
      if (!(k > 0.0)) {
        throw ConfigError("k_grid", "threshold factors must be > 0");
      }
      cfg.k_grid.push_back(k);
    }
  }
  if (doc.contains("target_pf")) {
    cfg.target_pf.clear();
    for (const json& item : read_nonempty_array(doc, "target_pf")) {
      const double pf = read_real(item, "target_pf");
      if (!(pf > 0.0 && pf < 1.0)) {
        throw ConfigError("target_pf", "entries must lie in (0, 1)");
      }
      cfg.target_pf.push_back(pf);
    }
  }
  if (doc.contains("threshold_method")) {
    const std::string method = read_string(doc, "threshold_method");
    if (method == "theoretical") {
      cfg.threshold_method = ThresholdPolicy::Theoretical;
    } else if (method == "quiet_time") {
      cfg.threshold_method = ThresholdPolicy::QuietTime;
    } else {
      throw ConfigError("threshold_method", "expected theoretical or quiet_time");
    }
  }
  if (doc.contains("quiet_windows")) {
    cfg.quiet_windows = read_unsigned(doc, "quiet_windows", 1);
  }
  if (doc.contains("autocorr_margin")) {
    const double margin = read_real(doc.at("autocorr_margin"), "autocorr_margin");
    if (!(margin > 0.0 && margin < 1.0)) {
      throw ConfigError("autocorr_margin", "must lie in (0, 1)");
    }
    cfg.autocorr_margin = margin;
  }
  if (doc.contains("trials")) {
    cfg.trials = read_unsigned(doc, "trials", 1);
  }
  if (doc.contains("oversample")) {
    cfg.oversample = read_unsigned(doc, "oversample", 1);
  }
  if (doc.contains("mode")) {
    const std::string mode = read_string(doc, "mode");
    if (mode == "real") {
      cfg.mode = SampleMode::Real;
    } else if (mode == "complex") {
      cfg.mode = SampleMode::Complex;
    } else {
      throw ConfigError("mode", "expected real or complex");
    }
  }
  if (doc.contains("seed")) {
    cfg.master_seed = read_unsigned(doc, "seed", 0);
  }
  if (doc.contains("output")) {
    cfg.output_path = read_string(doc, "output");
    if (cfg.output_path.empty()) {
      throw ConfigError("output", "must not be empty");
    }
  }
}

void check_grid_consistency(const ExperimentConfig& cfg) {
  const bool has_autocorr =
      std::find(cfg.detectors.begin(), cfg.detectors.end(),
                DetectorKind::Autocorrelation) != cfg.detectors.end();
  if (has_autocorr &&
      std::any_of(cfg.n_grid.begin(), cfg.n_grid.end(),
                  [](std::size_t n) { return n < 2; })) {
    throw ConfigError("n_grid", "autocorrelation needs n >= 2");
  }
}

}  // namespace

ExperimentConfig::ExperimentConfig() : snr_grid_db(default_snr_grid()) {}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("config key \"" + key + "\": " + message),
      key_(std::move(key)) {}

ExperimentConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("<document>", "top level must be an object");
  }
  // Run manifests wrap the config; accept them so a manifest can re-run.
  if (doc.contains("tool") && doc.contains("config") && doc.size() <= 3) {
    json inner = doc.at("config");
    if (!inner.is_object()) {
      throw ConfigError("config", "manifest config must be an object");
    }
    doc = std::move(inner);
  }

  ExperimentConfig cfg;
  bool have_seed = false;
  if (doc.contains("preset")) {
    cfg = preset_config(read_string(doc, "preset"));
    have_seed = true;
  }
  apply_document(cfg, doc);
  have_seed = have_seed || doc.contains("seed");

  if (overrides.seed) {
    cfg.master_seed = *overrides.seed;
    have_seed = true;
  }
  if (overrides.trials) {
    if (*overrides.trials == 0) {
      throw ConfigError("trials", "must be >= 1");
    }
    cfg.trials = *overrides.trials;
  }
  if (overrides.output_path) {
    cfg.output_path = *overrides.output_path;
  }
  if (!have_seed) {
    throw ConfigError("seed", "missing; every run needs an explicit master seed");
  }
  check_grid_consistency(cfg);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json doc;
  if (!cfg.preset.empty()) {
    doc["preset"] = cfg.preset;
  }
  json detectors = json::array();
  for (DetectorKind d : cfg.detectors) {
    detectors.push_back(std::string(to_string(d)));
  }
  doc["detectors"] = detectors;
  doc["snr_grid_db"] = cfg.snr_grid_db;
  doc["n_grid"] = cfg.n_grid;
  doc["k_grid"] = cfg.k_grid;
  doc["target_pf"] = cfg.target_pf;
  doc["threshold_method"] = std::string(to_string(cfg.threshold_method));
  doc["quiet_windows"] = cfg.quiet_windows;
  doc["autocorr_margin"] = cfg.autocorr_margin;
  doc["trials"] = cfg.trials;
  doc["oversample"] = cfg.oversample;
  doc["mode"] = std::string(to_string(cfg.mode));
  doc["seed"] = cfg.master_seed;
  doc["output"] = cfg.output_path;
  return doc.dump(2);
}

std::vector<PresetInfo> list_presets() {
  return {
      {"fig5", "P_d vs SNR for energy, matched filter and autocorrelation; "
               "N=1000, k=1, quiet-time thresholds, margin 0.5"},
      {"fig6", "matched filter P_d vs N (100..1000) at SNR -20, -12, -4, 0 dB"},
      {"fig7", "matched filter P_d vs SNR for threshold factors k=1..4, N=1000"},
      {"fig8", "matched filter P_f vs SNR for threshold factors k=1..4, N=1000"},
      {"validate-analytic",
       "real-mode theoretical thresholds, 10^4 trials, measured vs closed-form "
       "P_d/P_f for energy and matched filter"},
  };
}

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig cfg;
  cfg.preset = std::string(name);
  cfg.master_seed = kPresetSeed;
  cfg.output_path = std::string(name) + ".csv";
  if (name == "fig5") {
    cfg.detectors = {kAllDetectors.begin(), kAllDetectors.end()};
    cfg.k_grid = {1.0};
    // An 8-sample hold puts the clean lag ratio at 7/8, well clear of the
    // 0.5 margin; with a 2-sample hold it sits on the margin itself.
    cfg.oversample = 8;
  } else if (name == "fig6") {
    cfg.n_grid.clear();
    for (std::size_t n = 100; n <= 1000; n += 100) {
      cfg.n_grid.push_back(n);
    }
    cfg.snr_grid_db = {-20.0, -12.0, -4.0, 0.0};
    cfg.k_grid = {1.0};
  } else if (name == "fig7" || name == "fig8") {
    // Same sweep; fig7 reads the pd column, fig8 the pf column.
  } else if (name == "validate-analytic") {
    cfg.detectors = {DetectorKind::Energy, DetectorKind::MatchedFilter};
    cfg.snr_grid_db = {-10.0, -5.0, 0.0, 5.0};
    cfg.n_grid = {500, 1000};
    cfg.k_grid = {1.0};
    cfg.target_pf = {0.05, 0.1};
    cfg.threshold_method = ThresholdPolicy::Theoretical;
    cfg.trials = 10000;
    cfg.mode = SampleMode::Real;
  } else {
    throw ConfigError("preset", "unknown preset \"" + std::string(name) + "\"");
  }
  return cfg;
}

std::vector<TrialCondition> expand_grid(const ExperimentConfig& cfg) {
  std::vector<TrialCondition> grid;
  for (DetectorKind detector : cfg.detectors) {
    ThresholdSpec base;
    std::vector<double> pf_axis = {cfg.target_pf.front()};
    if (detector == DetectorKind::Autocorrelation) {
      base.method = ThresholdMethod::FixedMargin;
      base.margin = cfg.autocorr_margin;
    } else if (cfg.threshold_method == ThresholdPolicy::QuietTime) {
      base.method = ThresholdMethod::QuietTime;
      base.quiet_windows = cfg.quiet_windows;
    } else {
      base.method = detector == DetectorKind::Energy
                        ? ThresholdMethod::TheoreticalEnergy
                        : ThresholdMethod::TheoreticalMatchedFilter;
      pf_axis = cfg.target_pf;
    }
    for (std::size_t n : cfg.n_grid) {
      for (double pf : pf_axis) {
        for (double k : cfg.k_grid) {
          for (double snr : cfg.snr_grid_db) {
            TrialCondition c;
            c.detector = detector;
            c.snr_db = snr;
            c.n_samples = n;
            c.oversample = cfg.oversample;
            c.threshold = base;
            c.threshold.target_pf = pf;
            c.threshold.factor_k = k;
            c.mode = cfg.mode;
            c.trials = cfg.trials;
            c.master_seed = cfg.master_seed;
            grid.push_back(c);
          }
        }
      }
    }
  }
  return grid;
}

std::string describe_threshold(const ThresholdSpec& spec) {
  std::string out(to_string(spec.method));
  switch (spec.method) {
    case ThresholdMethod::TheoreticalEnergy:
    case ThresholdMethod::TheoreticalMatchedFilter:
      return out + "(pf=" + format_real(spec.target_pf) + ")";
    case ThresholdMethod::QuietTime:
      return out + "(m=" + std::to_string(spec.quiet_windows) + ")";
    case ThresholdMethod::FixedMargin:
      return out + "(margin=" + format_real(spec.margin) + ")";
  }
  return out;
}

std::string format_results_csv(std::span<const SweepResult> results) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepResult& r : results) {
    const TrialCondition& c = r.condition;
    out += to_string(c.detector);
    out += ',';
    out += to_string(c.mode);
    out += ',' + format_real(c.snr_db);
    out += ',' + std::to_string(c.n_samples);
    out += ',' + std::to_string(c.oversample);
    out += ',' + format_real(c.threshold.factor_k);
    out += ',' + describe_threshold(c.threshold);
    out += ',' + std::to_string(c.trials);
    out += ',' + format_real(r.pd);
    out += ',' + format_real(r.pf);
    out += ',' + (r.pd_analytic ? format_real(*r.pd_analytic) : std::string());
    out += ',' + (r.pf_analytic ? format_real(*r.pf_analytic) : std::string());
    out += ',' + format_real(r.mean_threshold);
    out += ',' + std::to_string(c.master_seed);
    out += '\n';
  }
  return out;
}

std::vector<CsvRow> parse_results_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("results CSV: missing or unexpected header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (cells.size() != 14) {
      throw std::runtime_error("results CSV line " + std::to_string(line_no) +
                               ": expected 14 cells, got " +
                               std::to_string(cells.size()));
    }
    auto optional_real = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) {
        return std::nullopt;
      }
      return std::stod(s);
    };
    try {
      rows.push_back(CsvRow{
          .detector = cells[0],
          .mode = cells[1],
          .snr_db = std::stod(cells[2]),
          .n_samples = std::stoull(cells[3]),
          .oversample = std::stoull(cells[4]),
          .k_factor = std::stod(cells[5]),
          .threshold_method = cells[6],
          .trials = std::stoull(cells[7]),
          .pd = std::stod(cells[8]),
          .pf = std::stod(cells[9]),
          .pd_analytic = optional_real(cells[10]),
          .pf_analytic = optional_real(cells[11]),
          .mean_threshold = std::stod(cells[12]),
          .seed = std::stoull(cells[13]),
      });
    } catch (const std::logic_error& e) {
      throw std::runtime_error("results CSV line " + std::to_string(line_no) +
                               ": bad number (" + e.what() + ")");
    }
  }
  return rows;
}

std::string format_manifest(const ExperimentConfig& config) {
  json manifest;
  manifest["tool"] = "specsense";
  manifest["version"] = std::string(version());
  manifest["config"] = json::parse(config_to_json(config));
  return manifest.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() +
                             ": " + ec.message());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p += ".manifest.json";
  return p;
}

ExperimentOutput run_experiment(const ExperimentConfig& config, RunOptions options) {
  const std::vector<TrialCondition> grid = expand_grid(config);
  ExperimentOutput out;
  out.results = run_sweep(grid, options);
  out.csv = format_results_csv(out.results);
  out.csv_path = config.output_path;
  out.manifest_path = manifest_path_for(out.csv_path);
  write_file_atomic(out.csv_path, out.csv);
  write_file_atomic(out.manifest_path, format_manifest(config));
  return out;
}

AnalyticCheck check_against_analytic(std::span<const SweepResult> results,
                                     double tolerance) {
  AnalyticCheck check;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SweepResult& r = results[i];
    if (!r.pd_analytic || !r.pf_analytic) {
      continue;
    }
    ++check.rows_checked;
    const double dpd = std::abs(r.pd - *r.pd_analytic);
    const double dpf = std::abs(r.pf - *r.pf_analytic);
    check.max_pd_error = std::max(check.max_pd_error, dpd);
    check.max_pf_error = std::max(check.max_pf_error, dpf);
    if (dpd > tolerance || dpf > tolerance) {
      check.failing_rows.push_back(i);
    }
  }
  return check;
}

}  // namespace specsense
