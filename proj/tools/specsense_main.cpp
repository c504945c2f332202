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

// specsense: run spectrum-sensing sweeps and write result tables.
//
//   specsense run --preset fig7 --out fig7.csv
//   specsense run --config my_sweep.json --seed 7 --threads 4
//   specsense presets
//   specsense validate

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "specsense/experiment.hpp"

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_command(const std::string& config_path, const std::string& preset,
                std::optional<std::uint64_t> seed, std::optional<std::string> out,
                std::optional<std::size_t> trials, unsigned threads) {
  specsense::ConfigOverrides overrides{seed, trials, out};
  const std::string text =
      preset.empty() ? read_text_file(config_path)
                     : std::string(R"({"preset": ")") + preset + R"("})";
  const specsense::ExperimentConfig config = specsense::parse_config(text, overrides);

  const auto output = specsense::run_experiment(config, {.threads = threads});
  std::cerr << "wrote " << output.results.size() << " rows to "
            << output.csv_path.string() << " (manifest "
            << output.manifest_path.string() << ")\n";
  return 0;
}

int validate_command(std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> trials, std::optional<std::string> out,
                     unsigned threads) {
  constexpr double kTolerance = 0.03;
  auto config = specsense::parse_config(R"({"preset": "validate-analytic"})",
                                        {seed, trials, out});
  const auto output = specsense::run_experiment(config, {.threads = threads});
  const auto check = specsense::check_against_analytic(output.results, kTolerance);
  std::printf("rows checked: %zu\nmax |pd - pd_analytic| = %.6f\n"
              "max |pf - pf_analytic| = %.6f\n",
              check.rows_checked, check.max_pd_error, check.max_pf_error);
  for (std::size_t i : check.failing_rows) {
    const auto& r = output.results[i];
    std::printf("  FAIL %s snr=%g n=%zu pf_target=%g: pd=%.4f (%.4f) pf=%.4f (%.4f)\n",
                std::string(specsense::to_string(r.condition.detector)).c_str(),
                r.condition.snr_db, r.condition.n_samples,
                r.condition.threshold.target_pf, r.pd, *r.pd_analytic, r.pf,
                *r.pf_analytic);
  }
  std::printf("%s (tolerance %.2f)\n", check.passed() ? "PASS" : "FAIL", kTolerance);
  return check.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-sensing detector sweeps (energy, matched filter, "
               "autocorrelation)"};
  app.set_version_flag("--version", std::string(specsense::version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> trials;
  unsigned threads = 1;

  auto* run = app.add_subcommand("run", "Run a sweep and write CSV + manifest");
  auto* config_opt =
      run->add_option("--config", config_path, "JSON configuration or manifest")
          ->check(CLI::ExistingFile);
  auto* preset_opt = run->add_option("--preset", preset, "Named preset (see `presets`)");
  config_opt->excludes(preset_opt);
  run->add_option("--seed", seed, "Master seed (overrides the document)");
  run->add_option("--out", out, "Output CSV path");
  run->add_option("--trials", trials, "Trials per hypothesis per condition")
      ->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* presets = app.add_subcommand("presets", "List built-in presets");

  auto* validate = app.add_subcommand(
      "validate", "Check Monte Carlo against closed-form P_d/P_f (real mode)");
  validate->add_option("--seed", seed, "Master seed");
  validate->add_option("--trials", trials, "Trials per hypothesis per condition")
      ->check(CLI::PositiveNumber);
  validate->add_option("--out", out, "Output CSV path");
  validate->add_option("--threads", threads, "Worker threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (config_path.empty() && preset.empty()) {
        std::cerr << "run: one of --config or --preset is required\n";
        return 2;
      }
      return run_command(config_path, preset, seed, out, trials, threads);
    }
    if (*presets) {
      for (const auto& p : specsense::list_presets()) {
        std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
      }
      return 0;
    }
    if (*validate) {
      return validate_command(seed, trials, out, threads);
    }
  } catch (const specsense::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
