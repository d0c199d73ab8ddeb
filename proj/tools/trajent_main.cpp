// Copyright 2026 The trajectory_entropy Authors
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

// trajent: experiment runner for the entropy-gated level-k game.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/experiment.hpp"

namespace te = trajectory_entropy;

namespace
{

enum ExitCode : int
{
  kOk = 0,
  kConfig = 1,
  kIo = 2,
  kContract = 3,
};

// Raw flag values shared by run, profile and sweep.
struct CommonFlags
{
  std::string suite{"generate:scenes=10"};
  std::optional<std::size_t> levels;
  std::string thresholds;
  std::string preset;
  std::string preset_file;
  std::string normalization{"unit-step-squared"};
  std::string pairs{"unordered"};
  std::uint64_t seed{0};
  std::size_t jobs{1};
  std::string out{"out"};
  bool no_gate{false};
};

void add_common(CLI::App * cmd, CommonFlags & f, bool with_thresholds)
{
  cmd->add_option("--suite", f.suite, "suite file, or generate:scenes=N,straight=F,horizon=T,dt=S")
    ->capture_default_str();
  cmd->add_option("--levels", f.levels, "number of game levels K");
  if (with_thresholds) {
    auto * th = cmd->add_option("--thresholds", f.thresholds, "K-1 gate thresholds, a,b,...");
    auto * pr = cmd->add_option("--preset", f.preset, "named threshold preset");
    th->excludes(pr);
    cmd->add_flag("--no-gate", f.no_gate, "run the gated game with every gate disabled");
  }
  cmd->add_option("--preset-file", f.preset_file, "preset catalog (default: built-in copy)");
  cmd->add_option("--normalization", f.normalization)
    ->check(CLI::IsMember({"unit-step-squared", "unit-step", "cumulative", "final"}))
    ->capture_default_str();
  cmd->add_option("--pairs", f.pairs)
    ->check(CLI::IsMember({"unordered", "ordered"}))
    ->capture_default_str();
  cmd->add_option("--seed", f.seed)->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "scenes run in parallel")->capture_default_str();
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
}

te::PresetCatalog catalog_for(const CommonFlags & f)
{
  return f.preset_file.empty() ? te::builtin_presets() : te::load_presets(f.preset_file);
}

te::EntropyConfig entropy_config(const CommonFlags & f)
{
  te::EntropyConfig cfg;
  cfg.variant = *te::parse_normalization(f.normalization);
  cfg.pairs = *te::parse_pair_convention(f.pairs);
  return cfg;
}

te::RunConfig make_config(const CommonFlags & f)
{
  te::RunConfig cfg;
  cfg.suite = f.suite;
  cfg.seed = f.seed;
  cfg.jobs = f.jobs;
  cfg.out_dir = f.out;
  cfg.entropy = entropy_config(f);
  cfg.gate_enabled = !f.no_gate;
  // Without explicit thresholds a gated run uses the calibrated synthetic schedule.
  const std::string preset_name =
    f.preset.empty() && f.thresholds.empty() && !f.no_gate && f.levels.value_or(3) > 1
      ? "synthetic"
      : f.preset;
  if (!preset_name.empty()) {
    const auto catalog = catalog_for(f);
    const auto * preset = catalog.find_preset(preset_name);
    if (preset == nullptr) {
      throw te::ConfigError("unknown preset '" + preset_name + "'");
    }
    cfg.thresholds = preset->thresholds;
  } else {
    cfg.thresholds = te::parse_threshold_list(f.thresholds);
  }
  if (f.levels) {
    cfg.levels = *f.levels;
  } else if (!cfg.thresholds.empty()) {
    cfg.levels = cfg.thresholds.size() + 1;
  }
  cfg.validate();
  for (const auto & w : cfg.gate().schedule_warnings()) {
    std::cerr << "warning: " << w << "\n";
  }
  return cfg;
}

void ensure_dir(const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw te::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

int cmd_run(const CommonFlags & f)
{
  const auto cfg = make_config(f);
  const auto suite = te::resolve_suite(cfg.suite, cfg.seed);
  const auto outcomes = te::run_suite(suite, cfg);
  const auto summary = te::summarize(outcomes, cfg);
  ensure_dir(cfg.out_dir);
  te::write_text(cfg.out_dir / "run.csv", te::run_csv(outcomes, cfg));
  const auto summary_text = te::summary_csv(summary, cfg);
  te::write_text(cfg.out_dir / "summary.csv", summary_text);
  std::cout << summary_text;
  return kOk;
}

int cmd_profile(const CommonFlags & f)
{
  const auto cfg = make_config(f);
  const auto suite = te::resolve_suite(cfg.suite, cfg.seed);
  const auto text = te::profile_csv(te::entropy_profile(te::run_suite(suite, cfg)));
  ensure_dir(cfg.out_dir);
  te::write_text(cfg.out_dir / "profile.csv", text);
  std::cout << text;
  return kOk;
}

int cmd_sweep(CommonFlags f, const std::string & grid_text, const std::string & grid_name)
{
  std::vector<std::vector<double>> grid;
  if (!grid_name.empty()) {
    const auto catalog = catalog_for(f);
    const auto * g = catalog.find_grid(grid_name);
    if (g == nullptr) {
      throw te::ConfigError("unknown grid '" + grid_name + "'");
    }
    grid = g->schedules;
  } else {
    grid = te::parse_threshold_grid(grid_text);
  }
  // Base config takes its shape from the first schedule.
  f.thresholds = te::format_thresholds(grid.front());
  const auto cfg = make_config(f);
  const auto suite = te::resolve_suite(cfg.suite, cfg.seed);
  const auto text = te::sweep_csv(te::threshold_sweep(suite, cfg, grid));
  ensure_dir(cfg.out_dir);
  te::write_text(cfg.out_dir / "sweep.csv", text);
  std::cout << text;
  return kOk;
}

int cmd_audit(const CommonFlags & f, const std::string & mtp_path, double threshold, bool write)
{
  const auto predictions = te::load_external_mtp(mtp_path);
  const auto text = te::audit_csv(te::audit(predictions, entropy_config(f), threshold));
  if (write) {
    ensure_dir(f.out);
    te::write_text(std::filesystem::path(f.out) / "audit.csv", text);
  }
  std::cout << text;
  return kOk;
}

int cmd_generate(std::size_t scenes, double straight, std::uint64_t seed, std::size_t horizon,
                 double dt, const std::string & out)
{
  const auto suite = te::gen_mixed_suite(scenes, straight, seed, horizon, dt);
  const std::filesystem::path path(out);
  if (path.has_parent_path()) {
    ensure_dir(path.parent_path());
  }
  te::save_suite(suite, path);
  return kOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Entropy-gated level-k trajectory game runner"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto * run = app.add_subcommand("run", "gated and ungated games, per-row CSV and summary");
  add_common(run, run_flags, true);

  CommonFlags profile_flags;
  auto * profile = app.add_subcommand("profile", "mean/std entropy per level");
  add_common(profile, profile_flags, true);

  CommonFlags sweep_flags;
  std::string grid_text;
  std::string grid_name;
  auto * sweep = app.add_subcommand("sweep", "one row per threshold schedule");
  add_common(sweep, sweep_flags, false);
  auto * grid_opt = sweep->add_option("--grid", grid_text, "schedules, e.g. 30/30;40/30");
  auto * grid_preset = sweep->add_option("--grid-preset", grid_name, "named grid from the catalog");
  grid_opt->excludes(grid_preset);
  sweep->require_option(1, 0);

  CommonFlags audit_flags;
  std::string mtp_path;
  double audit_threshold = 0.0;
  auto * audit = app.add_subcommand("audit", "entropy and gate verdict per agent of an MTP file");
  audit->add_option("mtp", mtp_path, "prediction file")->required();
  audit->add_option("--threshold", audit_threshold, "gate threshold")->required();
  audit->add_option("--normalization", audit_flags.normalization)
    ->check(CLI::IsMember({"unit-step-squared", "unit-step", "cumulative", "final"}));
  audit->add_option("--pairs", audit_flags.pairs)->check(CLI::IsMember({"unordered", "ordered"}));
  auto * audit_out = audit->add_option("--out", audit_flags.out, "also write DIR/audit.csv");

  std::size_t gen_scenes = 10;
  double gen_straight = 0.7;
  std::uint64_t gen_seed = 0;
  std::size_t gen_horizon = te::kDefaultHorizon;
  double gen_dt = te::kDefaultDt;
  std::string gen_out;
  auto * generate = app.add_subcommand("generate", "write a generated suite file");
  generate->add_option("--scenes", gen_scenes)->capture_default_str();
  generate->add_option("--straight", gen_straight, "straight-road fraction")->capture_default_str();
  generate->add_option("--seed", gen_seed)->capture_default_str();
  generate->add_option("--horizon", gen_horizon)->capture_default_str();
  generate->add_option("--dt", gen_dt)->capture_default_str();
  generate->add_option("--out", gen_out, "suite file")->required();

  std::string presets_file;
  auto * presets = app.add_subcommand("presets", "print the threshold preset catalog");
  presets->add_option("--preset-file", presets_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_flags);
    }
    if (profile->parsed()) {
      return cmd_profile(profile_flags);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_flags, grid_text, grid_name);
    }
    if (audit->parsed()) {
      return cmd_audit(audit_flags, mtp_path, audit_threshold, audit_out->count() > 0);
    }
    if (generate->parsed()) {
      return cmd_generate(gen_scenes, gen_straight, gen_seed, gen_horizon, gen_dt, gen_out);
    }
    if (presets->parsed()) {
      const auto catalog = presets_file.empty() ? te::builtin_presets()
                                                : te::load_presets(presets_file);
      std::cout << te::serialize_presets(catalog);
      return kOk;
    }
  } catch (const te::ConfigError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const te::ContractViolation & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kContract;
  } catch (const te::IoError & e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const te::ParseError & e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const te::SemanticError & e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kContract;
  }
  return kOk;
}
