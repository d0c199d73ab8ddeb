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

#include "trajectory_entropy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "trajectory_entropy/errors.hpp"

namespace trajectory_entropy
{
namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string_view text)
{
  const auto first = text.find_first_not_of(" \t\n\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\n\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, std::string_view separators)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find_first_of(separators, start);
    const auto piece = text.substr(start, end == std::string_view::npos ? end : end - start);
    out.push_back(trim(piece));
    if (end == std::string_view::npos) {
      break;
    }
    start = end + 1;
  }
  return out;
}

double parse_real(const std::string & token, const std::string & what)
{
  if (token == "inf" || token == "+inf") {
    return kInf;
  }
  if (token == "-inf") {
    return -kInf;
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size() || std::isnan(value)) {
      throw std::invalid_argument(token);
    }
    return value;
  } catch (const std::exception &) {
    throw ConfigError("invalid " + what + " '" + token + "'");
  }
}

nlohmann::json catalog_json(const PresetCatalog & catalog)
{
  nlohmann::json doc;
  doc["version"] = 1;
  auto & presets = doc["presets"] = nlohmann::json::array();
  for (const auto & p : catalog.presets) {
    presets.push_back({{"name", p.name}, {"source", p.source}, {"thresholds", p.thresholds}});
  }
  auto & grids = doc["grids"] = nlohmann::json::array();
  for (const auto & g : catalog.grids) {
    grids.push_back({{"name", g.name}, {"source", g.source}, {"schedules", g.schedules}});
  }
  return doc;
}

PresetCatalog make_builtin_presets()
{
  PresetCatalog catalog;
  catalog.presets = {
    {"womd-prediction", "Waymo interaction prediction, 8 s horizon, 4 levels", {4.3, 4.2, 4.1}},
    {"womd-open-loop", "Waymo open-loop planning, 8 s horizon, 5 levels", {0.8, 0.75, 0.7, 0.65}},
    {"nuplan-prediction", "nuPlan prediction, 8 s horizon, 3 levels", {40.0, 30.0}},
    {"nuplan-planning", "nuPlan planning, 8 s horizon, 3 levels", {30.0, 28.0}},
    {"synthetic", "calibrated on generated suites, 6 s horizon (T=30, dt=0.2), 3 levels",
     {220.0, 60.0}},
  };
  catalog.grids = {
    {"nuplan-threshold-ablation", "nuPlan Test14-hard threshold ablation, constant then decreasing",
     {{30.0, 30.0}, {33.0, 33.0}, {35.0, 35.0}, {30.0, 25.0}, {35.0, 33.0}, {40.0, 30.0}}},
  };
  return catalog;
}

// Per-scene work item executed by the pool in run_suite.
SceneOutcome play_scene(const NamedScene & named, const RunConfig & config)
{
  FanPolicyParams params = config.policy;
  params.seed = config.seed;
  const FanPolicy policy(params);
  SceneOutcome outcome;
  outcome.name = named.name;
  outcome.difficulty = named.difficulty;
  outcome.scene = named.scene;
  outcome.gated = run_level_k_game(named.scene, policy, config.gate(), config.entropy);
  outcome.ungated = run_ungated(named.scene, policy, config.levels, config.entropy);
  return outcome;
}

struct MetricAccumulator
{
  double ade{0.0};
  double fde{0.0};
  std::size_t misses{0};
  std::size_t collisions{0};
  std::size_t count{0};

  void add(const EvalMetrics & m)
  {
    ade += m.min_ade;
    fde += m.min_fde;
    misses += m.miss ? 1 : 0;
    collisions += m.collision ? 1 : 0;
    ++count;
  }
  double mean(double sum) const { return count ? sum / static_cast<double>(count) : 0.0; }
  double rate(std::size_t n) const
  {
    return count ? static_cast<double>(n) / static_cast<double>(count) : 0.0;
  }
};

double reduction_pct(std::size_t gated, std::size_t ungated)
{
  return ungated ? 100.0 * (1.0 - static_cast<double>(gated) / static_cast<double>(ungated))
                 : 0.0;
}

}  // namespace

// ---------------------------------------------------------------- presets

const ThresholdPreset * PresetCatalog::find_preset(std::string_view name) const
{
  for (const auto & p : presets) {
    if (p.name == name) {
      return &p;
    }
  }
  return nullptr;
}

const ThresholdGrid * PresetCatalog::find_grid(std::string_view name) const
{
  for (const auto & g : grids) {
    if (g.name == name) {
      return &g;
    }
  }
  return nullptr;
}

const PresetCatalog & builtin_presets()
{
  static const PresetCatalog catalog = make_builtin_presets();
  return catalog;
}

PresetCatalog load_presets(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    PresetCatalog catalog;
    for (const auto & p : doc.at("presets")) {
      catalog.presets.push_back({p.at("name").get<std::string>(), p.at("source").get<std::string>(),
                                 p.at("thresholds").get<std::vector<double>>()});
    }
    for (const auto & g : doc.at("grids")) {
      catalog.grids.push_back({g.at("name").get<std::string>(), g.at("source").get<std::string>(),
                               g.at("schedules").get<std::vector<std::vector<double>>>()});
    }
    return catalog;
  } catch (const nlohmann::json::exception & e) {
    throw ParseError("preset file " + path.string() + ": " + e.what());
  }
}

std::string serialize_presets(const PresetCatalog & catalog)
{
  return catalog_json(catalog).dump(2) + "\n";
}

// ---------------------------------------------------------------- configuration

GateConfig RunConfig::gate() const
{
  if (!gate_enabled) {
    return GateConfig::disabled(levels);
  }
  GateConfig gate;
  gate.levels = levels;
  gate.thresholds = thresholds;
  return gate;
}

void RunConfig::validate() const
{
  if (levels < 1) {
    throw ConfigError("--levels must be >= 1");
  }
  if (gate_enabled && thresholds.size() != levels - 1) {
    throw ConfigError(
      "--levels " + std::to_string(levels) + " needs " + std::to_string(levels - 1) +
      " thresholds, got " + std::to_string(thresholds.size()));
  }
  if (jobs < 1) {
    throw ConfigError("--jobs must be >= 1");
  }
  if (!(miss_threshold >= 0.0) || !(collision_radius > 0.0)) {
    throw ConfigError("miss threshold must be >= 0 and collision radius > 0");
  }
  gate().validate();
  entropy.validate();
  policy.validate();
}

std::vector<double> parse_threshold_list(std::string_view text)
{
  std::vector<double> out;
  if (trim(text).empty()) {
    return out;
  }
  for (const auto & token : split(text, ",/")) {
    out.push_back(parse_real(token, "threshold"));
  }
  return out;
}

std::vector<std::vector<double>> parse_threshold_grid(std::string_view text)
{
  std::vector<std::vector<double>> grid;
  for (const auto & schedule : split(text, ";")) {
    if (!schedule.empty()) {
      grid.push_back(parse_threshold_list(schedule));
    }
  }
  if (grid.empty()) {
    throw ConfigError("threshold grid is empty");
  }
  return grid;
}

std::string format_thresholds(const std::vector<double> & thresholds)
{
  std::string out;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    out += (i ? "/" : "") + format_real(thresholds[i]);
  }
  return out.empty() ? "none" : out;
}

ScenarioSuite resolve_suite(const std::string & spec, std::uint64_t seed)
{
  static constexpr std::string_view kPrefix = "generate:";
  if (!spec.starts_with(kPrefix)) {
    return load_suite(spec);
  }
  std::size_t scenes = 10;
  double straight = 0.7;
  std::size_t horizon = kDefaultHorizon;
  double dt = kDefaultDt;
  for (const auto & item : split(std::string_view(spec).substr(kPrefix.size()), ",")) {
    if (item.empty()) {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("suite generator item '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const double value = parse_real(item.substr(eq + 1), "suite generator value");
    if (key == "scenes") {
      scenes = static_cast<std::size_t>(value);
    } else if (key == "straight") {
      straight = value;
    } else if (key == "horizon") {
      horizon = static_cast<std::size_t>(value);
    } else if (key == "dt") {
      dt = value;
    } else {
      throw ConfigError("unknown suite generator key '" + key + "'");
    }
  }
  return gen_mixed_suite(scenes, straight, seed, horizon, dt);
}

// ---------------------------------------------------------------- execution

std::vector<SceneOutcome> run_suite(const ScenarioSuite & suite, const RunConfig & config)
{
  config.validate();
  std::vector<SceneOutcome> outcomes(suite.scenes.size());
  const std::size_t workers = std::min(config.jobs, std::max<std::size_t>(suite.scenes.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < suite.scenes.size(); ++i) {
      outcomes[i] = play_scene(suite.scenes[i], config);
    }
    return outcomes;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < suite.scenes.size(); i = next++) {
          try {
            outcomes[i] = play_scene(suite.scenes[i], config);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return outcomes;
}

std::optional<EvalMetrics> evaluate_agent(
  const Scene & scene, const GameTrace & trace, std::size_t level, AgentId agent,
  double miss_threshold, double collision_radius)
{
  const AgentInit & init = scene.agent(agent);
  if (!init.ground_truth) {
    return std::nullopt;
  }
  const MtpResult & pred = trace.at(level, agent).result;
  EvalMetrics m;
  m.min_ade = min_ade(pred, *init.ground_truth);
  m.min_fde = min_fde(pred, *init.ground_truth);
  m.miss = m.min_fde > miss_threshold;
  const auto & plan = pred.modes[best_mode_index(pred)];
  for (const auto & [other_id, record] : trace.levels[level]) {
    if (other_id == agent) {
      continue;
    }
    const auto & other_plan = record.result.modes[best_mode_index(record.result)];
    if (collision(plan, other_plan, collision_radius)) {
      m.collision = true;
      break;
    }
  }
  return m;
}

SuiteSummary summarize(const std::vector<SceneOutcome> & outcomes, const RunConfig & config)
{
  SuiteSummary s;
  MetricAccumulator gated;
  MetricAccumulator ungated;
  for (const auto & o : outcomes) {
    ++s.scenes;
    s.evals_gated += o.gated.policy_eval_count;
    s.evals_ungated += o.ungated.policy_eval_count;
    const std::size_t last = o.gated.level_count() - 1;
    for (const auto & agent : o.scene.agents) {
      ++s.agents;
      if (!o.gated.at(last, agent.id).active_before_level) {
        ++s.frozen_agents;
      }
      if (auto m = evaluate_agent(
            o.scene, o.gated, last, agent.id, config.miss_threshold, config.collision_radius)) {
        gated.add(*m);
      }
      if (auto m = evaluate_agent(
            o.scene, o.ungated, last, agent.id, config.miss_threshold, config.collision_radius)) {
        ungated.add(*m);
      }
    }
  }
  s.eval_reduction_pct = reduction_pct(s.evals_gated, s.evals_ungated);
  s.min_ade_gated = gated.mean(gated.ade);
  s.min_ade_ungated = ungated.mean(ungated.ade);
  s.min_fde_gated = gated.mean(gated.fde);
  s.min_fde_ungated = ungated.mean(ungated.fde);
  s.miss_rate_gated = gated.rate(gated.misses);
  s.miss_rate_ungated = ungated.rate(ungated.misses);
  s.collision_rate_gated = gated.rate(gated.collisions);
  s.collision_rate_ungated = ungated.rate(ungated.collisions);
  return s;
}

std::vector<LevelProfile> entropy_profile(const std::vector<SceneOutcome> & outcomes)
{
  std::vector<LevelProfile> rows;
  if (outcomes.empty()) {
    return rows;
  }
  const std::size_t levels = outcomes.front().gated.level_count();
  for (std::size_t k = 0; k < levels; ++k) {
    double sum_g = 0.0, sq_g = 0.0, sum_u = 0.0, sq_u = 0.0;
    std::size_t n = 0, active = 0;
    for (const auto & o : outcomes) {
      for (const auto & [id, record] : o.gated.levels[k]) {
        const double eg = record.entropy.value_or(0.0);
        const double eu = o.ungated.levels[k].at(id).entropy.value_or(0.0);
        sum_g += eg;
        sq_g += eg * eg;
        sum_u += eu;
        sq_u += eu * eu;
        active += record.active_before_level ? 1 : 0;
        ++n;
      }
    }
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    const double mg = sum_g / nn;
    const double mu = sum_u / nn;
    rows.push_back({k, mg, std::sqrt(std::max(sq_g / nn - mg * mg, 0.0)), mu,
                    std::sqrt(std::max(sq_u / nn - mu * mu, 0.0)),
                    static_cast<double>(active) / nn});
  }
  return rows;
}

std::vector<SweepRow> threshold_sweep(
  const ScenarioSuite & suite, const RunConfig & base,
  const std::vector<std::vector<double>> & grid)
{
  if (grid.empty()) {
    throw ConfigError("threshold grid is empty");
  }
  std::vector<SweepRow> rows;
  for (const auto & schedule : grid) {
    RunConfig config = base;
    config.gate_enabled = true;
    config.thresholds = schedule;
    const auto outcomes = run_suite(suite, config);
    const auto summary = summarize(outcomes, config);
    rows.push_back({schedule, summary.min_ade_gated, summary.miss_rate_gated,
                    summary.eval_reduction_pct, summary.evals_gated, summary.evals_ungated});
  }
  return rows;
}

std::vector<AuditRow> audit(
  const std::map<AgentId, MtpResult> & predictions, const EntropyConfig & config,
  double threshold)
{
  if (std::isnan(threshold)) {
    throw ConfigError("threshold is NaN");
  }
  std::vector<AuditRow> rows;
  for (const auto & [id, result] : predictions) {
    const double e = trajectory_entropy(result, config).value;
    rows.push_back({id, e, !(e < threshold)});
  }
  return rows;
}

// ---------------------------------------------------------------- CSV output

std::string format_real(double value)
{
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (std::isnan(value)) {
    return "nan";
  }
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string run_csv(const std::vector<SceneOutcome> & outcomes, const RunConfig & config)
{
  std::ostringstream out;
  out << "scene,agent,level,entropy,active,min_ade,min_fde,miss,collision,eval_count_gated,"
         "eval_count_ungated\n";
  for (const auto & o : outcomes) {
    for (const auto & agent : o.scene.agents) {
      for (std::size_t k = 0; k < o.gated.level_count(); ++k) {
        const auto & record = o.gated.at(k, agent.id);
        out << o.name << ',' << agent.id.value << ',' << k << ','
            << (record.entropy ? format_real(*record.entropy) : "") << ','
            << (record.active_before_level ? 1 : 0) << ',';
        if (auto m = evaluate_agent(
              o.scene, o.gated, k, agent.id, config.miss_threshold, config.collision_radius)) {
          out << format_real(m->min_ade) << ',' << format_real(m->min_fde) << ','
              << (m->miss ? 1 : 0) << ',' << (m->collision ? 1 : 0) << ',';
        } else {
          out << ",,,,";
        }
        out << (record.evaluated ? 1 : 0) << ','
            << (o.ungated.at(k, agent.id).evaluated ? 1 : 0) << '\n';
      }
    }
  }
  return out.str();
}

std::string summary_csv(const SuiteSummary & s, const RunConfig & config)
{
  std::ostringstream out;
  out << "key,value\n";
  out << "scenes," << s.scenes << '\n';
  out << "agents," << s.agents << '\n';
  out << "levels," << config.levels << '\n';
  out << "thresholds," << (config.gate_enabled ? format_thresholds(config.thresholds) : "off")
      << '\n';
  out << "normalization," << to_string(config.entropy.variant) << '\n';
  out << "pairs," << to_string(config.entropy.pairs) << '\n';
  out << "seed," << config.seed << '\n';
  out << "evals_gated," << s.evals_gated << '\n';
  out << "evals_ungated," << s.evals_ungated << '\n';
  out << "eval_reduction_pct," << format_real(s.eval_reduction_pct) << '\n';
  out << "frozen_agents," << s.frozen_agents << '\n';
  out << "min_ade_gated," << format_real(s.min_ade_gated) << '\n';
  out << "min_ade_ungated," << format_real(s.min_ade_ungated) << '\n';
  out << "min_fde_gated," << format_real(s.min_fde_gated) << '\n';
  out << "min_fde_ungated," << format_real(s.min_fde_ungated) << '\n';
  out << "miss_rate_gated," << format_real(s.miss_rate_gated) << '\n';
  out << "miss_rate_ungated," << format_real(s.miss_rate_ungated) << '\n';
  out << "collision_rate_gated," << format_real(s.collision_rate_gated) << '\n';
  out << "collision_rate_ungated," << format_real(s.collision_rate_ungated) << '\n';
  return out.str();
}

std::string profile_csv(const std::vector<LevelProfile> & rows)
{
  std::ostringstream out;
  out << "level,mean_entropy_gated,std_entropy_gated,mean_entropy_ungated,std_entropy_ungated,"
         "active_fraction_gated\n";
  for (const auto & r : rows) {
    out << r.level << ',' << format_real(r.mean_gated) << ',' << format_real(r.std_gated) << ','
        << format_real(r.mean_ungated) << ',' << format_real(r.std_ungated) << ','
        << format_real(r.active_fraction_gated) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow> & rows)
{
  std::ostringstream out;
  out << "thresholds,min_ade,miss_rate,eval_reduction_pct,evals_gated,evals_ungated\n";
  for (const auto & r : rows) {
    out << format_thresholds(r.thresholds) << ',' << format_real(r.min_ade) << ','
        << format_real(r.miss_rate) << ',' << format_real(r.eval_reduction_pct) << ','
        << r.evals_gated << ',' << r.evals_ungated << '\n';
  }
  return out.str();
}

std::string audit_csv(const std::vector<AuditRow> & rows)
{
  std::ostringstream out;
  out << "agent,entropy,status\n";
  for (const auto & r : rows) {
    out << r.agent.value << ',' << format_real(r.entropy) << ','
        << (r.active ? "active" : "inactive") << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
}

}  // namespace trajectory_entropy
