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

#include "trajectory_entropy/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/random.hpp"

namespace trajectory_entropy
{
namespace
{

using nlohmann::json;

constexpr int kFormatVersion = 1;

// ---------------------------------------------------------------- generation

ModeTrajectory rollout_along(
  const Polyline & lane, double start_s, double speed, double accel, std::size_t horizon,
  double dt)
{
  ModeTrajectory gt;
  gt.confidence = 1.0;
  gt.points.reserve(horizon);
  double s = start_s;
  double v = speed;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double next_v = std::max(v + accel * dt, 0.0);
    s += 0.5 * (v + next_v) * dt;
    v = next_v;
    gt.points.push_back(point_at_arc_length(lane, s));
  }
  return gt;
}

bool pairwise_clear(const std::vector<ModeTrajectory> & trajs, double radius)
{
  for (std::size_t a = 0; a < trajs.size(); ++a) {
    for (std::size_t b = a + 1; b < trajs.size(); ++b) {
      for (std::size_t t = 0; t < trajs[a].points.size(); ++t) {
        if (distance(trajs[a].points[t], trajs[b].points[t]) < radius) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- json helpers

std::string join(const std::string & path, const std::string & field)
{
  return path.empty() ? field : path + "." + field;
}

const json & field(const json & obj, const std::string & name, const std::string & path)
{
  if (!obj.is_object()) {
    throw ParseError("field " + (path.empty() ? std::string("<root>") : path) +
                     ": expected an object");
  }
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError("missing field " + join(path, name));
  }
  return *it;
}

double as_real(const json & value, const std::string & path)
{
  if (!value.is_number()) {
    throw ParseError("field " + path + ": expected a number");
  }
  return value.get<double>();
}

std::int64_t as_integer(const json & value, const std::string & path)
{
  if (!value.is_number_integer()) {
    throw ParseError("field " + path + ": expected an integer");
  }
  return value.get<std::int64_t>();
}

const json & as_array(const json & value, const std::string & path)
{
  if (!value.is_array()) {
    throw ParseError("field " + path + ": expected a list");
  }
  return value;
}

Point2 as_point(const json & value, const std::string & path)
{
  if (!value.is_array() || value.size() != 2) {
    throw ParseError("field " + path + ": expected [x, y]");
  }
  return {as_real(value[0], path + "[0]"), as_real(value[1], path + "[1]")};
}

std::vector<Point2> as_points(const json & value, const std::string & path)
{
  std::vector<Point2> out;
  const auto & arr = as_array(value, path);
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(as_point(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point2> & points)
{
  json arr = json::array();
  for (const auto & p : points) {
    arr.push_back(point_json(p));
  }
  return arr;
}

void check_version(const json & doc)
{
  const auto version = as_integer(field(doc, "version", ""), "version");
  if (version != kFormatVersion) {
    throw ParseError("field version: unsupported value " + std::to_string(version));
  }
}

json parse_json(std::string_view text)
{
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read " + path.string());
  }
  return buffer.str();
}

void write_file(const std::filesystem::path & path, const std::string & text)
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

json scene_json(const Scene & scene)
{
  json doc;
  doc["version"] = kFormatVersion;
  doc["dt"] = scene.dt;
  doc["horizon"] = scene.horizon;
  json lanes = json::array();
  for (const auto & [id, line] : scene.centerlines) {
    lanes.push_back({{"id", id}, {"points", points_json(line)}});
  }
  doc["centerlines"] = std::move(lanes);
  json agents = json::array();
  for (const auto & agent : scene.agents) {
    json a;
    a["id"] = agent.id.value;
    a["position"] = point_json(agent.position);
    a["speed"] = agent.speed;
    a["heading"] = agent.heading;
    a["lane"] = agent.lane;
    if (agent.ground_truth) {
      a["ground_truth"] = points_json(agent.ground_truth->points);
    }
    agents.push_back(std::move(a));
  }
  doc["agents"] = std::move(agents);
  return doc;
}

Scene scene_from_json(const json & doc, const std::string & root)
{
  if (root.empty()) {
    check_version(doc);
  }
  Scene scene;
  scene.dt = as_real(field(doc, "dt", root), join(root, "dt"));
  const auto horizon = as_integer(field(doc, "horizon", root), join(root, "horizon"));
  if (horizon < 1) {
    throw SemanticError("field " + join(root, "horizon") + ": must be >= 1");
  }
  scene.horizon = static_cast<std::size_t>(horizon);

  const std::string lanes_path = join(root, "centerlines");
  const auto & lanes = as_array(field(doc, "centerlines", root), lanes_path);
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const std::string path = lanes_path + "[" + std::to_string(i) + "]";
    const LaneId id = as_integer(field(lanes[i], "id", path), path + ".id");
    auto points = as_points(field(lanes[i], "points", path), path + ".points");
    if (!scene.centerlines.emplace(id, std::move(points)).second) {
      throw SemanticError("field " + path + ".id: duplicate lane id " + std::to_string(id));
    }
  }

  const std::string agents_path = join(root, "agents");
  const auto & agents = as_array(field(doc, "agents", root), agents_path);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string path = agents_path + "[" + std::to_string(i) + "]";
    const auto & a = agents[i];
    AgentInit agent;
    agent.id = AgentId{as_integer(field(a, "id", path), path + ".id")};
    agent.position = as_point(field(a, "position", path), path + ".position");
    agent.speed = as_real(field(a, "speed", path), path + ".speed");
    agent.heading = as_real(field(a, "heading", path), path + ".heading");
    agent.lane = as_integer(field(a, "lane", path), path + ".lane");
    if (auto gt = a.find("ground_truth"); gt != a.end() && !gt->is_null()) {
      ModeTrajectory truth;
      truth.confidence = 1.0;
      truth.points = as_points(*gt, path + ".ground_truth");
      agent.ground_truth = std::move(truth);
    }
    scene.agents.push_back(std::move(agent));
  }
  scene.validate();
  return scene;
}

}  // namespace

// ---------------------------------------------------------------- Scene

void Scene::validate() const
{
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw SemanticError("scene dt must be positive");
  }
  if (horizon < 1) {
    throw SemanticError("scene horizon must be >= 1");
  }
  if (agents.empty()) {
    throw SemanticError("scene has no agents");
  }
  for (const auto & [id, line] : centerlines) {
    if (line.size() < 2) {
      throw SemanticError("centerline " + std::to_string(id) + " has fewer than 2 points");
    }
    for (const auto & p : line) {
      if (!is_finite(p)) {
        throw SemanticError("centerline " + std::to_string(id) + " has a non-finite point");
      }
    }
  }
  std::set<AgentId> seen;
  for (const auto & agent : agents) {
    const std::string tag = "agent " + std::to_string(agent.id.value);
    if (!seen.insert(agent.id).second) {
      throw SemanticError(tag + ": duplicate id");
    }
    if (!is_finite(agent.position) || !std::isfinite(agent.speed) ||
        !std::isfinite(agent.heading)) {
      throw SemanticError(tag + ": non-finite kinematics");
    }
    if (agent.speed < 0.0) {
      throw SemanticError(tag + ": negative speed");
    }
    if (!centerlines.contains(agent.lane)) {
      throw SemanticError(tag + ": unresolved lane " + std::to_string(agent.lane));
    }
    if (agent.ground_truth) {
      if (agent.ground_truth->points.size() != horizon) {
        throw SemanticError(tag + ": ground truth length differs from horizon");
      }
      for (const auto & p : agent.ground_truth->points) {
        if (!is_finite(p)) {
          throw SemanticError(tag + ": non-finite ground truth point");
        }
      }
    }
  }
}

const AgentInit & Scene::agent(AgentId id) const
{
  for (const auto & a : agents) {
    if (a.id == id) {
      return a;
    }
  }
  throw ContractViolation("unknown agent " + std::to_string(id.value));
}

const Polyline & Scene::lane_of(const AgentInit & agent) const
{
  auto it = centerlines.find(agent.lane);
  if (it == centerlines.end()) {
    throw ConfigError(
      "agent " + std::to_string(agent.id.value) + " has no centerline (lane " +
      std::to_string(agent.lane) + ")");
  }
  return it->second;
}

std::string to_string(Difficulty difficulty)
{
  switch (difficulty) {
    case Difficulty::kSimple:
      return "simple";
    case Difficulty::kInteractive:
      return "interactive";
    case Difficulty::kHard:
      return "hard";
  }
  return "unknown";
}

std::optional<Difficulty> parse_difficulty(std::string_view name)
{
  for (auto d : {Difficulty::kSimple, Difficulty::kInteractive, Difficulty::kHard}) {
    if (to_string(d) == name) {
      return d;
    }
  }
  return std::nullopt;
}

void ScenarioSuite::validate() const
{
  std::set<std::string> names;
  for (const auto & named : scenes) {
    if (!names.insert(named.name).second) {
      throw SemanticError("duplicate scene name '" + named.name + "'");
    }
    try {
      named.scene.validate();
    } catch (const SemanticError & e) {
      throw SemanticError("scene '" + named.name + "': " + e.what());
    }
  }
}

// ---------------------------------------------------------------- generators

Scene gen_straight_road(std::size_t n_agents, std::uint64_t seed, std::size_t horizon, double dt)
{
  if (n_agents < 1) {
    throw ConfigError("straight road needs at least one agent");
  }
  if (horizon < 1 || !(dt > 0.0)) {
    throw ConfigError("horizon must be >= 1 and dt positive");
  }
  SplitMix rng(seed);
  Scene scene;
  scene.horizon = horizon;
  scene.dt = dt;
  for (std::size_t i = 0; i < n_agents; ++i) {
    const double y = kLaneSpacing * static_cast<double>(i);
    const LaneId lane = static_cast<LaneId>(i);
    scene.centerlines[lane] = {{-100.0, y}, {0.0, y}, {1000.0, y}};

    AgentInit agent;
    agent.id = AgentId{static_cast<std::int64_t>(i)};
    agent.lane = lane;
    agent.position = {rng.uniform(0.0, 40.0), y};
    agent.speed = rng.uniform(8.0, 14.0);
    agent.heading = rng.uniform(-0.02, 0.02);
    agent.ground_truth =
      rollout_along(scene.centerlines[lane], agent.position.x + 100.0, agent.speed, 0.0,
                    horizon, dt);
    scene.agents.push_back(std::move(agent));
  }
  return scene;
}

Scene gen_intersection(std::size_t n_agents, std::uint64_t seed, std::size_t horizon, double dt)
{
  if (n_agents < 2 || n_agents > 4) {
    throw ConfigError("intersection supports 2..4 agents, got " + std::to_string(n_agents));
  }
  if (horizon < 1 || !(dt > 0.0)) {
    throw ConfigError("horizon must be >= 1 and dt positive");
  }
  SplitMix rng(seed);
  Scene scene;
  scene.horizon = horizon;
  scene.dt = dt;

  // Directions spread over a half-turn so no two lanes are collinear and no
  // departing agent drives into another agent's approach arm.
  const double base = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double spread = std::numbers::pi / static_cast<double>(n_agents);
  // Common arrival time at the conflict point, snapped to the time grid.
  const double arrival = dt * std::round(rng.uniform(1.6, 2.6) / dt);

  std::vector<double> distances;
  for (std::size_t i = 0; i < n_agents; ++i) {
    const double theta = base + spread * static_cast<double>(i);
    const Point2 dir{std::cos(theta), std::sin(theta)};
    const double speed = rng.uniform(8.0, 12.0);
    const double dist = speed * arrival;
    const LaneId lane = static_cast<LaneId>(i);
    scene.centerlines[lane] = {(-(dist + 100.0)) * dir, {0.0, 0.0}, 300.0 * dir};

    AgentInit agent;
    agent.id = AgentId{static_cast<std::int64_t>(i)};
    agent.lane = lane;
    agent.position = (-dist) * dir;
    agent.speed = speed;
    agent.heading = std::atan2(dir.y, dir.x);
    scene.agents.push_back(std::move(agent));
    distances.push_back(dist);
  }

  // Agent 0 keeps its speed; agent k passes the crossing `gap` after agent k-1.
  // The gap grows until all ground truths are mutually clear.
  for (double gap = kIntersectionTimeGap;; gap += 0.25) {
    std::vector<ModeTrajectory> truths;
    for (std::size_t i = 0; i < n_agents; ++i) {
      const auto & agent = scene.agents[i];
      const double pass_time = arrival + gap * static_cast<double>(i);
      const double speed = distances[i] / pass_time;
      truths.push_back(rollout_along(
        scene.centerlines[agent.lane], 100.0, speed, 0.0, horizon, dt));
    }
    if (pairwise_clear(truths, kGroundTruthClearance) || gap > 20.0) {
      for (std::size_t i = 0; i < n_agents; ++i) {
        scene.agents[i].ground_truth = std::move(truths[i]);
      }
      break;
    }
  }
  return scene;
}

ScenarioSuite gen_mixed_suite(
  std::size_t n_scenes, double straight_fraction, std::uint64_t seed, std::size_t horizon,
  double dt)
{
  if (!(straight_fraction >= 0.0 && straight_fraction <= 1.0)) {
    throw ConfigError("straight fraction must lie in [0, 1]");
  }
  ScenarioSuite suite;
  suite.seed = seed;
  const auto n_straight =
    static_cast<std::size_t>(std::llround(straight_fraction * static_cast<double>(n_scenes)));
  for (std::size_t i = 0; i < n_scenes; ++i) {
    const std::uint64_t scene_seed = derive_seed(seed, i);
    SplitMix pick(scene_seed);
    NamedScene named;
    char name[48];
    if (i < n_straight) {
      const auto n_agents = static_cast<std::size_t>(pick.uniform_int(1, 4));
      std::snprintf(name, sizeof(name), "straight_%03zu", i);
      named.difficulty = Difficulty::kSimple;
      named.scene = gen_straight_road(n_agents, scene_seed, horizon, dt);
    } else {
      const auto n_agents = static_cast<std::size_t>(pick.uniform_int(2, 4));
      std::snprintf(name, sizeof(name), "intersection_%03zu", i);
      named.difficulty = n_agents == 2 ? Difficulty::kInteractive : Difficulty::kHard;
      named.scene = gen_intersection(n_agents, scene_seed, horizon, dt);
    }
    named.name = name;
    suite.scenes.push_back(std::move(named));
  }
  return suite;
}

// ---------------------------------------------------------------- I/O

Scene parse_scene(std::string_view text) { return scene_from_json(parse_json(text), ""); }

std::string serialize_scene(const Scene & scene) { return scene_json(scene).dump(1) + "\n"; }

Scene load_scene(const std::filesystem::path & path) { return parse_scene(read_file(path)); }

void save_scene(const Scene & scene, const std::filesystem::path & path)
{
  write_file(path, serialize_scene(scene));
}

ScenarioSuite load_suite(const std::filesystem::path & path)
{
  const json doc = parse_json(read_file(path));
  check_version(doc);
  ScenarioSuite suite;
  const auto & seed = field(doc, "seed", "");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ParseError("field seed: expected an integer");
  }
  suite.seed = seed.get<std::uint64_t>();
  const auto & scenes = as_array(field(doc, "scenes", ""), "scenes");
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const std::string path = "scenes[" + std::to_string(i) + "]";
    NamedScene named;
    const auto & name = field(scenes[i], "name", path);
    if (!name.is_string()) {
      throw ParseError("field " + path + ".name: expected a string");
    }
    named.name = name.get<std::string>();
    const auto & difficulty = field(scenes[i], "difficulty", path);
    if (!difficulty.is_string() || !parse_difficulty(difficulty.get<std::string>())) {
      throw ParseError("field " + path + ".difficulty: expected simple|interactive|hard");
    }
    named.difficulty = *parse_difficulty(difficulty.get<std::string>());
    named.scene = scene_from_json(field(scenes[i], "scene", path), path + ".scene");
    suite.scenes.push_back(std::move(named));
  }
  suite.validate();
  return suite;
}

void save_suite(const ScenarioSuite & suite, const std::filesystem::path & path)
{
  json doc;
  doc["version"] = kFormatVersion;
  doc["seed"] = suite.seed;
  json scenes = json::array();
  for (const auto & named : suite.scenes) {
    json s = scene_json(named.scene);
    s.erase("version");
    scenes.push_back(
      {{"name", named.name}, {"difficulty", to_string(named.difficulty)}, {"scene", std::move(s)}});
  }
  doc["scenes"] = std::move(scenes);
  write_file(path, doc.dump(1) + "\n");
}

std::map<AgentId, MtpResult> parse_external_mtp(std::string_view text)
{
  const json doc = parse_json(text);
  check_version(doc);
  const double dt = as_real(field(doc, "dt", ""), "dt");
  const auto & agents = as_array(field(doc, "agents", ""), "agents");
  std::map<AgentId, MtpResult> out;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "agents[" + std::to_string(i) + "]";
    const AgentId id{as_integer(field(agents[i], "id", path), path + ".id")};
    MtpResult result;
    result.dt = dt;
    result.origin = as_point(field(agents[i], "origin", path), path + ".origin");
    const auto & modes = as_array(field(agents[i], "modes", path), path + ".modes");
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const std::string mpath = path + ".modes[" + std::to_string(j) + "]";
      ModeTrajectory mode;
      mode.confidence = as_real(field(modes[j], "confidence", mpath), mpath + ".confidence");
      mode.points = as_points(field(modes[j], "points", mpath), mpath + ".points");
      result.modes.push_back(std::move(mode));
    }
    const auto outcome = validate_mtp(result);
    if (!outcome.ok()) {
      problems.push_back("agent " + std::to_string(id.value) + ": " + outcome.summary());
    }
    if (!out.emplace(id, std::move(result)).second) {
      problems.push_back("agent " + std::to_string(id.value) + ": duplicate id");
    }
  }
  if (!problems.empty()) {
    std::string message = "invalid predictions";
    for (const auto & p : problems) {
      message += "\n  " + p;
    }
    throw SemanticError(message);
  }
  return out;
}

std::map<AgentId, MtpResult> load_external_mtp(const std::filesystem::path & path)
{
  return parse_external_mtp(read_file(path));
}

std::string serialize_external_mtp(const std::map<AgentId, MtpResult> & results)
{
  json doc;
  doc["version"] = kFormatVersion;
  doc["dt"] = results.empty() ? kDefaultDt : results.begin()->second.dt;
  json agents = json::array();
  for (const auto & [id, result] : results) {
    json modes = json::array();
    for (const auto & mode : result.modes) {
      modes.push_back({{"confidence", mode.confidence}, {"points", points_json(mode.points)}});
    }
    agents.push_back(
      {{"id", id.value}, {"origin", point_json(result.origin)}, {"modes", std::move(modes)}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump(1) + "\n";
}

}  // namespace trajectory_entropy
