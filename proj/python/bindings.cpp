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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "trajectory_entropy/errors.hpp"
#include "trajectory_entropy/experiment.hpp"

namespace py = pybind11;
namespace te = trajectory_entropy;

namespace
{

te::Point2 point_from_tuple(const py::tuple & t)
{
  if (t.size() != 2) {
    throw py::value_error("a point needs exactly two coordinates");
  }
  return {t[0].cast<double>(), t[1].cast<double>()};
}

void bind_types(py::module_ & m)
{
  py::class_<te::Point2>(m, "Point2")
    .def(py::init<>())
    .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
    .def(py::init(&point_from_tuple))
    .def_readwrite("x", &te::Point2::x)
    .def_readwrite("y", &te::Point2::y)
    .def(py::self == py::self)
    .def("__iter__", [](const te::Point2 & p) { return py::iter(py::make_tuple(p.x, p.y)); })
    .def("__repr__", [](const te::Point2 & p) {
      std::ostringstream os;
      os << "Point2(" << p.x << ", " << p.y << ")";
      return os.str();
    });
  py::implicitly_convertible<py::tuple, te::Point2>();

  py::class_<te::AgentId>(m, "AgentId")
    .def(py::init<std::int64_t>(), py::arg("value"))
    .def_readwrite("value", &te::AgentId::value)
    .def(py::self == py::self)
    .def(py::self < py::self)
    .def("__hash__", [](const te::AgentId & a) { return std::hash<std::int64_t>{}(a.value); })
    .def("__int__", [](const te::AgentId & a) { return a.value; })
    .def("__repr__", [](const te::AgentId & a) { return "AgentId(" + std::to_string(a.value) + ")"; });
  py::implicitly_convertible<py::int_, te::AgentId>();

  py::class_<te::ModeTrajectory>(m, "ModeTrajectory")
    .def(py::init<>())
    .def(py::init([](std::vector<te::Point2> points, double confidence) {
           return te::ModeTrajectory{std::move(points), confidence};
         }),
         py::arg("points"), py::arg("confidence"))
    .def_readwrite("points", &te::ModeTrajectory::points)
    .def_readwrite("confidence", &te::ModeTrajectory::confidence)
    .def_property_readonly("horizon", &te::ModeTrajectory::horizon)
    .def(py::self == py::self);

  py::class_<te::MtpResult>(m, "MtpResult")
    .def(py::init<>())
    .def(py::init([](te::Point2 origin, std::vector<te::ModeTrajectory> modes, double dt) {
           return te::MtpResult{origin, std::move(modes), dt};
         }),
         py::arg("origin"), py::arg("modes"), py::arg("dt") = 0.1)
    .def_readwrite("origin", &te::MtpResult::origin)
    .def_readwrite("modes", &te::MtpResult::modes)
    .def_readwrite("dt", &te::MtpResult::dt)
    .def_property_readonly("mode_count", &te::MtpResult::mode_count)
    .def_property_readonly("horizon", &te::MtpResult::horizon)
    .def(py::self == py::self);

  m.def("validate_mtp", [](const te::MtpResult & r) {
    std::vector<std::string> out;
    for (const auto & v : te::validate_mtp(r).violations) {
      out.push_back(te::to_string(v.kind) + ": " + v.detail);
    }
    return out;
  }, "List of violation descriptions; empty when the result is valid.");
}

void bind_entropy(py::module_ & m)
{
  py::enum_<te::NormalizationVariant>(m, "NormalizationVariant")
    .value("UNIT_STEP_SQUARED", te::NormalizationVariant::kUnitStepSquared)
    .value("UNIT_STEP_LINEAR", te::NormalizationVariant::kUnitStepLinear)
    .value("CUMULATIVE_AT_STEP", te::NormalizationVariant::kCumulativeAtStep)
    .value("FINAL_LENGTH", te::NormalizationVariant::kFinalLength);

  py::enum_<te::PairConvention>(m, "PairConvention")
    .value("UNORDERED", te::PairConvention::kUnordered)
    .value("ORDERED", te::PairConvention::kOrdered);

  py::class_<te::EntropyConfig>(m, "EntropyConfig")
    .def(py::init([](te::NormalizationVariant variant, double epsilon, te::PairConvention pairs) {
           return te::EntropyConfig{variant, epsilon, pairs};
         }),
         py::arg("variant") = te::NormalizationVariant::kUnitStepSquared,
         py::arg("epsilon") = 1e-9, py::arg("pairs") = te::PairConvention::kUnordered)
    .def_readwrite("variant", &te::EntropyConfig::variant)
    .def_readwrite("epsilon", &te::EntropyConfig::epsilon)
    .def_readwrite("pairs", &te::EntropyConfig::pairs);

  m.def("trajectory_entropy",
        [](const te::MtpResult & r, const te::EntropyConfig & c) {
          return te::trajectory_entropy(r, c).value;
        },
        py::arg("mtp"), py::arg("config") = te::EntropyConfig{});
  m.def("normalization_factor", &te::normalization_factor, py::arg("mtp"), py::arg("t"),
        py::arg("variant") = te::NormalizationVariant::kUnitStepSquared);
}

void bind_scenarios(py::module_ & m)
{
  py::class_<te::AgentInit>(m, "AgentInit")
    .def(py::init<>())
    .def_readwrite("id", &te::AgentInit::id)
    .def_readwrite("position", &te::AgentInit::position)
    .def_readwrite("speed", &te::AgentInit::speed)
    .def_readwrite("heading", &te::AgentInit::heading)
    .def_readwrite("lane", &te::AgentInit::lane)
    .def_readwrite("ground_truth", &te::AgentInit::ground_truth);

  py::class_<te::Scene>(m, "Scene")
    .def(py::init<>())
    .def_readwrite("centerlines", &te::Scene::centerlines)
    .def_readwrite("agents", &te::Scene::agents)
    .def_readwrite("horizon", &te::Scene::horizon)
    .def_readwrite("dt", &te::Scene::dt)
    .def("validate", &te::Scene::validate)
    .def(py::self == py::self);

  py::enum_<te::Difficulty>(m, "Difficulty")
    .value("SIMPLE", te::Difficulty::kSimple)
    .value("INTERACTIVE", te::Difficulty::kInteractive)
    .value("HARD", te::Difficulty::kHard);

  py::class_<te::NamedScene>(m, "NamedScene")
    .def_readonly("name", &te::NamedScene::name)
    .def_readonly("difficulty", &te::NamedScene::difficulty)
    .def_readonly("scene", &te::NamedScene::scene);

  py::class_<te::ScenarioSuite>(m, "ScenarioSuite")
    .def_readonly("scenes", &te::ScenarioSuite::scenes)
    .def_readonly("seed", &te::ScenarioSuite::seed)
    .def("__len__", [](const te::ScenarioSuite & s) { return s.scenes.size(); })
    .def(py::self == py::self);

  m.def("gen_straight_road", &te::gen_straight_road, py::arg("n_agents"), py::arg("seed"),
        py::arg("horizon") = te::kDefaultHorizon, py::arg("dt") = te::kDefaultDt);
  m.def("gen_intersection", &te::gen_intersection, py::arg("n_agents"), py::arg("seed"),
        py::arg("horizon") = te::kDefaultHorizon, py::arg("dt") = te::kDefaultDt);
  m.def("gen_mixed_suite", &te::gen_mixed_suite, py::arg("n_scenes"),
        py::arg("straight_fraction") = 0.7, py::arg("seed") = 0,
        py::arg("horizon") = te::kDefaultHorizon, py::arg("dt") = te::kDefaultDt);

  m.def("load_scene", &te::load_scene, py::arg("path"));
  m.def("save_scene", &te::save_scene, py::arg("scene"), py::arg("path"));
  m.def("parse_scene", &te::parse_scene, py::arg("text"));
  m.def("serialize_scene", &te::serialize_scene, py::arg("scene"));
  m.def("load_suite", &te::load_suite, py::arg("path"));
  m.def("save_suite", &te::save_suite, py::arg("suite"), py::arg("path"));
  m.def("load_external_mtp", &te::load_external_mtp, py::arg("path"));
  m.def("parse_external_mtp", &te::parse_external_mtp, py::arg("text"));
  m.def("serialize_external_mtp", &te::serialize_external_mtp, py::arg("results"));
}

void bind_game(py::module_ & m)
{
  py::class_<te::FanPolicyParams>(m, "FanPolicyParams")
    .def(py::init<>())
    .def_readwrite("mode_count", &te::FanPolicyParams::mode_count)
    .def_readwrite("heading_offsets", &te::FanPolicyParams::heading_offsets)
    .def_readwrite("speed_scalings", &te::FanPolicyParams::speed_scalings)
    .def_readwrite("confidence_temperature", &te::FanPolicyParams::confidence_temperature)
    .def_readwrite("contraction_rate", &te::FanPolicyParams::contraction_rate)
    .def_readwrite("conflict_time_gap", &te::FanPolicyParams::conflict_time_gap)
    .def_readwrite("conflict_radius", &te::FanPolicyParams::conflict_radius)
    .def_readwrite("lane_adherence", &te::FanPolicyParams::lane_adherence)
    .def_readwrite("speed_jitter", &te::FanPolicyParams::speed_jitter)
    .def_readwrite("seed", &te::FanPolicyParams::seed)
    .def("validate", &te::FanPolicyParams::validate);

  py::class_<te::Policy>(m, "Policy");
  py::class_<te::FanPolicy, te::Policy>(m, "FanPolicy")
    .def(py::init<te::FanPolicyParams>(), py::arg("params") = te::FanPolicyParams{})
    .def("level0", &te::FanPolicy::level0, py::arg("scene"), py::arg("agent"))
    .def("refine", &te::FanPolicy::refine, py::arg("scene"), py::arg("agent"),
         py::arg("own_previous"), py::arg("others"), py::arg("level"));

  py::class_<te::GateConfig>(m, "GateConfig")
    .def(py::init(&te::GateConfig::from_thresholds), py::arg("thresholds"))
    .def_static("disabled", &te::GateConfig::disabled, py::arg("levels"))
    .def_static("uniform", &te::GateConfig::uniform, py::arg("levels"), py::arg("threshold"))
    .def_readonly("thresholds", &te::GateConfig::thresholds)
    .def_readonly("levels", &te::GateConfig::levels)
    .def("schedule_warnings", &te::GateConfig::schedule_warnings);

  py::class_<te::AgentLevelRecord>(m, "AgentLevelRecord")
    .def_readonly("result", &te::AgentLevelRecord::result)
    .def_readonly("entropy", &te::AgentLevelRecord::entropy)
    .def_readonly("active_before_level", &te::AgentLevelRecord::active_before_level)
    .def_readonly("evaluated", &te::AgentLevelRecord::evaluated);

  py::class_<te::GateDecision>(m, "GateDecision")
    .def_readonly("level", &te::GateDecision::level)
    .def_readonly("agent", &te::GateDecision::agent)
    .def_readonly("entropy", &te::GateDecision::entropy)
    .def_readonly("threshold", &te::GateDecision::threshold)
    .def_readonly("frozen", &te::GateDecision::frozen);

  py::class_<te::GameTrace>(m, "GameTrace")
    .def_readonly("levels", &te::GameTrace::levels)
    .def_readonly("policy_eval_count", &te::GameTrace::policy_eval_count)
    .def_readonly("gate_log", &te::GameTrace::gate_log)
    .def("final_result", &te::GameTrace::final_result, py::arg("agent"));

  m.def("run_level_k_game", &te::run_level_k_game, py::arg("scene"), py::arg("policy"),
        py::arg("gate"), py::arg("entropy_config") = te::EntropyConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("run_ungated", &te::run_ungated, py::arg("scene"), py::arg("policy"), py::arg("levels"),
        py::arg("entropy_config") = te::EntropyConfig{},
        py::call_guard<py::gil_scoped_release>());
}

void bind_metrics(py::module_ & m)
{
  m.def("ade", &te::ade, py::arg("mode"), py::arg("gt"));
  m.def("fde", &te::fde, py::arg("mode"), py::arg("gt"));
  m.def("min_ade", &te::min_ade, py::arg("pred"), py::arg("gt"));
  m.def("min_fde", &te::min_fde, py::arg("pred"), py::arg("gt"));
  m.def("miss", &te::miss, py::arg("pred"), py::arg("gt"),
        py::arg("threshold") = te::kDefaultMissThreshold);
  m.def("collision", &te::collision, py::arg("a"), py::arg("b"),
        py::arg("radius") = te::kDefaultCollisionRadius);
}

void bind_experiment(py::module_ & m)
{
  py::class_<te::RunConfig>(m, "RunConfig")
    .def(py::init<>())
    .def_readwrite("levels", &te::RunConfig::levels)
    .def_readwrite("thresholds", &te::RunConfig::thresholds)
    .def_readwrite("gate_enabled", &te::RunConfig::gate_enabled)
    .def_readwrite("entropy", &te::RunConfig::entropy)
    .def_readwrite("policy", &te::RunConfig::policy)
    .def_readwrite("seed", &te::RunConfig::seed)
    .def_readwrite("jobs", &te::RunConfig::jobs)
    .def_readwrite("miss_threshold", &te::RunConfig::miss_threshold)
    .def_readwrite("collision_radius", &te::RunConfig::collision_radius)
    .def("validate", &te::RunConfig::validate);

  py::class_<te::SuiteSummary>(m, "SuiteSummary")
    .def_readonly("scenes", &te::SuiteSummary::scenes)
    .def_readonly("agents", &te::SuiteSummary::agents)
    .def_readonly("evals_gated", &te::SuiteSummary::evals_gated)
    .def_readonly("evals_ungated", &te::SuiteSummary::evals_ungated)
    .def_readonly("frozen_agents", &te::SuiteSummary::frozen_agents)
    .def_readonly("eval_reduction_pct", &te::SuiteSummary::eval_reduction_pct)
    .def_readonly("min_ade_gated", &te::SuiteSummary::min_ade_gated)
    .def_readonly("min_ade_ungated", &te::SuiteSummary::min_ade_ungated)
    .def_readonly("min_fde_gated", &te::SuiteSummary::min_fde_gated)
    .def_readonly("min_fde_ungated", &te::SuiteSummary::min_fde_ungated)
    .def_readonly("miss_rate_gated", &te::SuiteSummary::miss_rate_gated)
    .def_readonly("miss_rate_ungated", &te::SuiteSummary::miss_rate_ungated)
    .def_readonly("collision_rate_gated", &te::SuiteSummary::collision_rate_gated)
    .def_readonly("collision_rate_ungated", &te::SuiteSummary::collision_rate_ungated);

  py::class_<te::LevelProfile>(m, "LevelProfile")
    .def_readonly("level", &te::LevelProfile::level)
    .def_readonly("mean_gated", &te::LevelProfile::mean_gated)
    .def_readonly("std_gated", &te::LevelProfile::std_gated)
    .def_readonly("mean_ungated", &te::LevelProfile::mean_ungated)
    .def_readonly("std_ungated", &te::LevelProfile::std_ungated)
    .def_readonly("active_fraction_gated", &te::LevelProfile::active_fraction_gated);

  m.def("preset_thresholds", [](const std::string & name) {
    const auto * p = te::builtin_presets().find_preset(name);
    if (p == nullptr) {
      throw py::key_error(name);
    }
    return p->thresholds;
  }, py::arg("name"));

  // Runs the suite once and returns (summary, per-level profile).
  m.def("run_suite", [](const te::ScenarioSuite & suite, const te::RunConfig & config) {
    std::vector<te::SceneOutcome> outcomes;
    {
      py::gil_scoped_release release;
      outcomes = te::run_suite(suite, config);
    }
    return py::make_tuple(te::summarize(outcomes, config), te::entropy_profile(outcomes));
  }, py::arg("suite"), py::arg("config"));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Trajectory entropy, gated level-k games and evaluation metrics";

  py::register_exception<te::ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<te::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<te::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<te::SemanticError>(m, "SemanticError", PyExc_ValueError);
  py::register_exception<te::IoError>(m, "IoError", PyExc_OSError);

  bind_types(m);
  bind_entropy(m);
  bind_scenarios(m);
  bind_game(m);
  bind_metrics(m);
  bind_experiment(m);
}
