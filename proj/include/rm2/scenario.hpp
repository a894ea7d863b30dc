// Copyright 2026 The rm2sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RM2_SCENARIO_HPP_
#define RM2_SCENARIO_HPP_

// Scenario files: INI-style sections [wave] [tow] [asv] [rm2] [actuator]
// [sim]. Values are SI unless the key ends in _kn or _deg. Unknown sections
// or keys are rejected so typos do not silently fall back to defaults.
//
//   [wave]
//   amplitude = 0.5
//   period = 30
//
//   [asv]
//   speed_kn = 4
//   waypoints = 0,0:200,0:400,50

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rm2/actuator.hpp"
#include "rm2/error.hpp"
#include "rm2/format.hpp"
#include "rm2/geodesy.hpp"
#include "rm2/physics.hpp"
#include "rm2/simulator.hpp"
#include "rm2/units.hpp"

namespace rm2 {

// Every accepted "section.key".
inline const std::vector<std::string>& ScenarioKeys() {
  static const std::vector<std::string> keys = {
      "wave.amplitude",        "wave.period",          "wave.gravity",
      "wave.phase",            "wave.phase_deg",       "tow.rho",
      "tow.cd",                "tow.sigma",            "tow.theta",
      "tow.theta_deg",         "tow.rated_load",       "asv.start",
      "asv.speed",             "asv.speed_kn",         "asv.waypoints",
      "rm2.deploy_position",   "rm2.deploy_trigger",   "rm2.delta_m",
      "rm2.resend_on_trigger", "actuator.force",       "actuator.stroke",
      "actuator.mass",         "actuator.actuation_time", "actuator.hook_fall_time",
      "actuator.fault",        "sim.dt",               "sim.duration",
      "sim.origin",            "sim.rng_seed",         "sim.slack_margin",
      "sim.trigger_time",      "sim.position_noise_m", "sim.serial_down_until",
      "sim.tether_limit",      "sim.waypt_update",     "sim.auv_speed",
      "sim.auv_speed_kn",      "sim.capture_radius",   "sim.tow_offset",
      "sim.activation_delay",  "sim.rendezvous",       "sim.rendezvous_radius",
  };
  return keys;
}

inline bool IsScenarioKey(const std::string& key) {
  const auto& k = ScenarioKeys();
  return std::find(k.begin(), k.end(), key) != k.end();
}

// Flat "section.key" -> raw value map.
using ScenarioValues = std::map<std::string, std::string>;

inline ScenarioValues ParseScenarioText(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream is(text);
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("scenario: ") + e.message() + " at line " +
                      std::to_string(e.line()));
  }
  ScenarioValues values;
  std::vector<std::string> issues;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      issues.push_back("scenario: key \"" + section + "\" outside any section");
      continue;
    }
    static constexpr std::array<std::string_view, 6> kSections = {"wave", "tow",      "asv",
                                                                   "rm2",  "actuator", "sim"};
    if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
      issues.push_back("scenario: unknown section [" + section + "]");
      continue;
    }
    for (const auto& [key, leaf] : body) {
      std::string full = section + "." + key;
      if (!IsScenarioKey(full)) {
        issues.push_back("scenario: unknown key \"" + full + "\"");
        continue;
      }
      values[full] = leaf.data();
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return values;
}

// "section.key=value". Throws ConfigError for malformed text or a key the
// scenario format does not define.
inline void ApplyOverride(ScenarioValues& values, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override \"" + std::string(assignment) + "\": expected section.key=value");
  }
  std::string key(assignment.substr(0, eq));
  key.erase(0, key.find_first_not_of(" \t"));
  key.erase(key.find_last_not_of(" \t") + 1);
  if (!IsScenarioKey(key)) throw ConfigError("override names unknown key \"" + key + "\"");
  std::string value(assignment.substr(eq + 1));
  value.erase(0, value.find_first_not_of(" \t"));
  value.erase(value.find_last_not_of(" \t") + 1);
  values[key] = value;
}

namespace scenario_detail {

class Reader {
 public:
  explicit Reader(const ScenarioValues& v) : v_(v) {}

  template <typename Set>
  void Number(const std::string& key, Set set) {
    auto it = v_.find(key);
    if (it == v_.end()) return;
    if (auto d = ParseDouble(it->second)) {
      set(*d);
    } else {
      issues.push_back(key + ": not a number: \"" + it->second + "\"");
    }
  }

  // key and key_<suffix> are alternative spellings; both at once is an error.
  template <typename Set>
  void NumberWithUnit(const std::string& key, const std::string& suffixed, double scale,
                      Set set) {
    if (v_.count(key) && v_.count(suffixed)) {
      issues.push_back(key + ": give either " + key + " or " + suffixed + ", not both");
      return;
    }
    Number(key, set);
    Number(suffixed, [&](double d) { set(d * scale); });
  }

  template <typename Set>
  void Text(const std::string& key, Set set) {
    auto it = v_.find(key);
    if (it == v_.end()) return;
    try {
      set(it->second);
    } catch (const Error& e) {
      issues.push_back(key + ": " + e.what());
    }
  }

  template <typename Set>
  void Bool(const std::string& key, Set set) {
    Text(key, [&](const std::string& s) {
      if (s == "true" || s == "1" || s == "yes") {
        set(true);
      } else if (s == "false" || s == "0" || s == "no") {
        set(false);
      } else {
        throw ConfigError("not a boolean: \"" + s + "\"");
      }
    });
  }

  std::vector<std::string> issues;

 private:
  const ScenarioValues& v_;
};

inline LocalPoint ParseXY(const std::string& s) {
  auto pts = parse_waypt_update(s);
  if (pts.size() != 1) throw ParseError("expected a single \"x,y\" pair");
  return pts.front();
}

}  // namespace scenario_detail

// Builds and validates a SimConfig. Throws ConfigError listing every bad
// field.
inline SimConfig BuildSimConfig(const ScenarioValues& values) {
  scenario_detail::Reader r(values);
  SimConfig cfg;

  double amplitude = 0.0, period = 10.0, gravity = kStandardGravity, phase = 0.0;
  r.Number("wave.amplitude", [&](double d) { amplitude = d; });
  r.Number("wave.period", [&](double d) { period = d; });
  r.Number("wave.gravity", [&](double d) { gravity = d; });
  r.NumberWithUnit("wave.phase", "wave.phase_deg", DegToRad(1.0), [&](double d) { phase = d; });

  r.Number("tow.rho", [&](double d) { cfg.tow.rho = d; });
  r.Number("tow.cd", [&](double d) { cfg.tow.c_d = d; });
  r.Number("tow.sigma", [&](double d) { cfg.tow.sigma = d; });
  r.NumberWithUnit("tow.theta", "tow.theta_deg", DegToRad(1.0),
                   [&](double d) { cfg.tow.theta = d; });
  r.Number("tow.rated_load", [&](double d) { cfg.tow.rated_load = d; });

  r.Text("asv.start", [&](const std::string& s) { cfg.asv.start = scenario_detail::ParseXY(s); });
  r.NumberWithUnit("asv.speed", "asv.speed_kn", kMetersPerSecondPerKnot,
                   [&](double d) { cfg.asv.speed = d; });
  r.Text("asv.waypoints",
         [&](const std::string& s) { cfg.asv.waypoints = parse_waypt_update(s); });

  r.Text("rm2.deploy_position",
         [&](const std::string& s) { cfg.rm2.deploy_position = parse_deploy_position(s); });
  r.Text("rm2.deploy_trigger", [&](const std::string& s) { cfg.rm2.deploy_trigger = s; });
  r.Number("rm2.delta_m", [&](double d) { cfg.rm2.delta_m = d; });
  r.Bool("rm2.resend_on_trigger", [&](bool b) { cfg.rm2.resend_on_trigger = b; });

  r.Number("actuator.force", [&](double d) { cfg.actuator.force = d; });
  r.Number("actuator.stroke", [&](double d) { cfg.actuator.stroke = d; });
  r.Number("actuator.mass", [&](double d) { cfg.actuator.mass = d; });
  r.Number("actuator.actuation_time", [&](double d) { cfg.actuation_time = d; });
  r.Number("actuator.hook_fall_time", [&](double d) { cfg.hook_fall_time = d; });
  r.Text("actuator.fault", [&](const std::string& s) {
    auto f = ParseFault(s);
    if (!f) throw ConfigError("unknown fault \"" + s + "\"");
    cfg.fault = *f;
  });

  r.Number("sim.dt", [&](double d) { cfg.dt = d; });
  r.Number("sim.duration", [&](double d) { cfg.duration = d; });
  r.Text("sim.origin", [&](const std::string& s) { cfg.origin = ParseLatLon(s); });
  r.Text("sim.rng_seed", [&](const std::string& s) {
    std::uint64_t seed = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ConfigError("not an unsigned integer: \"" + s + "\"");
    }
    cfg.rng_seed = seed;
  });
  r.Number("sim.slack_margin", [&](double d) { cfg.slack_margin = d; });
  r.Number("sim.trigger_time", [&](double d) { cfg.trigger_time = d; });
  r.Number("sim.position_noise_m", [&](double d) { cfg.position_noise = d; });
  r.Number("sim.serial_down_until", [&](double d) { cfg.serial_down_until = d; });
  r.Number("sim.tether_limit", [&](double d) { cfg.tether_limit = d; });
  r.Text("sim.waypt_update", [&](const std::string& s) {
    parse_waypt_update(s);
    cfg.auv.waypt_update = s;
  });
  r.NumberWithUnit("sim.auv_speed", "sim.auv_speed_kn", kMetersPerSecondPerKnot,
                   [&](double d) { cfg.auv.speed = d; });
  r.Number("sim.capture_radius", [&](double d) { cfg.auv.capture_radius = d; });
  r.Number("sim.tow_offset", [&](double d) { cfg.auv.tow_offset = d; });
  r.Number("sim.activation_delay", [&](double d) { cfg.auv.activation_delay = d; });
  r.Text("sim.rendezvous", [&](const std::string& s) { cfg.rendezvous = scenario_detail::ParseXY(s); });
  r.Number("sim.rendezvous_radius", [&](double d) { cfg.rendezvous_radius = d; });

  try {
    cfg.wave = WaveField::FromPeriod(amplitude, period, gravity, phase);
  } catch (const DomainError& e) {
    r.issues.emplace_back(e.what());
  }

  std::vector<std::string> issues = std::move(r.issues);
  try {
    cfg.Validate();
  } catch (const ConfigError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

inline std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SimConfig LoadScenario(const std::string& path,
                              const std::vector<std::string>& overrides = {}) {
  ScenarioValues values = ParseScenarioText(ReadTextFile(path));
  for (const auto& o : overrides) ApplyOverride(values, o);
  return BuildSimConfig(values);
}

}  // namespace rm2

#endif  // RM2_SCENARIO_HPP_
