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

#ifndef RM2_SIMULATOR_HPP_
#define RM2_SIMULATOR_HPP_

// Fixed-step world model for a surface vessel towing a vehicle in a release
// housing. Each step runs, in order:
//
//   1. move the vessel along its waypoints (the stowed vehicle trails it at
//      a fixed offset; an active vehicle pursues its own route)
//   2. advance wave time and recompute towline tautness and tension
//   3. publish POSITION as lat/lon
//   4. step the deployment node
//   5. hand serial bytes to the actuator
//   6. advance the actuator with the tautness flag
//   7. on release: vehicle RELEASED, then ACTIVE after the magnet delay;
//      publish DEPLOY_EVENT; the vehicle starts on its WAYPT_UPDATE route
//   8. record a telemetry row
//
// Waves are taken to run along +x, in line with the tow. Everything is
// kinematic or algebraic, so explicit Euler with a fixed dt is exact enough
// and keeps runs reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rm2/actuator.hpp"
#include "rm2/bus.hpp"
#include "rm2/controller.hpp"
#include "rm2/error.hpp"
#include "rm2/format.hpp"
#include "rm2/geodesy.hpp"
#include "rm2/physics.hpp"
#include "rm2/serial.hpp"
#include "rm2/units.hpp"

namespace rm2 {

inline constexpr double kMaxAsvSpeed = KnotsToMps(11.0);
inline constexpr double kHousingTetherLength = 0.660;

using WayptList = std::vector<LocalPoint>;

// "x1,y1:x2,y2:...:xn,yn", metres in the local frame. ParseError::index() is
// the 1-based pair index.
inline WayptList parse_waypt_update(std::string_view text) {
  if (text.find_first_not_of(" \t") == std::string_view::npos) {
    throw ParseError("waypoint list is empty");
  }
  WayptList out;
  std::size_t index = 0;
  while (true) {
    ++index;
    auto colon = text.find(':');
    std::string_view pair = text.substr(0, colon);
    auto comma = pair.find(',');
    if (comma == std::string_view::npos || pair.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("malformed waypoint at pair " + std::to_string(index) + ": \"" +
                           std::string(pair) + "\"",
                       index);
    }
    auto x = ParseDouble(pair.substr(0, comma));
    auto y = ParseDouble(pair.substr(comma + 1));
    if (!x || !y) {
      throw ParseError("non-numeric waypoint at pair " + std::to_string(index) + ": \"" +
                           std::string(pair) + "\"",
                       index);
    }
    out.push_back({*x, *y});
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }
  return out;
}

inline std::string FormatWayptList(const WayptList& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ':';
    out += FormatFixed(p.x, 3) + "," + FormatFixed(p.y, 3);
  }
  return out;
}

// Instantaneous tautness: the tow must outrun the surface surge velocity at
// the towed body.
inline bool taut(double asv_speed, const WaveField& wave, double t, double x_auv = 0.0) {
  if (!(asv_speed >= 0.0)) throw DomainError("taut: speed must be >= 0");
  return asv_speed >= surge_velocity(wave, x_auv, 0.0, t);
}

enum class AuvMode { kStowed, kReleased, kActive };

inline const char* ToString(AuvMode m) {
  switch (m) {
    case AuvMode::kStowed: return "STOWED";
    case AuvMode::kReleased: return "RELEASED";
    case AuvMode::kActive: return "ACTIVE";
  }
  return "?";
}

struct AsvPlan {
  LocalPoint start;
  double speed = 2.5;  // commanded, m/s
  WayptList waypoints;
};

struct AuvPlan {
  std::string waypt_update;  // published on WAYPT_UPDATE at t = dt
  double speed = 1.5;
  double capture_radius = 2.0;
  double tow_offset = 1.0;        // along-track trail while stowed
  double activation_delay = 0.0;  // RELEASED -> ACTIVE
};

struct SimConfig {
  double dt = 0.05;
  double duration = 600.0;
  WaveField wave;
  TowConfig tow;
  GeoPoint origin;
  AsvPlan asv;
  Rm2Params rm2;
  ActuatorSpec actuator;
  double actuation_time = 1.0;
  double hook_fall_time = 1.0;
  ActuatorFault fault = ActuatorFault::kNone;
  AuvPlan auv;
  std::optional<LocalPoint> rendezvous;
  double rendezvous_radius = 5.0;
  // When set, the harness publishes true on the trigger topic at this time.
  std::optional<double> trigger_time;
  double slack_margin = 0.0;
  double position_noise = 0.0;  // 1-sigma GPS noise [m]
  std::uint64_t rng_seed = 0;
  // The serial link refuses writes before this time.
  double serial_down_until = 0.0;
  double tether_limit = kHousingTetherLength;

  // Throws ConfigError listing every offending field.
  void Validate() const {
    std::vector<std::string> issues;
    auto check = [&](bool ok, const char* msg) {
      if (!ok) issues.emplace_back(msg);
    };
    check(dt > 0.0 && std::isfinite(dt), "sim.dt: must be > 0");
    check(duration >= 0.0 && std::isfinite(duration), "sim.duration: must be >= 0");
    check(origin.Valid(), "sim.origin: latitude/longitude out of range");
    check(asv.speed >= 0.0 && asv.speed <= kMaxAsvSpeed, "asv.speed: must lie in [0, 11 kn]");
    check(auv.speed > 0.0, "sim.auv_speed: must be > 0");
    check(auv.capture_radius > 0.0, "sim.capture_radius: must be > 0");
    check(auv.tow_offset >= 0.0, "sim.tow_offset: must be >= 0");
    check(auv.activation_delay >= 0.0, "sim.activation_delay: must be >= 0");
    check(rendezvous_radius > 0.0, "sim.rendezvous_radius: must be > 0");
    check(slack_margin >= 0.0, "sim.slack_margin: must be >= 0");
    check(position_noise >= 0.0, "sim.position_noise_m: must be >= 0");
    check(tether_limit > 0.0, "sim.tether_limit: must be > 0");
    check(actuation_time > 0.0, "actuator.actuation_time: must be > 0");
    check(hook_fall_time >= 0.0, "actuator.hook_fall_time: must be >= 0");
    check(!trigger_time || *trigger_time >= 0.0, "sim.trigger_time: must be >= 0");
    try {
      tow.Validate();
    } catch (const Error& e) {
      issues.emplace_back(e.what());
    }
    try {
      actuator.Validate();
    } catch (const Error& e) {
      issues.emplace_back(e.what());
    }
    try {
      rm2.Validate();
    } catch (const ConfigError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
    if (!auv.waypt_update.empty()) {
      try {
        parse_waypt_update(auv.waypt_update);
      } catch (const ParseError& e) {
        issues.emplace_back(std::string("sim.waypt_update: ") + e.what());
      }
    }
    if (origin.Valid() && rm2.deploy_position && rm2.deploy_position->Valid()) {
      try {
        to_local(LocalFrame(origin), *rm2.deploy_position);
      } catch (const Error& e) {
        issues.emplace_back(std::string("rm2.deploy_position: ") + e.what());
      }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
  }
};

struct AsvState {
  LocalPoint position;
  double speed = 0.0;
  double heading = 0.0;  // rad, atan2 convention (0 = east)
  std::deque<LocalPoint> waypoints;
};

struct AuvState {
  LocalPoint position;
  AuvMode mode = AuvMode::kStowed;
  WayptList waypoints;
  std::size_t next_waypoint = 0;
  double speed = 0.0;
  double heave = 0.0;  // m, positive up, clipped to the housing tether
};

struct TowlineState {
  bool taut = false;
  double tension = 0.0;
  double slack_margin = 0.0;
};

struct TelemetryRow {
  double t = 0.0;
  LocalPoint asv;
  double asv_speed = 0.0;
  LocalPoint auv;
  AuvMode auv_mode = AuvMode::kStowed;
  double tension = 0.0;
  bool taut = false;
  MechState mech_state = MechState::kLocked;
  bool deployed = false;
};

inline constexpr std::string_view kTelemetryHeader =
    "t,asv_x,asv_y,asv_speed,auv_x,auv_y,auv_mode,tension_N,taut,mech_state,deployed";

inline void WriteTelemetryCsv(std::ostream& os, const std::vector<TelemetryRow>& rows) {
  os << kTelemetryHeader << '\n';
  for (const auto& r : rows) {
    os << FormatFixed(r.t, 6) << ',' << FormatFixed(r.asv.x, 6) << ',' << FormatFixed(r.asv.y, 6)
       << ',' << FormatFixed(r.asv_speed, 6) << ',' << FormatFixed(r.auv.x, 6) << ','
       << FormatFixed(r.auv.y, 6) << ',' << ToString(r.auv_mode) << ','
       << FormatFixed(r.tension, 6) << ',' << (r.taut ? 1 : 0) << ',' << ToString(r.mech_state)
       << ',' << (r.deployed ? 1 : 0) << '\n';
  }
}

inline std::string TelemetryCsv(const std::vector<TelemetryRow>& rows) {
  std::ostringstream os;
  WriteTelemetryCsv(os, rows);
  return os.str();
}

struct MissionSummary {
  std::size_t steps = 0;
  double end_time = 0.0;
  std::optional<double> deploy_command_time;
  std::optional<double> deploy_position_error;  // m, vs the deploy position
  bool deploy_by_trigger = false;
  std::optional<double> hook_open_time;
  std::optional<double> release_time;
  std::optional<LocalPoint> release_position;
  AuvMode auv_final_mode = AuvMode::kStowed;
  MechState mech_final_state = MechState::kLocked;
  std::size_t waypoints_total = 0;
  std::size_t waypoints_reached = 0;
  bool rendezvous_reached = false;
  bool mission_success = false;
  double max_tension = 0.0;
  std::size_t send_failures = 0;
  std::size_t actuator_log_entries = 0;
  bool halted = false;
  std::string halt_reason;

  std::string Render() const {
    if (steps == 0 && !halted) return "no steps\n";
    auto opt = [](const std::optional<double>& v) {
      return v ? FormatFixed(*v, 3) : std::string("none");
    };
    std::ostringstream os;
    os << "steps: " << steps << '\n'
       << "end_time_s: " << FormatFixed(end_time, 3) << '\n'
       << "deploy_command_time_s: " << opt(deploy_command_time) << '\n'
       << "deploy_position_error_m: " << opt(deploy_position_error) << '\n'
       << "deploy_by_trigger: " << (deploy_by_trigger ? "true" : "false") << '\n'
       << "hook_open_time_s: " << opt(hook_open_time) << '\n'
       << "release_time_s: " << opt(release_time) << '\n'
       << "auv_final_mode: " << ToString(auv_final_mode) << '\n'
       << "mech_final_state: " << ToString(mech_final_state) << '\n'
       << "waypoints_reached: " << waypoints_reached << '/' << waypoints_total << '\n'
       << "rendezvous_reached: " << (rendezvous_reached ? "true" : "false") << '\n'
       << "max_tension_N: " << FormatFixed(max_tension, 3) << '\n'
       << "serial_send_failures: " << send_failures << '\n'
       << "actuator_log_entries: " << actuator_log_entries << '\n';
    if (halted) os << "halted: " << halt_reason << '\n';
    os << "mission_success: " << (mission_success ? "true" : "false") << '\n';
    return os.str();
  }
};

class World {
 public:
  explicit World(SimConfig cfg)
      : cfg_((cfg.Validate(), std::move(cfg))),
        frame_(cfg_.origin),
        mech_(cfg_.actuator, cfg_.actuation_time, cfg_.hook_fall_time, cfg_.fault),
        node_(cfg_.rm2, bus_, frame_),
        rng_(cfg_.rng_seed) {
    auv_route_sub_ = bus_.Subscribe(topics::kWaypointUpdate);
    asv_.position = cfg_.asv.start;
    asv_.waypoints.assign(cfg_.asv.waypoints.begin(), cfg_.asv.waypoints.end());
    if (!asv_.waypoints.empty()) {
      const LocalPoint& first = asv_.waypoints.front();
      if (first != asv_.position) {
        asv_.heading = std::atan2(first.y - asv_.position.y, first.x - asv_.position.x);
      }
    }
    towline_.slack_margin = cfg_.slack_margin;
    SlaveStowedAuv();
    summary_.waypoints_total = cfg_.auv.waypt_update.empty()
                                   ? 0
                                   : parse_waypt_update(cfg_.auv.waypt_update).size();
  }

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  const SimConfig& config() const noexcept { return cfg_; }
  const LocalFrame& frame() const noexcept { return frame_; }
  double time() const noexcept { return static_cast<double>(steps_) * cfg_.dt; }
  std::size_t steps() const noexcept { return steps_; }
  const AsvState& asv() const noexcept { return asv_; }
  const AuvState& auv() const noexcept { return auv_; }
  const TowlineState& towline() const noexcept { return towline_; }
  const ReleaseMechanism& mechanism() const noexcept { return mech_; }
  const Rm2Node& node() const noexcept { return node_; }
  Bus& bus() noexcept { return bus_; }
  const VirtualSerialLink& link() const noexcept { return link_; }

  // Throws RatedLoadExceeded when the towline is overloaded.
  TelemetryRow Step() {
    const double dt = cfg_.dt;
    const double t = static_cast<double>(steps_ + 1) * dt;

    // 1
    MoveAsv(dt);
    if (auv_.mode == AuvMode::kStowed) {
      SlaveStowedAuv();
      auv_.heave = std::clamp(cfg_.wave.amplitude() *
                                  std::sin(cfg_.wave.angular_frequency() * t + cfg_.wave.phase()),
                              -cfg_.tether_limit, cfg_.tether_limit);
    } else if (auv_.mode == AuvMode::kActive) {
      MoveActiveAuv(dt);
    }

    // 2
    UpdateTowline(t);

    // 3
    if (steps_ == 0 && !cfg_.auv.waypt_update.empty()) {
      bus_.Publish(topics::kWaypointUpdate, cfg_.auv.waypt_update, t);
    }
    LocalPoint fix = asv_.position;
    if (cfg_.position_noise > 0.0) {
      std::normal_distribution<double> noise(0.0, cfg_.position_noise);
      fix.x += noise(rng_);
      fix.y += noise(rng_);
    }
    bus_.Publish(topics::kPosition, to_geo(frame_, fix), t);
    if (cfg_.trigger_time && !trigger_published_ && t + 1e-9 >= *cfg_.trigger_time) {
      bus_.Publish(cfg_.rm2.deploy_trigger.value_or(topics::kDeployTrigger), true, t);
      trigger_published_ = true;
    }

    // 4
    link_.set_open(t + 1e-9 >= cfg_.serial_down_until);
    if (auto cmd = node_.Step(link_, t); cmd && !summary_.deploy_command_time) {
      summary_.deploy_command_time = cmd->time;
      summary_.deploy_by_trigger = cmd->by_trigger;
      if (auto target = node_.deploy_local(); target && node_.last_position()) {
        summary_.deploy_position_error = local_distance(asv_.position, *target);
      }
    }

    // 5
    for (std::uint8_t b : link_.Drain()) mech_.HandleByte(b);

    // 6
    MechState before = mech_.state();
    auto released = mech_.Advance(dt, towline_.taut);
    if (before != MechState::kHookFalling && mech_.state() == MechState::kHookFalling) {
      summary_.hook_open_time = t;
    }

    // 7
    for (auto& m : auv_route_sub_.Drain()) {
      if (auto* s = std::get_if<std::string>(&m.payload)) {
        try {
          pending_route_ = parse_waypt_update(*s);
        } catch (const ParseError&) {
          pending_route_.clear();
        }
      }
    }
    if (released) {
      auv_.mode = AuvMode::kReleased;
      summary_.release_time = t;
      summary_.release_position = auv_.position;
      bus_.Publish(topics::kDeployEvent, auv_.position, t);
    }
    if (auv_.mode == AuvMode::kReleased &&
        t + 1e-9 >= *summary_.release_time + cfg_.auv.activation_delay) {
      auv_.mode = AuvMode::kActive;
      auv_.speed = cfg_.auv.speed;
      auv_.waypoints = pending_route_;
      auv_.next_waypoint = 0;
      auv_.heave = 0.0;
    }

    // 8
    ++steps_;
    TelemetryRow row{t,         asv_.position,     asv_.speed,      auv_.position,     auv_.mode,
                     towline_.tension, towline_.taut, mech_.state(), node_.deployed()};
    return row;
  }

  MissionSummary Summary() const {
    MissionSummary s = summary_;
    s.steps = steps_;
    s.end_time = time();
    s.auv_final_mode = auv_.mode;
    s.mech_final_state = mech_.state();
    s.waypoints_reached = std::min(auv_.next_waypoint, auv_.waypoints.size());
    s.send_failures = node_.send_failures();
    s.actuator_log_entries = mech_.log().size();
    bool route_done = s.release_time.has_value() && s.waypoints_reached == s.waypoints_total &&
                      auv_.mode == AuvMode::kActive;
    if (cfg_.rendezvous) {
      bool auv_there = local_distance(auv_.position, *cfg_.rendezvous) <= cfg_.rendezvous_radius;
      bool asv_there = local_distance(asv_.position, *cfg_.rendezvous) <= cfg_.rendezvous_radius;
      s.rendezvous_reached = route_done && auv_there && asv_there;
      s.mission_success = s.rendezvous_reached && !s.halted;
    } else {
      s.mission_success = route_done && !s.halted;
    }
    return s;
  }

  void MarkHalted(std::string reason) {
    summary_.halted = true;
    summary_.halt_reason = std::move(reason);
  }

 private:
  void SlaveStowedAuv() {
    auv_.position = {asv_.position.x - cfg_.auv.tow_offset * std::cos(asv_.heading),
                     asv_.position.y - cfg_.auv.tow_offset * std::sin(asv_.heading)};
  }

  void MoveAsv(double dt) {
    double budget = cfg_.asv.speed * dt;
    double moved = 0.0;
    while (budget > 0.0 && !asv_.waypoints.empty()) {
      const LocalPoint target = asv_.waypoints.front();
      double d = local_distance(asv_.position, target);
      if (d > 0.0) asv_.heading = std::atan2(target.y - asv_.position.y, target.x - asv_.position.x);
      if (d <= budget) {
        asv_.position = target;
        asv_.waypoints.pop_front();
        budget -= d;
        moved += d;
      } else {
        asv_.position.x += budget * std::cos(asv_.heading);
        asv_.position.y += budget * std::sin(asv_.heading);
        moved += budget;
        budget = 0.0;
      }
    }
    // Full budget used means the vessel ran at its commanded speed all step.
    asv_.speed = budget > 0.0 ? moved / dt : cfg_.asv.speed;
  }

  void MoveActiveAuv(double dt) {
    const LocalPoint* target = CurrentAuvTarget();
    if (!target) return;
    double d = local_distance(auv_.position, *target);
    double step_len = std::min(auv_.speed * dt, d);
    if (d > 0.0) {
      auv_.position.x += step_len * (target->x - auv_.position.x) / d;
      auv_.position.y += step_len * (target->y - auv_.position.y) / d;
    }
    if (local_distance(auv_.position, *target) <= cfg_.auv.capture_radius) {
      if (auv_.next_waypoint < auv_.waypoints.size()) {
        ++auv_.next_waypoint;
      } else {
        at_rendezvous_ = true;
      }
    }
  }

  const LocalPoint* CurrentAuvTarget() const {
    if (auv_.next_waypoint < auv_.waypoints.size()) return &auv_.waypoints[auv_.next_waypoint];
    if (cfg_.rendezvous && !at_rendezvous_) return &*cfg_.rendezvous;
    return nullptr;
  }

  void UpdateTowline(double t) {
    if (mech_.state() == MechState::kTetherFree) {
      towline_.taut = false;
      towline_.tension = 0.0;
      return;
    }
    double v = asv_.speed;
    double u = surge_velocity(cfg_.wave, auv_.position.x, 0.0, t);
    // Tension needs forward motion through the water; past that the line
    // goes slack below the surge velocity and re-tightens only once the
    // margin is cleared.
    bool now_taut;
    if (!(v > 0.0)) {
      now_taut = false;
    } else if (towline_.taut) {
      now_taut = v >= u;
    } else {
      now_taut = v >= u + towline_.slack_margin;
    }
    towline_.taut = now_taut;
    towline_.tension = now_taut ? tow_tension(cfg_.tow, v) : 0.0;
    summary_.max_tension = std::max(summary_.max_tension, towline_.tension);
    if (towline_.tension > cfg_.tow.rated_load) {
      throw RatedLoadExceeded("towline tension " + FormatFixed(towline_.tension, 1) +
                                  " N exceeds rated load " + FormatFixed(cfg_.tow.rated_load, 1) +
                                  " N at t=" + FormatFixed(t, 3) + " s",
                              towline_.tension, cfg_.tow.rated_load);
    }
  }

  SimConfig cfg_;
  LocalFrame frame_;
  Bus bus_;
  VirtualSerialLink link_;
  ReleaseMechanism mech_;
  Rm2Node node_;
  Subscription auv_route_sub_;
  std::mt19937_64 rng_;

  AsvState asv_;
  AuvState auv_;
  TowlineState towline_;
  WayptList pending_route_;
  bool trigger_published_ = false;
  bool at_rendezvous_ = false;
  std::size_t steps_ = 0;
  MissionSummary summary_;
};

struct RunResult {
  std::vector<TelemetryRow> telemetry;
  MissionSummary summary;
};

// Runs duration/dt steps (rounded to the nearest whole step). A rated-load
// overrun stops the run early and is reported through summary.halted.
inline RunResult run(const SimConfig& config) {
  World world(config);
  const auto n = static_cast<std::size_t>(std::llround(config.duration / config.dt));
  RunResult result;
  result.telemetry.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      result.telemetry.push_back(world.Step());
    } catch (const RatedLoadExceeded& e) {
      world.MarkHalted(e.what());
      break;
    }
  }
  result.summary = world.Summary();
  return result;
}

}  // namespace rm2

#endif  // RM2_SIMULATOR_HPP_
