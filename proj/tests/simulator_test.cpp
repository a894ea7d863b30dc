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

#include "rm2/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "missions.hpp"

namespace rm2 {
namespace {

using testing::NominalMission;
using testing::TriggeredAt;

// A omega cos(kx - omega t + phase) at the surface, from the wave parameters.
double SurfaceSurge(double amplitude, double period, double x, double t, double phase = 0.0) {
  double w = 2.0 * std::numbers::pi / period;
  double k = w * w / 9.81;
  return amplitude * w * std::cos(k * x - w * t + phase);
}

TEST(ParseWayptUpdate, Examples) {
  EXPECT_EQ(parse_waypt_update("0,0:10,5:20,5"),
            (WayptList{{0, 0}, {10, 5}, {20, 5}}));
  EXPECT_EQ(parse_waypt_update("3.5,-2.25"), (WayptList{{3.5, -2.25}}));
  try {
    parse_waypt_update("1,2:x,4");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(parse_waypt_update(""), ParseError);
  EXPECT_THROW(parse_waypt_update("1,2:"), ParseError);
  EXPECT_THROW(parse_waypt_update("1,2,3"), ParseError);
  EXPECT_THROW(parse_waypt_update("1;2"), ParseError);
}

TEST(ParseWayptUpdate, FormatRoundTrip) {
  WayptList pts{{1.5, -2.0}, {300.125, 42.0}};
  EXPECT_EQ(parse_waypt_update(FormatWayptList(pts)), pts);
}

TEST(Taut, FastEnoughIsTautAtEveryPhase) {
  auto w = WaveField::FromPeriod(0.5, 30.0);
  for (int i = 0; i < 10000; ++i) {
    double t = 30.0 * i / 10000.0;
    ASSERT_GT(0.2, SurfaceSurge(0.5, 30.0, 0.0, t));
    EXPECT_TRUE(taut(0.2, w, t)) << t;
  }
}

TEST(Taut, TooSlowGoesSlackAtPeakSurge) {
  auto w = WaveField::FromPeriod(0.5, 30.0);
  // Peak surge at x = 0 occurs at t = 0.
  ASSERT_GT(SurfaceSurge(0.5, 30.0, 0.0, 0.0), 0.05);
  EXPECT_FALSE(taut(0.05, w, 0.0));
  int slack = 0;
  for (int i = 0; i < 1000; ++i) {
    double t = 30.0 * i / 1000.0;
    bool expect = 0.05 >= SurfaceSurge(0.5, 30.0, 0.0, t);
    EXPECT_EQ(taut(0.05, w, t), expect);
    slack += !expect;
  }
  EXPECT_GT(slack, 0);
}

TEST(Taut, FlatSeaAlwaysTaut) {
  auto flat = WaveField::FromPeriod(0.0, 10.0);
  for (double v : {0.0, 0.01, 3.0}) {
    for (double t : {0.0, 1.3, 7.7}) EXPECT_TRUE(taut(v, flat, t));
  }
  EXPECT_THROW(taut(-1.0, flat, 0.0), DomainError);
}

TEST(Simulator, NominalMissionSucceeds) {
  RunResult r = run(NominalMission());
  const MissionSummary& s = r.summary;
  ASSERT_TRUE(s.deploy_command_time);
  ASSERT_TRUE(s.deploy_position_error);
  EXPECT_LT(*s.deploy_position_error, 5.0);
  EXPECT_FALSE(s.deploy_by_trigger);
  ASSERT_TRUE(s.release_time);
  EXPECT_GT(*s.release_time, *s.deploy_command_time);
  EXPECT_EQ(s.auv_final_mode, AuvMode::kActive);
  EXPECT_EQ(s.waypoints_total, 3u);
  EXPECT_EQ(s.waypoints_reached, 3u);
  EXPECT_TRUE(s.rendezvous_reached);
  EXPECT_TRUE(s.mission_success);
  EXPECT_FALSE(s.halted);
  EXPECT_GT(s.max_tension, 100.0);
  EXPECT_LT(s.max_tension, 2000.0);
}

TEST(Simulator, StuckControllerKeepsVehicleStowed) {
  SimConfig cfg = NominalMission();
  cfg.fault = ActuatorFault::kStuckController;
  RunResult r = run(cfg);
  EXPECT_TRUE(r.summary.deploy_command_time);
  EXPECT_FALSE(r.summary.release_time);
  EXPECT_FALSE(r.summary.mission_success);
  for (const auto& row : r.telemetry) {
    EXPECT_EQ(row.auv_mode, AuvMode::kStowed);
    EXPECT_EQ(row.mech_state, MechState::kLocked);
  }
  EXPECT_GE(r.summary.actuator_log_entries, 1u);
}

TEST(Simulator, ZeroSpeedWithWavesNeverFreesTether) {
  SimConfig cfg = TriggeredAt(0.0, WaveField::FromPeriod(0.5, 8.0), 2.0, 120.0);
  World world(cfg);
  bool hook_open = false;
  for (int i = 0; i < 2400; ++i) {
    TelemetryRow row = world.Step();
    EXPECT_FALSE(row.taut);
    EXPECT_EQ(row.tension, 0.0);
    EXPECT_NE(row.mech_state, MechState::kTetherFree);
    hook_open |= row.mech_state == MechState::kHookFalling;
  }
  EXPECT_TRUE(hook_open);
  EXPECT_TRUE(world.node().deployed());
}

TEST(Simulator, SlowTowReleasesOnlyWhenLineTautens) {
  // 0.05 m/s against 0.39 m/s peak surge: slack half the time. Every
  // release must land on a step whose surge oracle says taut.
  SimConfig cfg = TriggeredAt(0.05, WaveField::FromPeriod(0.5, 8.0), 0.0, 60.0);
  cfg.asv.waypoints = {{1000.0, 0.0}};
  World world(cfg);
  bool released = false;
  for (int i = 0; i < 1200 && !released; ++i) {
    MechState before = world.mechanism().state();
    TelemetryRow row = world.Step();
    double u = SurfaceSurge(0.5, 8.0, world.auv().position.x, row.t);
    if (before == MechState::kHookFalling) {
      if (row.mech_state == MechState::kTetherFree) {
        EXPECT_GE(0.05, u);
        released = true;
      } else if (0.05 < u) {
        EXPECT_EQ(row.mech_state, MechState::kHookFalling);
      }
    }
  }
  EXPECT_TRUE(released);
}

TEST(Simulator, DeterministicTelemetry) {
  SimConfig cfg = NominalMission();
  cfg.position_noise = 1.0;
  std::string a = TelemetryCsv(run(cfg).telemetry);
  std::string b = TelemetryCsv(run(cfg).telemetry);
  EXPECT_EQ(a, b);
  cfg.rng_seed = 8;
  EXPECT_NE(TelemetryCsv(run(cfg).telemetry), a);
}

TEST(Simulator, ZeroDurationHasNoSteps) {
  SimConfig cfg = NominalMission();
  cfg.duration = 0.0;
  RunResult r = run(cfg);
  EXPECT_TRUE(r.telemetry.empty());
  EXPECT_EQ(r.summary.steps, 0u);
  EXPECT_EQ(r.summary.Render(), "no steps\n");
  EXPECT_EQ(TelemetryCsv(r.telemetry), std::string(kTelemetryHeader) + "\n");
}

TEST(Simulator, ValidationListsEveryBadField) {
  SimConfig cfg = NominalMission();
  cfg.dt = 0.0;
  cfg.asv.speed = 7.0;
  cfg.rm2 = Rm2Params{};
  cfg.tow.rho = -1.0;
  try {
    run(cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_GE(e.issues().size(), 4u);
  }
}

TEST(Simulator, RatedLoadExceededHalts) {
  SimConfig cfg = NominalMission();
  cfg.tow.sigma = 5.0;  // about 9.5 kN at 2.5 m/s
  RunResult r = run(cfg);
  EXPECT_TRUE(r.summary.halted);
  EXPECT_NE(r.summary.halt_reason.find("rated load"), std::string::npos);
  EXPECT_FALSE(r.summary.mission_success);
  EXPECT_LT(r.telemetry.size(), 100u);
  EXPECT_NE(r.summary.Render().find("halted"), std::string::npos);
}

TEST(Simulator, SerialOutageDelaysDeploy) {
  SimConfig cfg = TriggeredAt(2.0, WaveField::FromPeriod(0.2, 8.0), 1.0, 30.0);
  cfg.serial_down_until = 5.0;
  RunResult r = run(cfg);
  ASSERT_TRUE(r.summary.deploy_command_time);
  EXPECT_GE(*r.summary.deploy_command_time, 5.0 - 1e-9);
  EXPECT_GT(r.summary.send_failures, 0u);
  EXPECT_TRUE(r.summary.release_time);
}

TEST(Simulator, ActivationDelayHoldsReleasedMode) {
  SimConfig cfg = TriggeredAt(2.0, WaveField::FromPeriod(0.2, 8.0), 1.0, 30.0);
  cfg.auv.activation_delay = 2.0;
  RunResult r = run(cfg);
  ASSERT_TRUE(r.summary.release_time);
  double released = *r.summary.release_time;
  for (const auto& row : r.telemetry) {
    if (row.t < released - 1e-9) {
      EXPECT_EQ(row.auv_mode, AuvMode::kStowed);
    } else if (row.t < released + 2.0 - 1e-9) {
      EXPECT_EQ(row.auv_mode, AuvMode::kReleased);
    } else {
      EXPECT_EQ(row.auv_mode, AuvMode::kActive);
    }
  }
}

TEST(Simulator, DeployEventPublished) {
  SimConfig cfg = TriggeredAt(2.0, WaveField::FromPeriod(0.2, 8.0), 1.0, 10.0);
  World world(cfg);
  auto sub = world.bus().Subscribe(topics::kDeployEvent);
  for (int i = 0; i < 200; ++i) world.Step();
  auto events = sub.Drain();
  ASSERT_EQ(events.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<LocalPoint>(events[0].payload));
}

// Trace invariants over a handful of varied runs.
TEST(SimulatorProperty, TraceInvariants) {
  std::vector<SimConfig> configs;
  configs.push_back(NominalMission());
  configs.push_back(TriggeredAt(0.05, WaveField::FromPeriod(0.5, 8.0), 3.0, 90.0));
  configs.push_back(TriggeredAt(1.0, WaveField::FromPeriod(1.0, 6.0), 0.5, 60.0));
  configs.back().auv.waypt_update = "60,20:40,-30";
  SimConfig noisy = NominalMission();
  noisy.position_noise = 2.0;
  noisy.auv.tow_offset = 2.5;
  configs.push_back(noisy);

  for (const SimConfig& cfg : configs) {
    World world(cfg);
    auto n = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
    int last_mode = 0;
    bool fired = false;
    for (std::size_t i = 0; i < n; ++i) {
      MechState before = world.mechanism().state();
      TelemetryRow row = world.Step();
      fired |= row.deployed;
      int mode = static_cast<int>(row.auv_mode);
      EXPECT_GE(mode, last_mode);
      last_mode = mode;
      EXPECT_LE(row.asv_speed, kMaxAsvSpeed);
      if (row.taut) {
        EXPECT_GT(row.tension, 0.0);
      }
      if (row.auv_mode == AuvMode::kStowed) {
        EXPECT_NEAR(local_distance(row.auv, row.asv), cfg.auv.tow_offset, 1e-9);
      }
      if (before != MechState::kTetherFree && row.mech_state == MechState::kTetherFree) {
        EXPECT_TRUE(fired);
        EXPECT_TRUE(row.taut);
      }
    }
  }
}

TEST(Telemetry, CsvFormat) {
  TelemetryRow row;
  row.t = 0.05;
  row.asv = {1.0, -2.5};
  row.asv_speed = 2.5;
  row.auv = {0.0, -2.5};
  row.tension = 107.91686917773791;
  row.taut = true;
  std::string csv = TelemetryCsv({row});
  EXPECT_EQ(csv,
            "t,asv_x,asv_y,asv_speed,auv_x,auv_y,auv_mode,tension_N,taut,mech_state,deployed\n"
            "0.050000,1.000000,-2.500000,2.500000,0.000000,-2.500000,STOWED,107.916869,1,"
            "LOCKED,0\n");
}

}  // namespace
}  // namespace rm2
