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

// Acceptance suite. Prints one PASS/FAIL line per criterion.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "../missions.hpp"
#include "../oracles.hpp"
#include "rm2/rm2.hpp"

namespace rm2 {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

TEST(AC1, TowlineTension) {
  TowConfig tow;  // 1020 kg/m^3, C_D 0.42, 0.057 m^2, 45 deg
  double expected = 1020.0 / (2.0 * std::sqrt(0.5)) * 0.42 * 0.057 * 2.5 * 2.5;
  double got = tow_tension(tow, 2.5);
  EXPECT_LE(std::abs(got - 109.0) / 109.0, 0.02) << got;
  EXPECT_LE(std::abs(got - expected) / expected, 1e-9) << got << " vs " << expected;
  EXPECT_NEAR(got, 107.9, 0.05);
}

TEST(AC2, MinimumReleaseSpeed) {
  double expected = 0.5 * 2.0 * std::numbers::pi / 30.0;
  double v = min_release_speed(WaveField::FromPeriod(0.5, 30.0));
  EXPECT_NEAR(v, expected, 1e-15);
  EXPECT_NEAR(v, 0.10472, 5e-6);
  EXPECT_NEAR(v, 0.105, 0.001);
  EXPECT_NEAR(v / 0.514444, 0.20, 0.005);
}

TEST(AC3, BenchGeometry) {
  ReferenceBenchTable table;
  EXPECT_NEAR(theta_trough(table.real), 83.57, 0.05);
  BenchReport rep = reference_bench_report();
  const ReportRow* crest = rep.Find("real", "theta_crest");
  ASSERT_NE(crest, nullptr);
  ASSERT_TRUE(crest->computed);
  EXPECT_NEAR(*crest->computed, 11.91, 0.005);
  EXPECT_NEAR(*crest->tabulated, 16.66, 1e-12);
  EXPECT_FALSE(crest->matches);
  const ReportRow* exp_trough = rep.Find("experimental", "theta_trough");
  ASSERT_NE(exp_trough, nullptr);
  EXPECT_FALSE(exp_trough->feasible);
  EXPECT_FALSE(exp_trough->matches);
}

// Trigger at t = 1 s; the run covers the pin stroke, the hook fall and two
// more wave periods.
SimConfig SweepCase(double speed, const WaveField& wave) {
  double duration = 4.0 + 2.0 * wave.period();
  return testing::TriggeredAt(speed, wave, 1.0, duration);
}

TEST(AC4, AssuredReleaseSweep) {
  auto start = Clock::now();
  const std::vector<double> amplitudes{0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  const std::vector<double> periods{3.0, 4.5, 6.0, 8.0, 10.0, 14.0, 20.0, 30.0};
  const std::vector<double> phases{0.0, 1.3, 2.9, 4.4};
  int combos = 0;
  for (double a : amplitudes) {
    for (double p : periods) {
      for (double ph : phases) {
        ++combos;
        WaveField wave = WaveField::FromPeriod(a, p, kStandardGravity, ph);
        double v_min = min_release_speed(wave);
        for (double speed : {v_min, std::min(1.5 * v_min, kMaxAsvSpeed)}) {
          MissionSummary s = run(SweepCase(speed, wave)).summary;
          ASSERT_TRUE(s.hook_open_time) << a << ' ' << p << ' ' << ph;
          ASSERT_TRUE(s.release_time) << a << ' ' << p << ' ' << ph << " speed " << speed;
          EXPECT_LE(*s.release_time - *s.hook_open_time, p + 1e-9);
        }
        MissionSummary still = run(SweepCase(0.0, wave)).summary;
        EXPECT_TRUE(still.hook_open_time);
        EXPECT_FALSE(still.release_time) << a << ' ' << p << ' ' << ph;
        EXPECT_EQ(still.auv_final_mode, AuvMode::kStowed);
      }
    }
  }
  EXPECT_GE(combos, 256);
  EXPECT_LT(Seconds(start), 10.0);
}

TEST(AC5, DeployLoopOracleEquivalence) {
  auto start = Clock::now();
  std::mt19937_64 rng(2026);
  const LocalFrame frame({41.5, -70.7});
  // Points at exactly 5 m from the origin, the boundary for delta = 5.
  const std::vector<LocalPoint> boundary{{5, 0}, {-5, 0}, {0, 5}, {3, 4}, {-4, -3}};
  int traces = 0;
  for (; traces < 2000; ++traces) {
    Rm2Params p;
    p.deploy_position = frame.origin();
    p.deploy_trigger = "DEPLOY_TRIGGER";
    p.delta_m = 5.0;
    Bus bus;
    VirtualSerialLink link;
    Rm2Node node(p, bus, frame);
    std::uniform_real_distribution<double> coord(-15.0, 15.0);
    std::vector<std::vector<oracle::TraceEvent>> steps;
    std::vector<bool> actual;
    double t = 0.0;
    int len = 1 + static_cast<int>(rng() % 40);
    for (int s = 0; s < len; ++s) {
      std::vector<oracle::TraceEvent> batch;
      int n = static_cast<int>(rng() % 4);
      for (int k = 0; k < n; ++k) {
        t += 0.01;
        auto pick = rng() % 8;
        if (pick == 0) {
          bool v = rng() % 4 == 0;
          batch.push_back({oracle::TraceEvent::kTrigger, 0, 0, v});
          bus.Publish("DEPLOY_TRIGGER", v, t);
        } else {
          LocalPoint lp = pick < 4 ? boundary[rng() % boundary.size()]
                                   : LocalPoint{coord(rng), coord(rng)};
          batch.push_back({oracle::TraceEvent::kPosition, lp.x, lp.y, false});
          bus.Publish(topics::kPosition, lp, t);
        }
      }
      steps.push_back(batch);
      actual.push_back(node.Step(link, t).has_value());
    }
    auto expected = oracle::DeployLoopReference(steps, 0.0, 0.0, true, 5.0);
    ASSERT_EQ(actual, expected) << "trace " << traces;
    ASSERT_LE(link.total_written(), 1u);
  }
  // A lone boundary fix never fires.
  {
    Rm2Params p;
    p.deploy_position = frame.origin();
    p.delta_m = 5.0;
    Bus bus;
    VirtualSerialLink link;
    Rm2Node node(p, bus, frame);
    bus.Publish(topics::kPosition, LocalPoint{3, 4}, 0.1);
    EXPECT_FALSE(node.Step(link, 0.1));
  }
  EXPECT_GE(traces, 1000);
  EXPECT_LT(Seconds(start), 5.0);
}

MechState Next(MechState s) { return static_cast<MechState>(static_cast<int>(s) + 1); }

TEST(AC6, ActuatorExhaustion) {
  constexpr double kDt = 0.05;
  const MechState states[] = {MechState::kLocked, MechState::kPinRetracting,
                              MechState::kHookFalling, MechState::kTetherFree};
  const ActuatorFault faults[] = {ActuatorFault::kNone, ActuatorFault::kStuckController,
                                  ActuatorFault::kStuckPin};
  int cases = 0;
  for (ActuatorFault fault : faults) {
    for (MechState start : states) {
      // Drive a fresh mechanism to |start| through declared inputs only.
      ReleaseMechanism base({}, 1.0, 1.0, fault);
      bool reachable = true;
      for (int guard = 0; base.state() != start && guard < 200; ++guard) {
        if (base.state() == MechState::kLocked) base.HandleByte(kDeployByte);
        if (base.state() == MechState::kLocked) break;
        base.Advance(kDt, true);
      }
      reachable = base.state() == start;
      if (fault == ActuatorFault::kStuckController) {
        EXPECT_EQ(reachable, start == MechState::kLocked);
      }
      if (fault == ActuatorFault::kStuckPin) {
        EXPECT_EQ(reachable, static_cast<int>(start) <= 1);
      }
      if (!reachable) continue;
      std::size_t prior_events = base.release_count();
      for (int byte = 0; byte < 256; ++byte) {
        for (bool taut : {false, true}) {
          ++cases;
          ReleaseMechanism m = base;
          std::size_t events = prior_events;
          for (int step = 0; step < 80; ++step) {
            MechState before = m.state();
            m.HandleByte(static_cast<std::uint8_t>(byte));
            MechState after_byte = m.state();
            bool arms = before == MechState::kLocked && byte == kDeployByte &&
                        fault != ActuatorFault::kStuckController;
            ASSERT_EQ(after_byte, arms ? MechState::kPinRetracting : before)
                << ToString(fault) << ' ' << ToString(before) << ' ' << byte;
            auto ev = m.Advance(kDt, taut);
            MechState after = m.state();
            if (after != after_byte) {
              ASSERT_EQ(after, Next(after_byte));
              ASSERT_NE(after_byte, MechState::kLocked);
              if (after_byte == MechState::kPinRetracting) {
                ASSERT_NE(fault, ActuatorFault::kStuckPin);
              }
              if (after_byte == MechState::kHookFalling) {
                ASSERT_TRUE(taut);
              }
            }
            ASSERT_EQ(ev.has_value(),
                      after_byte == MechState::kHookFalling && after == MechState::kTetherFree);
            if (ev) ++events;
          }
          ASSERT_LE(events, 1u);
          ASSERT_EQ(events, m.release_count());
        }
      }
    }
  }
  EXPECT_GT(cases, 0);
}

TEST(AC7, MissionReplay) {
  auto start = Clock::now();
  MissionSummary ok = run(testing::NominalMission()).summary;
  EXPECT_TRUE(ok.deploy_position_error && *ok.deploy_position_error < 5.0);
  EXPECT_TRUE(ok.release_time);
  EXPECT_EQ(ok.waypoints_reached, ok.waypoints_total);
  EXPECT_TRUE(ok.rendezvous_reached);
  EXPECT_TRUE(ok.mission_success);
  EXPECT_LT(Seconds(start), 5.0);

  start = Clock::now();
  SimConfig stuck_cfg = testing::NominalMission();
  stuck_cfg.fault = ActuatorFault::kStuckController;
  MissionSummary stuck = run(stuck_cfg).summary;
  EXPECT_TRUE(stuck.deploy_command_time);
  EXPECT_EQ(stuck.auv_final_mode, AuvMode::kStowed);
  EXPECT_EQ(stuck.mech_final_state, MechState::kLocked);
  EXPECT_FALSE(stuck.mission_success);
  EXPECT_LT(Seconds(start), 5.0);
}

TEST(AC8, Determinism) {
  auto start = Clock::now();
  std::vector<SimConfig> configs;
  for (const char* name : {"mission_nominal.cfg", "mission_stuck_controller.cfg",
                           "trigger_deploy.cfg"}) {
    configs.push_back(LoadScenario(std::string(RM2_SCENARIO_DIR) + "/" + name));
  }
  SimConfig noisy = testing::NominalMission();
  noisy.position_noise = 1.0;
  noisy.rng_seed = 99;
  configs.push_back(noisy);
  for (const auto& cfg : configs) {
    std::string a = TelemetryCsv(run(cfg).telemetry);
    std::string b = TelemetryCsv(run(cfg).telemetry);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
  }
  EXPECT_LT(Seconds(start), 10.0);
}

TEST(AC9, NumericalChecks) {
  auto start = Clock::now();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> amp(0.05, 2.0), per(2.0, 30.0), ph(0.0, 6.28),
      xs(-200.0, 200.0), ts(0.0, 600.0), zf(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    WaveField w = WaveField::FromPeriod(amp(rng), per(rng), kStandardGravity, ph(rng));
    double x = xs(rng), t = ts(rng), z = -zf(rng) * w.wavelength() / 4.0;
    double fd = oracle::CentralDifference(
        [&](double xx) { return velocity_potential(w, xx, z, t); }, x, 1e-4);
    worst = std::max(worst, std::abs(surge_velocity(w, x, z, t) - fd));
  }
  EXPECT_LE(worst, 1e-6);

  std::uniform_real_distribution<double> lat0(-80.0, 80.0), lon0(-180.0, 180.0), r(0.0, 10000.0),
      bearing(0.0, 6.283185307179586);
  double worst_deg = 0.0;
  for (int i = 0; i < 20000; ++i) {
    LocalFrame frame({lat0(rng), lon0(rng)});
    double rr = r(rng), b = bearing(rng);
    GeoPoint p = to_geo(frame, {rr * std::cos(b), rr * std::sin(b)});
    GeoPoint back = to_geo(frame, to_local(frame, p));
    worst_deg = std::max({worst_deg, std::abs(back.lat - p.lat),
                          std::abs(WrapLongitudeDelta(back.lon - p.lon))});
  }
  EXPECT_LE(worst_deg, 1e-9);
  EXPECT_LT(Seconds(start), 5.0);
}

// Replaces the default printer with one line per criterion plus the
// assertion text of any failure.
class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestPartResult(const ::testing::TestPartResult& r) override {
    if (r.failed()) {
      std::printf("    %s:%d: %s\n", r.file_name() ? r.file_name() : "?", r.line_number(),
                  r.summary());
    }
  }
  void OnTestEnd(const ::testing::TestInfo& info) override {
    std::printf("%s %s (%s, %lld ms)\n", info.test_suite_name(),
                info.result()->Passed() ? "PASS" : "FAIL", info.name(),
                static_cast<long long>(info.result()->elapsed_time()));
    std::fflush(stdout);
  }
  void OnTestProgramEnd(const ::testing::UnitTest& u) override {
    std::printf("%d/%d criteria passed\n", u.successful_test_count(), u.test_to_run_count());
  }
};

}  // namespace
}  // namespace rm2

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  auto& listeners = ::testing::UnitTest::GetInstance()->listeners();
  delete listeners.Release(listeners.default_result_printer());
  listeners.Append(new rm2::CriterionPrinter);
  return RUN_ALL_TESTS();
}
