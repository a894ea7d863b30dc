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

#ifndef RM2_TESTS_ORACLES_HPP_
#define RM2_TESTS_ORACLES_HPP_

// Reference computations used only by tests. Nothing here may call into the
// code path it is checking.

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace rm2::oracle {

inline double Deg(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double Rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Great-circle distance on a sphere.
inline double Haversine(double lat1, double lon1, double lat2, double lon2,
                        double radius = 6371000.0) {
  double p1 = Rad(lat1), p2 = Rad(lat2);
  double dp = p2 - p1, dl = Rad(lon2 - lon1);
  double h = std::sin(dp / 2) * std::sin(dp / 2) +
             std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * radius * std::asin(std::sqrt(h));
}

template <typename F>
double CentralDifference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// phi(x, z, t) = (g A / w) e^{kz} sin(kx - wt + phase), written out from the
// wave parameters alone.
struct PotentialOracle {
  double amplitude, period, gravity, phase;
  double operator()(double x, double z, double t) const {
    double w = 2.0 * std::numbers::pi / period;
    double k = w * w / gravity;
    return gravity * amplitude / w * std::exp(k * z) * std::sin(k * x - w * t + phase);
  }
};

// One observation delivered to the deployment node between two steps.
struct TraceEvent {
  enum Kind { kPosition, kTrigger } kind;
  double x = 0.0, y = 0.0;
  bool trigger = false;
};

// Straight transliteration of the deployment loop with a one-shot latch:
//
//   x' <- latest position update
//   T' <- latest trigger update
//   if |x' - x| < delta or T' = true: write 'D'
//
// Returns, per step, whether 'D' was written.
inline std::vector<bool> DeployLoopReference(const std::vector<std::vector<TraceEvent>>& steps,
                                             double target_x, double target_y, bool has_target,
                                             double delta) {
  std::vector<bool> fired;
  bool have_pos = false, trig = false, latched = false;
  double px = 0.0, py = 0.0;
  for (const auto& batch : steps) {
    for (const auto& e : batch) {
      if (e.kind == TraceEvent::kPosition) {
        have_pos = true;
        px = e.x;
        py = e.y;
      } else {
        trig = e.trigger;
      }
    }
    bool near = false;
    if (has_target && have_pos) {
      double dx = px - target_x, dy = py - target_y;
      near = std::sqrt(dx * dx + dy * dy) < delta;
    }
    bool fire = !latched && (near || trig);
    if (fire) latched = true;
    fired.push_back(fire);
  }
  return fired;
}

}  // namespace rm2::oracle

#endif  // RM2_TESTS_ORACLES_HPP_
