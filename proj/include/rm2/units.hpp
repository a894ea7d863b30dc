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

#ifndef RM2_UNITS_HPP_
#define RM2_UNITS_HPP_

#include <numbers>

namespace rm2 {

// 1 international knot in m/s (1852 m / 3600 s, rounded as used at the
// interfaces).
inline constexpr double kMetersPerSecondPerKnot = 0.514444;
inline constexpr double kStandardGravity = 9.81;

constexpr double KnotsToMps(double knots) { return knots * kMetersPerSecondPerKnot; }
constexpr double MpsToKnots(double mps) { return mps / kMetersPerSecondPerKnot; }
constexpr double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace rm2

#endif  // RM2_UNITS_HPP_
