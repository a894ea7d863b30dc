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

#ifndef RM2_PHYSICS_HPP_
#define RM2_PHYSICS_HPP_

// Closed-form hydrodynamics of a body towed at the surface: steady towline
// tension from quadratic drag, and the first-order plane progressive wave
// that perturbs it.
//
// Sign conventions: x is the direction of travel of the towing vessel and of
// wave propagation; z is vertical, zero at the mean free surface and negative
// below it.

#include <cmath>
#include <numbers>
#include <string>

#include "rm2/error.hpp"
#include "rm2/units.hpp"

namespace rm2 {

struct TowConfig {
  double rho = 1020.0;        // fluid density [kg/m^3]
  double c_d = 0.42;          // drag coefficient (half-sphere nose)
  double sigma = 0.057;       // effective cross-sectional area [m^2]
  double theta = DegToRad(45.0);  // towline angle above horizontal [rad]
  double rated_load = 2000.0;     // towline safe working load [N]

  // Throws DomainError naming the first violated field.
  void Validate() const {
    if (!(rho > 0.0)) throw DomainError("tow: rho must be > 0");
    if (!(c_d > 0.0)) throw DomainError("tow: c_d must be > 0");
    if (!(sigma > 0.0)) throw DomainError("tow: sigma must be > 0");
    if (!(rated_load > 0.0)) throw DomainError("tow: rated_load must be > 0");
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) {
      throw DomainError("tow: theta must lie in [0, pi/2)");
    }
  }
};

// Monochromatic deep-water wave. Build with WaveField::FromPeriod so the
// derived frequency and wavenumber stay consistent with the period.
class WaveField {
 public:
  // Flat sea, 1 s period.
  WaveField() = default;

  static WaveField FromPeriod(double amplitude, double period,
                              double gravity = kStandardGravity,
                              double phase = 0.0) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
      throw DomainError("wave: amplitude must be >= 0");
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw DomainError("wave: period must be > 0");
    }
    if (!(gravity > 0.0) || !std::isfinite(gravity)) {
      throw DomainError("wave: gravity must be > 0");
    }
    if (!std::isfinite(phase)) throw DomainError("wave: phase must be finite");
    WaveField w;
    w.amplitude_ = amplitude;
    w.period_ = period;
    w.gravity_ = gravity;
    w.phase_ = phase;
    w.omega_ = 2.0 * std::numbers::pi / period;
    // Deep-water dispersion.
    w.k_ = w.omega_ * w.omega_ / gravity;
    return w;
  }

  double amplitude() const noexcept { return amplitude_; }
  double period() const noexcept { return period_; }
  double gravity() const noexcept { return gravity_; }
  double phase() const noexcept { return phase_; }
  double angular_frequency() const noexcept { return omega_; }
  double wavenumber() const noexcept { return k_; }
  double wavelength() const noexcept { return 2.0 * std::numbers::pi / k_; }

  // kx - wt + phase
  double Argument(double x, double t) const noexcept {
    return k_ * x - omega_ * t + phase_;
  }

 private:
  double amplitude_ = 0.0;
  double period_ = 1.0;
  double gravity_ = kStandardGravity;
  double phase_ = 0.0;
  double omega_ = 2.0 * std::numbers::pi;
  double k_ = 4.0 * std::numbers::pi * std::numbers::pi / kStandardGravity;
};

// (rho/2) C_D sigma v^2
inline double drag_force(const TowConfig& cfg, double speed) {
  if (!(speed >= 0.0)) throw DomainError("drag_force: speed must be >= 0");
  return 0.5 * cfg.rho * cfg.c_d * cfg.sigma * speed * speed;
}

// Towline tension balancing the along-track drag: T cos(theta) = drag.
inline double tow_tension(const TowConfig& cfg, double speed) {
  if (!(speed >= 0.0)) throw DomainError("tow_tension: speed must be >= 0");
  cfg.Validate();
  return cfg.rho / (2.0 * std::cos(cfg.theta)) * cfg.c_d * cfg.sigma * speed * speed;
}

inline double velocity_potential(const WaveField& w, double x, double z, double t) {
  if (z > 0.0) throw DomainError("velocity_potential: z must be <= 0");
  return w.gravity() * w.amplitude() / w.angular_frequency() *
         std::exp(w.wavenumber() * z) * std::sin(w.Argument(x, t));
}

// u = d(phi)/dx
inline double surge_velocity(const WaveField& w, double x, double z, double t) {
  if (z > 0.0) throw DomainError("surge_velocity: z must be <= 0");
  return w.amplitude() * w.angular_frequency() * std::exp(w.wavenumber() * z) *
         std::cos(w.Argument(x, t));
}

// Peak surface surge velocity, A*omega. A tow speed at or above this keeps
// the line from going slack at any wave phase.
inline double min_release_speed(const WaveField& w) {
  return w.amplitude() * w.angular_frequency();
}

inline bool assured_release(double tow_speed, const WaveField& w) {
  if (!(tow_speed >= 0.0)) throw DomainError("assured_release: speed must be >= 0");
  return tow_speed >= min_release_speed(w);
}

}  // namespace rm2

#endif  // RM2_PHYSICS_HPP_
