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

#ifndef RM2_ACTUATOR_HPP_
#define RM2_ACTUATOR_HPP_

// Virtual low-level release controller. A 'D' on the serial line retracts
// the locking pin; with the pin out the hook falls open under gravity; the
// tether then slides free, but only while the towline is taut.
//
//   LOCKED -> PIN_RETRACTING -> HOOK_FALLING -> TETHER_FREE
//
// There is no reverse path and no reset command.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rm2/error.hpp"

namespace rm2 {

inline constexpr std::uint8_t kDeployByte = 0x44;  // 'D'

enum class MechState { kLocked, kPinRetracting, kHookFalling, kTetherFree };
enum class ActuatorFault { kNone, kStuckController, kStuckPin };

inline const char* ToString(MechState s) {
  switch (s) {
    case MechState::kLocked: return "LOCKED";
    case MechState::kPinRetracting: return "PIN_RETRACTING";
    case MechState::kHookFalling: return "HOOK_FALLING";
    case MechState::kTetherFree: return "TETHER_FREE";
  }
  return "?";
}

inline const char* ToString(ActuatorFault f) {
  switch (f) {
    case ActuatorFault::kNone: return "none";
    case ActuatorFault::kStuckController: return "stuck_controller";
    case ActuatorFault::kStuckPin: return "stuck_pin";
  }
  return "?";
}

inline std::optional<ActuatorFault> ParseFault(std::string_view s) {
  if (s == "none" || s == "NONE") return ActuatorFault::kNone;
  if (s == "stuck_controller" || s == "STUCK_CONTROLLER" || s == "stuck-controller") {
    return ActuatorFault::kStuckController;
  }
  if (s == "stuck_pin" || s == "STUCK_PIN" || s == "stuck-pin") return ActuatorFault::kStuckPin;
  return std::nullopt;
}

// Physical constants of the release unit.
struct ActuatorSpec {
  double force = 1468.0;   // N
  double stroke = 0.0508;  // m
  double mass = 3.95;      // kg

  void Validate() const {
    if (!(force > 0.0)) throw DomainError("actuator: force must be > 0");
    if (!(stroke > 0.0)) throw DomainError("actuator: stroke must be > 0");
    if (!(mass > 0.0)) throw DomainError("actuator: mass must be > 0");
  }
};

struct ReleaseEvent {
  double time = 0.0;  // mechanism clock [s]
};

class ReleaseMechanism {
 public:
  struct LogEntry {
    double time;
    std::string text;
  };

  explicit ReleaseMechanism(ActuatorSpec spec = {}, double actuation_time = 1.0,
                            double hook_fall_time = 1.0,
                            ActuatorFault fault = ActuatorFault::kNone)
      : spec_(spec),
        actuation_time_(actuation_time),
        hook_fall_time_(hook_fall_time),
        fault_(fault) {
    spec_.Validate();
    if (!(actuation_time > 0.0)) throw DomainError("actuator: actuation_time must be > 0");
    if (!(hook_fall_time >= 0.0)) throw DomainError("actuator: hook_fall_time must be >= 0");
  }

  MechState state() const noexcept { return state_; }
  ActuatorFault fault() const noexcept { return fault_; }
  double stroke_progress() const noexcept { return stroke_progress_; }
  double clock() const noexcept { return clock_; }
  double actuation_time() const noexcept { return actuation_time_; }
  double hook_fall_time() const noexcept { return hook_fall_time_; }
  const ActuatorSpec& spec() const noexcept { return spec_; }
  const std::vector<LogEntry>& log() const noexcept { return log_; }
  std::size_t release_count() const noexcept { return releases_; }

  void HandleByte(std::uint8_t b) {
    if (b != kDeployByte) {
      log_.push_back({clock_, "ignored unknown byte 0x" + Hex(b)});
      return;
    }
    if (state_ != MechState::kLocked) return;  // repeated 'D' has no effect
    if (fault_ == ActuatorFault::kStuckController) {
      log_.push_back({clock_, "deploy command received; controller did not actuate"});
      return;
    }
    state_ = MechState::kPinRetracting;
    phase_time_ = 0.0;
  }

  // Moves the mechanism forward by dt. Returns the release event on the call
  // that reaches TETHER_FREE.
  std::optional<ReleaseEvent> Advance(double dt, bool line_taut) {
    if (!(dt > 0.0)) throw DomainError("actuator: dt must be > 0");
    clock_ += dt;
    switch (state_) {
      case MechState::kLocked:
      case MechState::kTetherFree:
        return std::nullopt;
      case MechState::kPinRetracting:
        if (fault_ == ActuatorFault::kStuckPin) return std::nullopt;
        phase_time_ += dt;
        stroke_progress_ = spec_.stroke * std::min(1.0, phase_time_ / actuation_time_);
        if (phase_time_ + kTimeEps < actuation_time_) return std::nullopt;
        stroke_progress_ = spec_.stroke;
        state_ = MechState::kHookFalling;
        phase_time_ = 0.0;
        return std::nullopt;
      case MechState::kHookFalling:
        phase_time_ += dt;
        // Slack line stalls the pull-through until it tightens again.
        if (phase_time_ + kTimeEps < hook_fall_time_ || !line_taut) return std::nullopt;
        state_ = MechState::kTetherFree;
        ++releases_;
        return ReleaseEvent{clock_};
    }
    return std::nullopt;
  }

 private:
  // Absorbs accumulation error from summing a fixed dt.
  static constexpr double kTimeEps = 1e-9;

  static std::string Hex(std::uint8_t b) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    return {kDigits[b >> 4], kDigits[b & 0xF]};
  }

  ActuatorSpec spec_;
  double actuation_time_;
  double hook_fall_time_;
  ActuatorFault fault_;
  MechState state_ = MechState::kLocked;
  double stroke_progress_ = 0.0;
  double phase_time_ = 0.0;
  double clock_ = 0.0;
  std::size_t releases_ = 0;
  std::vector<LogEntry> log_;
};

}  // namespace rm2

#endif  // RM2_ACTUATOR_HPP_
