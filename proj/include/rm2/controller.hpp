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

#ifndef RM2_CONTROLLER_HPP_
#define RM2_CONTROLLER_HPP_

// Deployment node. Each step it drains the position and trigger topics,
// keeps only the newest value of each, and writes a single 'D' to the
// serial link when the vehicle is strictly inside the tolerance radius of
// the deploy position or the trigger reads true.
//
// The trigger is level-sensitive. Once a 'D' has been written successfully
// the node latches and stays quiet, unless resend_on_trigger is set, in
// which case it writes on every step the condition holds. A failed write
// does not latch; the next step tries again.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rm2/actuator.hpp"
#include "rm2/bus.hpp"
#include "rm2/error.hpp"
#include "rm2/geodesy.hpp"
#include "rm2/serial.hpp"

namespace rm2 {

struct Rm2Params {
  std::optional<GeoPoint> deploy_position;
  // Topic whose boolean value arms the release.
  std::optional<std::string> deploy_trigger;
  double delta_m = 5.0;
  bool resend_on_trigger = false;

  void Validate() const {
    std::vector<std::string> issues;
    if (!deploy_position && !deploy_trigger) {
      issues.push_back("rm2: one of deploy_position or deploy_trigger must be set");
    }
    if (deploy_position && !deploy_position->Valid()) {
      issues.push_back("rm2.deploy_position: out of range");
    }
    if (deploy_trigger) {
      try {
        Topic t(*deploy_trigger);
      } catch (const Error& e) {
        issues.push_back(std::string("rm2.deploy_trigger: ") + e.what());
      }
    }
    if (!(delta_m > 0.0)) issues.push_back("rm2.delta_m: must be > 0");
    if (!issues.empty()) throw ConfigError(std::move(issues));
  }
};

inline GeoPoint parse_deploy_position(std::string_view text) { return ParseLatLon(text); }

struct DeployCommand {
  double time = 0.0;
  // Distance to the deploy position when fired; empty if fired by trigger
  // with no position configured or known.
  std::optional<double> distance;
  bool by_trigger = false;
};

// Writes exactly one 0x44 byte.
inline void send_deploy(SerialLink& link) {
  if (!link.is_open()) throw SerialError("serial link is closed");
  const std::uint8_t byte = kDeployByte;
  link.Write(std::span<const std::uint8_t>(&byte, 1));
}

class Rm2Node {
 public:
  Rm2Node(Rm2Params params, Bus& bus, std::optional<LocalFrame> frame = std::nullopt)
      : params_(std::move(params)), frame_(std::move(frame)) {
    params_.Validate();
    position_sub_ = bus.Subscribe(topics::kPosition);
    if (params_.deploy_trigger) trigger_sub_ = bus.Subscribe(*params_.deploy_trigger);
  }

  void set_frame(LocalFrame frame) { frame_ = std::move(frame); }

  const Rm2Params& params() const noexcept { return params_; }
  const std::optional<LocalPoint>& last_position() const noexcept { return last_position_; }
  bool last_trigger() const noexcept { return last_trigger_; }
  bool deployed() const noexcept { return deployed_; }
  std::size_t send_failures() const noexcept { return send_failures_; }
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  // Deploy position in the node's local frame; throws ConfigError without a
  // frame.
  std::optional<LocalPoint> deploy_local() const {
    if (!params_.deploy_position) return std::nullopt;
    if (!frame_) throw ConfigError("rm2: deploy_position needs a local frame origin");
    return to_local(*frame_, *params_.deploy_position);
  }

  std::optional<DeployCommand> Step(SerialLink& link, double now) {
    for (auto& m : position_sub_.Drain()) {
      if (auto* local = std::get_if<LocalPoint>(&m.payload)) {
        last_position_ = *local;
      } else if (auto* geo = std::get_if<GeoPoint>(&m.payload)) {
        if (!frame_) throw ConfigError("rm2: position update received before frame origin set");
        last_position_ = to_local(*frame_, *geo);
      }
    }
    if (trigger_sub_.valid()) {
      for (auto& m : trigger_sub_.Drain()) {
        if (auto* b = std::get_if<bool>(&m.payload)) last_trigger_ = *b;
      }
    }

    if (deployed_ && !params_.resend_on_trigger) return std::nullopt;

    std::optional<double> distance;
    if (last_position_ && params_.deploy_position) {
      distance = local_distance(*last_position_, *deploy_local());
    }
    bool in_range = distance && *distance < params_.delta_m;
    if (!in_range && !last_trigger_) return std::nullopt;

    try {
      send_deploy(link);
    } catch (const SerialError& e) {
      ++send_failures_;
      diagnostics_.push_back(std::string("deploy send failed: ") + e.what());
      return std::nullopt;
    }
    deployed_ = true;
    return DeployCommand{now, distance, !in_range};
  }

 private:
  Rm2Params params_;
  std::optional<LocalFrame> frame_;
  Subscription position_sub_;
  Subscription trigger_sub_;
  std::optional<LocalPoint> last_position_;
  bool last_trigger_ = false;
  bool deployed_ = false;
  std::size_t send_failures_ = 0;
  std::vector<std::string> diagnostics_;
};

}  // namespace rm2

#endif  // RM2_CONTROLLER_HPP_
