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

#ifndef RM2_BUS_HPP_
#define RM2_BUS_HPP_

// In-process topic bus. Topics are latched: the last published value is
// cached and handed to every new subscriber before anything else. Delivery
// is pull-based; a Subscription owns a FIFO that the holder drains when it
// is stepped.
//
// Ordering: messages of one topic reach each subscriber in publish (seq)
// order with no gaps after the subscription point. Nothing is promised
// about the relative order of messages on different topics.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rm2/error.hpp"
#include "rm2/geodesy.hpp"

namespace rm2 {

namespace topics {
inline constexpr const char* kPosition = "POSITION";
inline constexpr const char* kDeployTrigger = "DEPLOY_TRIGGER";
inline constexpr const char* kWaypointUpdate = "WAYPT_UPDATE";
inline constexpr const char* kDeployEvent = "DEPLOY_EVENT";
}  // namespace topics

class Topic {
 public:
  Topic(std::string name) : name_(std::move(name)) {  // NOLINT(google-explicit-constructor)
    if (name_.empty()) throw Error("topic name must not be empty");
    if (std::any_of(name_.begin(), name_.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      throw Error("topic name must not contain whitespace: \"" + name_ + "\"");
    }
  }
  Topic(const char* name) : Topic(std::string(name)) {}  // NOLINT(google-explicit-constructor)

  const std::string& name() const noexcept { return name_; }
  friend bool operator==(const Topic&, const Topic&) = default;
  friend auto operator<=>(const Topic&, const Topic&) = default;

 private:
  std::string name_;
};

using Payload = std::variant<LocalPoint, GeoPoint, bool, std::string>;

inline const char* PayloadTypeName(const Payload& p) {
  switch (p.index()) {
    case 0: return "LocalPoint";
    case 1: return "GeoPoint";
    case 2: return "bool";
    default: return "string";
  }
}

struct Message {
  Topic topic;
  Payload payload;
  double timestamp = 0.0;  // simulation time [s]
  std::uint64_t seq = 0;   // 1-based, per topic
};

class Bus;

// Handle to a subscriber queue. Dropping it unsubscribes.
class Subscription {
 public:
  Subscription() = default;

  const Topic& topic() const { return queue_->topic; }
  bool valid() const noexcept { return queue_ != nullptr; }

  std::optional<Message> Poll() {
    std::lock_guard lock(queue_->mu);
    if (queue_->pending.empty()) return std::nullopt;
    Message m = std::move(queue_->pending.front());
    queue_->pending.pop_front();
    return m;
  }

  std::vector<Message> Drain() {
    std::lock_guard lock(queue_->mu);
    std::vector<Message> out(std::make_move_iterator(queue_->pending.begin()),
                             std::make_move_iterator(queue_->pending.end()));
    queue_->pending.clear();
    return out;
  }

  std::size_t Pending() const {
    std::lock_guard lock(queue_->mu);
    return queue_->pending.size();
  }

 private:
  friend class Bus;
  struct Queue {
    explicit Queue(Topic t) : topic(std::move(t)) {}
    Topic topic;
    mutable std::mutex mu;
    std::deque<Message> pending;
  };
  explicit Subscription(std::shared_ptr<Queue> q) : queue_(std::move(q)) {}

  std::shared_ptr<Queue> queue_;
};

class Bus {
 public:
  using HighWaterCallback = std::function<void(const Topic&, std::size_t)>;

  Bus() = default;
  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  // Warn (once per crossing) when any subscriber queue grows past `limit`.
  void SetHighWater(std::size_t limit, HighWaterCallback cb) {
    std::lock_guard lock(mu_);
    high_water_ = limit;
    on_high_water_ = std::move(cb);
  }

  std::uint64_t Publish(const Topic& topic, Payload payload, double timestamp) {
    std::vector<std::pair<Topic, std::size_t>> warnings;
    std::uint64_t seq = 0;
    HighWaterCallback cb;
    {
      std::lock_guard lock(mu_);
      TopicState& ts = topics_[topic];
      if (ts.type_index && *ts.type_index != payload.index()) {
        throw BusTypeError("topic " + topic.name() + " carries " +
                           PayloadTypeName(ts.latched->payload) + ", got " +
                           PayloadTypeName(payload));
      }
      if (ts.latched && timestamp < ts.latched->timestamp) {
        throw Error("topic " + topic.name() + ": timestamp went backwards");
      }
      ts.type_index = payload.index();
      seq = ++ts.seq;
      ts.latched = Message{topic, std::move(payload), timestamp, seq};

      auto& subs = ts.subscribers;
      subs.erase(std::remove_if(subs.begin(), subs.end(),
                                [](const auto& w) { return w.expired(); }),
                 subs.end());
      for (auto& weak : subs) {
        auto q = weak.lock();
        std::lock_guard qlock(q->mu);
        q->pending.push_back(*ts.latched);
        if (high_water_ && q->pending.size() == high_water_ + 1) {
          warnings.emplace_back(topic, q->pending.size());
        }
      }
      high_water_hits_ += warnings.size();
      if (!warnings.empty()) cb = on_high_water_;
    }
    if (cb) {
      for (auto& [t, n] : warnings) cb(t, n);
    }
    return seq;
  }

  Subscription Subscribe(const Topic& topic) {
    std::lock_guard lock(mu_);
    auto q = std::make_shared<Subscription::Queue>(topic);
    TopicState& ts = topics_[topic];
    if (ts.latched) q->pending.push_back(*ts.latched);
    ts.subscribers.push_back(q);
    return Subscription(std::move(q));
  }

  std::optional<Message> Latest(const Topic& topic) const {
    std::lock_guard lock(mu_);
    auto it = topics_.find(topic);
    if (it == topics_.end()) return std::nullopt;
    return it->second.latched;
  }

  std::size_t high_water_hits() const {
    std::lock_guard lock(mu_);
    return high_water_hits_;
  }

 private:
  struct TopicState {
    std::optional<std::size_t> type_index;
    std::optional<Message> latched;
    std::uint64_t seq = 0;
    std::vector<std::weak_ptr<Subscription::Queue>> subscribers;
  };

  mutable std::mutex mu_;
  std::map<Topic, TopicState> topics_;
  std::size_t high_water_ = 0;
  HighWaterCallback on_high_water_;
  std::size_t high_water_hits_ = 0;
};

}  // namespace rm2

#endif  // RM2_BUS_HPP_
