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

#ifndef RM2_SERIAL_HPP_
#define RM2_SERIAL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "rm2/error.hpp"

namespace rm2 {

// One-way byte channel from the control node to the actuator controller.
// No framing, checksum or acknowledgement.
class SerialLink {
 public:
  virtual ~SerialLink() = default;
  virtual bool is_open() const = 0;
  // Throws SerialError if the bytes could not be written.
  virtual void Write(std::span<const std::uint8_t> bytes) = 0;
};

// In-memory link. Bytes written are held until the receiving side drains
// them.
class VirtualSerialLink : public SerialLink {
 public:
  explicit VirtualSerialLink(bool open = true) : open_(open) {}

  bool is_open() const override { return open_; }
  void set_open(bool open) { open_ = open; }

  void Write(std::span<const std::uint8_t> bytes) override {
    if (!open_) throw SerialError("serial link is closed");
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
    written_ += bytes.size();
  }

  std::vector<std::uint8_t> Drain() {
    std::vector<std::uint8_t> out;
    out.swap(buffer_);
    return out;
  }

  const std::vector<std::uint8_t>& pending() const noexcept { return buffer_; }
  std::size_t total_written() const noexcept { return written_; }

 private:
  bool open_;
  std::vector<std::uint8_t> buffer_;
  std::size_t written_ = 0;
};

}  // namespace rm2

#endif  // RM2_SERIAL_HPP_
