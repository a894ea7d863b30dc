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

#ifndef RM2_ERROR_HPP_
#define RM2_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace rm2 {

// Base of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `index` is the 1-based token/pair index when the
// input is a list, otherwise 0.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t index = 0)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// A point too far from the local frame origin for the tangent-plane
// approximation.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration. Carries one message per offending
// field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : Error(Join(issues)), issues_(std::move(issues)) {}
  explicit ConfigError(const std::string& issue)
      : ConfigError(std::vector<std::string>{issue}) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string Join(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& s : issues) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

// Bench geometry whose arcsin argument leaves [-1, 1].
class GeometryInfeasible : public DomainError {
 public:
  GeometryInfeasible(const std::string& what, double ratio)
      : DomainError(what), ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

// Publishing a payload whose type differs from the topic's first payload.
class BusTypeError : public Error {
 public:
  using Error::Error;
};

// Serial write on a closed or failing link.
class SerialError : public Error {
 public:
  using Error::Error;
};

// Towline tension above the line's safe working load.
class RatedLoadExceeded : public Error {
 public:
  RatedLoadExceeded(const std::string& what, double tension, double rated)
      : Error(what), tension_(tension), rated_(rated) {}
  double tension() const noexcept { return tension_; }
  double rated_load() const noexcept { return rated_; }

 private:
  double tension_;
  double rated_;
};

}  // namespace rm2

#endif  // RM2_ERROR_HPP_
