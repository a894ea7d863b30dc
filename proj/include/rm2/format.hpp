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

#ifndef RM2_FORMAT_HPP_
#define RM2_FORMAT_HPP_

// Locale-independent number rendering. Telemetry and reports go through
// these so output is byte-stable across runs and hosts with the same libc++.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace rm2 {

inline std::string FormatFixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::fixed, decimals);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

// `significant` significant figures, never in exponent notation for the
// magnitudes this project prints.
inline std::string FormatSignificant(double value, int significant) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : "inf";
  if (value == 0.0) return FormatFixed(0.0, significant > 1 ? significant - 1 : 0);
  int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  int decimals = significant - 1 - magnitude;
  if (decimals < 0) decimals = 0;
  // Rounding can carry into a new digit (e.g. 9.9996 -> 10.000).
  std::string s = FormatFixed(value, decimals);
  double rounded = std::stod(s);
  if (rounded != 0.0 &&
      static_cast<int>(std::floor(std::log10(std::fabs(rounded)))) > magnitude &&
      decimals > 0) {
    s = FormatFixed(value, decimals - 1);
  }
  return s;
}

// Strict full-token double parse. Returns nullopt on any trailing garbage.
inline std::optional<double> ParseDouble(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double out = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(out)) return std::nullopt;
  return out;
}

}  // namespace rm2

#endif  // RM2_FORMAT_HPP_
