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

#ifndef RM2_GEODESY_HPP_
#define RM2_GEODESY_HPP_

// Geodetic <-> local east/north conversion about a mission origin on a
// spherical earth. The projection is equirectangular with the east scale
// taken at the mid-latitude between the point and the origin, which keeps
// it an exact algebraic inverse pair while holding the scale error under
// 0.1% within 5 km of the origin up to 60 degrees latitude.

#include <cmath>
#include <string>
#include <string_view>

#include "rm2/error.hpp"
#include "rm2/format.hpp"
#include "rm2/units.hpp"

namespace rm2 {

inline constexpr double kEarthRadius = 6371000.0;
// Beyond this the tangent-plane approximation is not trusted.
inline constexpr double kMaxLocalRange = 100000.0;

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180)

  bool Valid() const noexcept {
    return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
           lon >= -180.0 && lon < 180.0;
  }
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct LocalPoint {
  double x = 0.0;  // m east
  double y = 0.0;  // m north

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
};

// Wraps degrees into [-180, 180).
inline double WrapLongitude(double lon) {
  double w = std::fmod(lon + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  return w - 180.0;
}

// Wraps a longitude difference into (-180, 180].
inline double WrapLongitudeDelta(double dlon) {
  double w = std::fmod(dlon, 360.0);
  if (w > 180.0) w -= 360.0;
  if (w <= -180.0) w += 360.0;
  return w;
}

inline void CheckGeoPoint(const GeoPoint& p, std::string_view what) {
  if (!std::isfinite(p.lat) || p.lat < -90.0 || p.lat > 90.0) {
    throw RangeError(std::string(what) + ": latitude out of range");
  }
  if (!std::isfinite(p.lon) || p.lon < -180.0 || p.lon >= 180.0) {
    throw RangeError(std::string(what) + ": longitude out of range");
  }
}

class LocalFrame {
 public:
  explicit LocalFrame(GeoPoint origin, double earth_radius = kEarthRadius)
      : origin_(origin), radius_(earth_radius) {
    CheckGeoPoint(origin, "frame origin");
    if (!(earth_radius > 0.0) || !std::isfinite(earth_radius)) {
      throw DomainError("frame: earth radius must be > 0");
    }
  }

  const GeoPoint& origin() const noexcept { return origin_; }
  double earth_radius() const noexcept { return radius_; }

 private:
  GeoPoint origin_;
  double radius_;
};

inline LocalPoint to_local(const LocalFrame& frame, const GeoPoint& p) {
  CheckGeoPoint(p, "to_local");
  const GeoPoint& o = frame.origin();
  double dlat = DegToRad(p.lat - o.lat);
  double dlon = DegToRad(WrapLongitudeDelta(p.lon - o.lon));
  double mid = DegToRad(0.5 * (p.lat + o.lat));
  LocalPoint out{frame.earth_radius() * std::cos(mid) * dlon,
                 frame.earth_radius() * dlat};
  if (std::hypot(out.x, out.y) > kMaxLocalRange) {
    throw RangeError("to_local: point is more than 100 km from the frame origin");
  }
  return out;
}

inline GeoPoint to_geo(const LocalFrame& frame, const LocalPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw DomainError("to_geo: local point must be finite");
  }
  const GeoPoint& o = frame.origin();
  double lat = o.lat + RadToDeg(p.y / frame.earth_radius());
  if (lat < -90.0 || lat > 90.0) throw RangeError("to_geo: latitude out of range");
  double c = std::cos(DegToRad(0.5 * (lat + o.lat)));
  if (!(c > 0.0)) {
    if (p.x != 0.0) throw RangeError("to_geo: east offset undefined at the pole");
    c = 1.0;
  }
  double dlon = RadToDeg(p.x / (frame.earth_radius() * c));
  if (std::fabs(dlon) > 180.0) throw RangeError("to_geo: longitude out of range");
  return GeoPoint{lat, WrapLongitude(o.lon + dlon)};
}

inline double local_distance(const LocalPoint& a, const LocalPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// "lat,lon" in decimal degrees; whitespace allowed around either number.
inline GeoPoint ParseLatLon(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("expected \"lat,lon\" but got \"" + std::string(text) + "\"");
  }
  auto lat = ParseDouble(text.substr(0, comma));
  if (!lat) throw ParseError("latitude is not a number: \"" + std::string(text) + "\"", 1);
  auto lon = ParseDouble(text.substr(comma + 1));
  if (!lon) throw ParseError("longitude is not a number: \"" + std::string(text) + "\"", 2);
  if (*lat < -90.0 || *lat > 90.0) throw ParseError("latitude out of range", 1);
  if (*lon < -180.0 || *lon >= 180.0) throw ParseError("longitude out of range", 2);
  return GeoPoint{*lat, *lon};
}

inline std::string FormatLatLon(const GeoPoint& p) {
  return FormatFixed(p.lat, 9) + "," + FormatFixed(p.lon, 9);
}

}  // namespace rm2

#endif  // RM2_GEODESY_HPP_
