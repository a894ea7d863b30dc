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

#ifndef RM2_BENCHLAB_HPP_
#define RM2_BENCHLAB_HPP_

// Tether-angle geometry for the heave bench test.
//
// At sea the tether runs from the payload tray, a height H above the mean
// water line, down to the towed body. At a trough of depth |h'_min| the
// angle to the horizontal is largest,
//
//   theta_trough = asin((H + |h'_min|) / l),
//
// and at a crest of height h'_max it is smallest,
//
//   theta_crest = asin((H - h'_max) / l).
//
// On the bench h' is the height of the test weight above the floor, so both
// extremes use asin((H - h') / l). Angles are computed in radians and
// reported in degrees.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rm2/error.hpp"
#include "rm2/format.hpp"
#include "rm2/units.hpp"

namespace rm2 {

struct BenchGeometry {
  double tether_length = 0.0;  // l [m]
  double bench_height = 0.0;   // H [m]
  double wave_trough = 0.0;    // h'_min [m]
  double wave_crest = 0.0;     // h'_max [m]

  void Validate() const {
    if (!(tether_length > 0.0)) throw DomainError("bench: tether_length must be > 0");
    if (!(bench_height > 0.0)) throw DomainError("bench: bench_height must be > 0");
  }
};

namespace bench_detail {

inline double AsinDegrees(double numerator, double tether_length, const char* what) {
  double ratio = numerator / tether_length;
  if (!std::isfinite(ratio) || ratio < -1.0 || ratio > 1.0) {
    throw GeometryInfeasible(std::string(what) + ": geometry infeasible, asin ratio " +
                                 FormatFixed(ratio, 4) + " outside [-1, 1]",
                             ratio);
  }
  return RadToDeg(std::asin(ratio));
}

}  // namespace bench_detail

inline double theta_trough(const BenchGeometry& g) {
  g.Validate();
  return bench_detail::AsinDegrees(g.bench_height + std::fabs(g.wave_trough), g.tether_length,
                                   "theta_trough");
}

inline double theta_crest(const BenchGeometry& g) {
  g.Validate();
  return bench_detail::AsinDegrees(g.bench_height - g.wave_crest, g.tether_length,
                                   "theta_crest");
}

inline double theta_experimental(const BenchGeometry& g, double h_prime) {
  g.Validate();
  return bench_detail::AsinDegrees(g.bench_height - h_prime, g.tether_length,
                                   "theta_experimental");
}

// Bench rig that reproduces the sea-state extremes of `real` with the weight
// heights h' = H - l sin(theta). Without an explicit tether length the
// longest tether that keeps the trough weight off the floor is used,
// l = bench_H / sin(theta_trough).
inline BenchGeometry scale_to_bench(const BenchGeometry& real, double bench_height,
                                    std::optional<double> tether_length = std::nullopt) {
  if (!(bench_height > 0.0)) throw DomainError("scale_to_bench: bench height must be > 0");
  double trough = DegToRad(theta_trough(real));
  double crest = DegToRad(theta_crest(real));
  double s_max = std::max(std::sin(trough), std::sin(crest));
  double l = 0.0;
  if (tether_length) {
    l = *tether_length;
    if (!(l > 0.0)) throw DomainError("scale_to_bench: tether length must be > 0");
  } else {
    if (!(s_max > 0.0)) {
      throw GeometryInfeasible("scale_to_bench: no positive angle to scale", s_max);
    }
    l = bench_height / s_max;
  }
  BenchGeometry exp{l, bench_height, bench_height - l * std::sin(trough),
                    bench_height - l * std::sin(crest)};
  // A weight below the floor cannot be rigged.
  constexpr double kFloorTol = 1e-12;
  if (exp.wave_trough < -kFloorTol || exp.wave_crest < -kFloorTol) {
    throw GeometryInfeasible(
        "scale_to_bench: no feasible bench geometry at H=" + FormatFixed(bench_height, 3) +
            " m with l=" + FormatFixed(l, 3) + " m",
        l * s_max / bench_height);
  }
  if (exp.wave_trough < 0.0) exp.wave_trough = 0.0;
  if (exp.wave_crest < 0.0) exp.wave_crest = 0.0;
  return exp;
}

struct ReportRow {
  std::string column;  // "real" or "experimental"
  std::string quantity;
  std::string relation;
  std::optional<double> computed;  // degrees; empty when infeasible
  double ratio = 0.0;              // asin argument
  std::optional<double> tabulated;
  bool feasible = true;
  bool matches = false;  // |computed - tabulated| <= tolerance

  std::optional<double> difference() const {
    if (!computed || !tabulated) return std::nullopt;
    return std::fabs(*computed - *tabulated);
  }
};

struct TabulatedAngles {
  std::optional<double> trough;
  std::optional<double> crest;
};

struct BenchReport {
  std::vector<ReportRow> rows;
  double tolerance = 0.05;

  const ReportRow* Find(const std::string& column, const std::string& quantity) const {
    for (const auto& r : rows) {
      if (r.column == column && r.quantity == quantity) return &r;
    }
    return nullptr;
  }

  std::string ToCsv() const {
    std::ostringstream os;
    os << "column,quantity,relation,ratio,computed_deg,tabulated_deg,abs_diff_deg,feasible,"
          "matches\n";
    for (const auto& r : rows) {
      os << r.column << ',' << r.quantity << ',' << r.relation << ',' << FormatFixed(r.ratio, 4)
         << ',' << (r.computed ? FormatFixed(*r.computed, 2) : "") << ','
         << (r.tabulated ? FormatFixed(*r.tabulated, 2) : "") << ','
         << (r.difference() ? FormatFixed(*r.difference(), 2) : "") << ','
         << (r.feasible ? "yes" : "no") << ',' << (r.matches ? "yes" : "no") << '\n';
    }
    return os.str();
  }

  std::string ToText() const {
    std::ostringstream os;
    auto pad = [](std::string s, std::size_t w) {
      if (s.size() < w) s.append(w - s.size(), ' ');
      return s;
    };
    os << pad("column", 14) << pad("quantity", 26) << pad("relation", 18) << pad("ratio", 9)
       << pad("computed", 10) << pad("table", 8) << pad("|diff|", 8) << pad("feasible", 10)
       << "match\n";
    for (const auto& r : rows) {
      os << pad(r.column, 14) << pad(r.quantity, 26) << pad(r.relation, 18)
         << pad(FormatFixed(r.ratio, 4), 9)
         << pad(r.computed ? FormatFixed(*r.computed, 2) : "-", 10)
         << pad(r.tabulated ? FormatFixed(*r.tabulated, 2) : "-", 8)
         << pad(r.difference() ? FormatFixed(*r.difference(), 2) : "-", 8)
         << pad(r.feasible ? "yes" : "NO", 10) << (r.matches ? "yes" : "NO") << '\n';
    }
    return os.str();
  }
};

namespace bench_detail {

inline ReportRow MakeRow(std::string column, std::string quantity, std::string relation,
                         double numerator, double tether_length,
                         std::optional<double> tabulated, double tol) {
  ReportRow row;
  row.column = std::move(column);
  row.quantity = std::move(quantity);
  row.relation = std::move(relation);
  row.ratio = numerator / tether_length;
  row.tabulated = tabulated;
  row.feasible = std::isfinite(row.ratio) && row.ratio >= -1.0 && row.ratio <= 1.0;
  if (row.feasible) row.computed = RadToDeg(std::asin(row.ratio));
  row.matches = row.difference() && *row.difference() <= tol;
  return row;
}

}  // namespace bench_detail

// Evaluates the trough and crest relations on both columns against the
// tabulated angles. Infeasible geometry becomes a flagged row, never an
// exception. The literal signed reading of the real trough, H + h'_min with
// h'_min < 0, is reported alongside the depth reading.
inline BenchReport bench_report(const BenchGeometry& real, const BenchGeometry& exp,
                                  TabulatedAngles real_tab = {}, TabulatedAngles exp_tab = {},
                                  double tolerance = 0.05) {
  using bench_detail::MakeRow;
  BenchReport rep;
  rep.tolerance = tolerance;
  rep.rows.push_back(MakeRow("real", "theta_trough", "(H+|h'min|)/l",
                             real.bench_height + std::fabs(real.wave_trough),
                             real.tether_length, real_tab.trough, tolerance));
  rep.rows.push_back(MakeRow("real", "theta_trough_signed", "(H+h'min)/l",
                             real.bench_height + real.wave_trough, real.tether_length,
                             real_tab.trough, tolerance));
  rep.rows.push_back(MakeRow("real", "theta_crest", "(H-h'max)/l",
                             real.bench_height - real.wave_crest, real.tether_length,
                             real_tab.crest, tolerance));
  rep.rows.push_back(MakeRow("experimental", "theta_trough", "(H-h'min)/l",
                             exp.bench_height - exp.wave_trough, exp.tether_length,
                             exp_tab.trough, tolerance));
  rep.rows.push_back(MakeRow("experimental", "theta_crest", "(H-h'max)/l",
                             exp.bench_height - exp.wave_crest, exp.tether_length,
                             exp_tab.crest, tolerance));
  return rep;
}

// Published bench-test dimensions and tabulated angles.
struct ReferenceBenchTable {
  BenchGeometry real{1.27, 0.762, -0.50, 0.50};
  BenchGeometry experimental{0.537, 0.762, 0.152, 0.532};
  TabulatedAngles real_angles{83.57, 16.66};
  TabulatedAngles experimental_angles{83.57, 16.66};
};

inline BenchReport reference_bench_report() {
  ReferenceBenchTable t;
  return bench_report(t.real, t.experimental, t.real_angles, t.experimental_angles);
}

}  // namespace rm2

#endif  // RM2_BENCHLAB_HPP_
