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

// rm2sim: scenario runner and calculators for the towed-vehicle release
// stack.
//
//   rm2sim simulate --config FILE [--set sec.key=val]... [--output FILE]
//   rm2sim mission  --config FILE [--set sec.key=val]... [--output FILE]
//   rm2sim tension  [--rho R] [--cd C] [--sigma S] [--theta-deg D] --speed V
//   rm2sim release-speed --amplitude A --period T
//   rm2sim bench [--format text|csv|both] [--scale-height H [--tether L]]
//   rm2sim validate-config --config FILE [--set sec.key=val]...
//
// Exit status: 0 success, 1 usage/config/parse error, 2 simulation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rm2/rm2.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSimulation = 2;

// Writes to `path`, or stdout when empty.
bool Emit(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write \"" << path << "\"\n";
    return false;
  }
  out << data;
  return static_cast<bool>(out);
}

void PrintConfigError(const rm2::ConfigError& e) {
  for (const auto& issue : e.issues()) std::cerr << "error: " << issue << '\n';
}

struct ScenarioArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string output;
};

void AddScenarioOptions(CLI::App* cmd, ScenarioArgs& args, bool with_output) {
  cmd->add_option("-c,--config", args.config, "Scenario file")->required();
  cmd->add_option("-s,--set", args.overrides, "Override, section.key=value (repeatable)");
  if (with_output) cmd->add_option("-o,--output", args.output, "Telemetry CSV path");
}

int RunScenario(const ScenarioArgs& args, bool mission) {
  rm2::SimConfig cfg;
  try {
    cfg = rm2::LoadScenario(args.config, args.overrides);
  } catch (const rm2::ConfigError& e) {
    PrintConfigError(e);
    return kExitConfig;
  } catch (const rm2::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  rm2::RunResult result = rm2::run(cfg);
  std::string summary = result.summary.Render();
  if (mission) {
    if (!args.output.empty() && !Emit(args.output, rm2::TelemetryCsv(result.telemetry))) {
      return kExitConfig;
    }
    std::cout << summary;
  } else {
    if (!Emit(args.output, rm2::TelemetryCsv(result.telemetry))) return kExitConfig;
    std::cerr << summary;
  }
  if (result.summary.halted) {
    std::cerr << "error: simulation halted: " << result.summary.halt_reason << '\n';
    return kExitSimulation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Towed-vehicle release simulator and calculators"};
  app.require_subcommand(1);

  ScenarioArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write telemetry CSV");
  AddScenarioOptions(simulate, sim_args, true);

  ScenarioArgs mission_args;
  auto* mission = app.add_subcommand("mission", "Replay a deploy mission and print its summary");
  AddScenarioOptions(mission, mission_args, true);

  ScenarioArgs validate_args;
  auto* validate = app.add_subcommand("validate-config", "Check a scenario file");
  AddScenarioOptions(validate, validate_args, false);

  int precision = 4;

  rm2::TowConfig tow;
  double theta_deg = 45.0;
  std::optional<double> speed, speed_kn;
  auto* tension = app.add_subcommand("tension", "Steady towline tension");
  tension->add_option("--rho", tow.rho, "Fluid density [kg/m^3]")->capture_default_str();
  tension->add_option("--cd", tow.c_d, "Drag coefficient")->capture_default_str();
  tension->add_option("--sigma", tow.sigma, "Effective area [m^2]")->capture_default_str();
  tension->add_option("--theta-deg", theta_deg, "Towline angle [deg]")->capture_default_str();
  auto* speed_opt = tension->add_option("--speed", speed, "Tow speed [m/s]");
  auto* speed_kn_opt = tension->add_option("--speed-kn", speed_kn, "Tow speed [kn]");
  speed_opt->excludes(speed_kn_opt);
  tension->add_option("--precision", precision, "Significant figures")->check(CLI::Range(1, 15));

  double amplitude = 0.0, period = 0.0, gravity = rm2::kStandardGravity;
  auto* release = app.add_subcommand("release-speed", "Minimum tow speed for assured release");
  release->add_option("--amplitude", amplitude, "Wave amplitude [m]")->required();
  release->add_option("--period", period, "Wave period [s]")->required();
  release->add_option("--gravity", gravity, "Gravity [m/s^2]")->capture_default_str();
  release->add_option("--precision", precision, "Significant figures")->check(CLI::Range(2, 15));

  rm2::ReferenceBenchTable table;
  std::string bench_format = "text";
  std::string bench_output;
  std::optional<double> scale_height, scale_tether;
  auto* bench = app.add_subcommand("bench", "Bench-test geometry consistency report");
  bench->add_option("--format", bench_format, "text, csv or both")
      ->check(CLI::IsMember({"text", "csv", "both"}));
  bench->add_option("-o,--output", bench_output, "Report path");
  bench->add_option("--real-tether", table.real.tether_length, "Real tether length l [m]");
  bench->add_option("--real-height", table.real.bench_height, "Real tray height H [m]");
  bench->add_option("--real-trough", table.real.wave_trough, "Real trough h'min [m]");
  bench->add_option("--real-crest", table.real.wave_crest, "Real crest h'max [m]");
  bench->add_option("--scale-height", scale_height, "Scale the real geometry to this bench H");
  bench->add_option("--tether", scale_tether, "Bench tether length for --scale-height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*simulate) return RunScenario(sim_args, false);
    if (*mission) return RunScenario(mission_args, true);

    if (*validate) {
      try {
        rm2::LoadScenario(validate_args.config, validate_args.overrides);
      } catch (const rm2::ConfigError& e) {
        PrintConfigError(e);
        return kExitConfig;
      }
      std::cout << "ok\n";
      return kExitOk;
    }

    if (*tension) {
      if (!speed && !speed_kn) {
        std::cerr << "error: one of --speed or --speed-kn is required\n";
        return kExitConfig;
      }
      tow.theta = rm2::DegToRad(theta_deg);
      tow.Validate();
      double v = speed ? *speed : rm2::KnotsToMps(*speed_kn);
      std::cout << rm2::FormatSignificant(rm2::tow_tension(tow, v), precision) << " N\n";
      return kExitOk;
    }

    if (*release) {
      auto wave = rm2::WaveField::FromPeriod(amplitude, period, gravity);
      double v = rm2::min_release_speed(wave);
      std::cout << rm2::FormatSignificant(v, precision) << " m/s ("
                << rm2::FormatSignificant(rm2::MpsToKnots(v), precision - 1) << " kn)\n";
      return kExitOk;
    }

    if (*bench) {
      rm2::BenchReport report = rm2::bench_report(table.real, table.experimental,
                                                    table.real_angles, table.experimental_angles);
      std::string out;
      if (bench_format == "text" || bench_format == "both") out += report.ToText();
      if (bench_format == "both") out += '\n';
      if (bench_format == "csv" || bench_format == "both") out += report.ToCsv();
      if (scale_height) {
        rm2::BenchGeometry g = rm2::scale_to_bench(table.real, *scale_height, scale_tether);
        out += "\nscaled bench geometry: l=" + rm2::FormatFixed(g.tether_length, 4) +
               " m, H=" + rm2::FormatFixed(g.bench_height, 4) +
               " m, h'min=" + rm2::FormatFixed(g.wave_trough, 4) +
               " m, h'max=" + rm2::FormatFixed(g.wave_crest, 4) + " m\n";
      }
      return Emit(bench_output, out) ? kExitOk : kExitConfig;
    }
  } catch (const rm2::ConfigError& e) {
    PrintConfigError(e);
    return kExitConfig;
  } catch (const rm2::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
