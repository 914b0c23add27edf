/******************************************************************************
 * Copyright 2026 The spraycov Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spraycov/coverage_eval.h"
#include "spraycov/geodesy.h"
#include "spraycov/geometry2d.h"
#include "spraycov/mission_io.h"
#include "spraycov/planner.h"
#include "spraycov/sprinkler.h"

namespace spraycov::cli {
namespace {

// Waypoints re-read from an 8-decimal mission file sit up to ~1.1 mm from
// their planned position; audits of missions absorb that quantization.
constexpr double kMissionAuditTolerance = 2e-3;

// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> ParseNumbers(const std::string &text, const std::string &flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto b = part.find_first_not_of(' ');
    const auto e = part.find_last_not_of(' ');
    if (b == std::string::npos) {
      throw UsageError(fmt::format("{}: empty value in '{}'", flag, text));
    }
    const std::string_view token(part.data() + b, e - b + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, token));
    }
    values.push_back(v);
  }
  return values;
}

GeodeticCoord ParseGeodeticFlag(const std::string &text, const std::string &flag) {
  const std::vector<double> v = ParseNumbers(text, flag);
  if (v.size() < 2 || v.size() > 3) {
    throw UsageError(fmt::format("{} expects LAT,LON[,ALT]", flag));
  }
  GeodeticCoord g{v[0], v[1], v.size() == 3 ? v[2] : 0.0};
  if (!g.IsValid()) throw UsageError(fmt::format("{}: coordinate out of range", flag));
  return g;
}

// Start/end points are given in the region's own frame.
Point2D ParsePointFlag(const std::string &text, const std::string &flag, const RegionFile &region,
                       const LocalRegion &local) {
  if (region.frame == RegionFrame::kLocal) {
    const std::vector<double> v = ParseNumbers(text, flag);
    if (v.size() != 2) throw UsageError(fmt::format("{} expects X,Y in meters", flag));
    return {v[0], v[1]};
  }
  return ToPlanar(local.reference->ToNed(ParseGeodeticFlag(text, flag)));
}

std::map<std::string, std::string> ParseKeyValues(const std::string &text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

Paraboloid ReadModel(const std::filesystem::path &file) {
  const auto kv = ParseKeyValues(ReadTextFile(file));
  auto get = [&](const char *key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw IoError(IoError::Kind::kParse,
                    fmt::format("model file '{}' lacks '{}'", file.string(), key));
    }
    return ParseNumbers(it->second, key).at(0);
  };
  return {get("curvature_x"), get("curvature_y"), get("altitude")};
}

std::string FitReport(const FitResult &fit, double mission_altitude,
                      const std::optional<double> &sigma) {
  std::string out;
  out += "curvature_x=" + FormatFixed(fit.model.curvature_x, 9) + "\n";
  out += "curvature_y=" + FormatFixed(fit.model.curvature_y, 9) + "\n";
  out += "altitude=" + FormatFixed(fit.model.altitude, 9) + "\n";
  out += "residual_rms=" + FormatFixed(fit.residual_rms, 9) + "\n";
  out += fmt::format("iterations={}\n", fit.iterations);
  out += fmt::format("converged={}\n", fit.converged ? 1 : 0);
  out += "characterization_radius=" + FormatFixed(Footprint(fit.model).radius, 9) + "\n";
  out += "mission_altitude=" + FormatFixed(mission_altitude, 6) + "\n";
  out += "footprint_radius=" +
         FormatFixed(FootprintRadiusFromAltitude(fit.model, mission_altitude), 9) + "\n";
  if (sigma) {
    out += "noise_sigma=" + FormatFixed(*sigma, 9) + "\n";
    // Residual RMS of a correct model estimates sigma; flag gross misfits.
    out += fmt::format("residual_within_noise={}\n", fit.residual_rms <= 3.0 * *sigma + 1e-12);
  }
  return out;
}

struct Region {
  RegionFile file;
  LocalRegion local;
  ConvexPolygon polygon;
};

Region LoadRegion(const std::string &path, const std::optional<std::string> &origin_flag,
                  std::ostream &err) {
  RegionFile file = ReadRegion(path);
  for (const std::string &w : file.warnings) err << "warning: " << path << ": " << w << "\n";
  std::optional<GeodeticCoord> origin;
  if (origin_flag) origin = ParseGeodeticFlag(*origin_flag, "--origin");
  LocalRegion local = Localize(file, origin);
  ConvexPolygon polygon = ValidateConvex(local.vertices);
  return {std::move(file), std::move(local), std::move(polygon)};
}

int CmdFit(const std::string &droplets, double altitude, const std::optional<double> &sigma,
           const std::string &out_file, std::ostream &out, std::ostream &err) {
  const std::vector<DropletSample> samples = ReadDroplets(droplets);
  FitResult fit;
  try {
    fit = Fit(samples);
  } catch (const SprinklerError &e) {
    if (e.kind() == SprinklerError::Kind::kNotIdentifiable ||
        e.kind() == SprinklerError::Kind::kNonPositiveFit) {
      err << "fit failed: " << e.what() << "\n";
      return kExitInfeasible;
    }
    throw;
  }
  const std::string report = FitReport(fit, altitude, sigma);
  WriteTextFile(out_file, report);
  out << report;
  if (!fit.converged) {
    err << "fit did not converge within the iteration budget\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct PlanFlags {
  std::string region;
  std::optional<double> radius;
  std::optional<std::string> model;
  std::string start;
  std::string end;
  std::optional<double> spacing;
  double altitude = 10.0;
  std::optional<std::string> origin;
  std::string out_mission;
  std::optional<std::string> svg;
  std::optional<std::string> out_path;
};

double ResolveRadius(const std::optional<double> &radius, const std::optional<std::string> &model,
                     double altitude) {
  if (radius) return *radius;
  return FootprintRadiusFromAltitude(ReadModel(*model), altitude);
}

int CmdPlan(const PlanFlags &f, std::ostream &out, std::ostream &err) {
  const Region region = LoadRegion(f.region, f.origin, err);
  if (!region.local.reference) {
    throw UsageError("local-frame regions need --origin LAT,LON[,ALT] to export a mission");
  }
  PlanParams params;
  params.footprint_radius = ResolveRadius(f.radius, f.model, f.altitude);
  params.start = ParsePointFlag(f.start, "--start", region.file, region.local);
  params.end = ParsePointFlag(f.end, "--end", region.file, region.local);
  params.line_spacing = f.spacing;

  CoveragePath path;
  try {
    path = PlanCoverage(region.polygon, params);
  } catch (const PlanError &e) {
    if (e.kind() == PlanError::Kind::kInvalidArgument) throw UsageError(e.what());
    err << "infeasible: " << e.what() << "\n";
    if (e.kind() == PlanError::Kind::kFootprintTooLarge) {
      err << "single-point plan: hover at the region's inner center\n";
    }
    return kExitInfeasible;
  }
  WriteMission(path, *region.local.reference, f.altitude, f.out_mission);
  if (f.svg) {
    WriteSvg(region.polygon, Erode(region.polygon, params.footprint_radius), path, *f.svg,
             {.title = "coverage path (proposed)"});
  }
  if (f.out_path) WritePath(path, *f.out_path);

  out << "footprint_radius=" << FormatFixed(params.footprint_radius, 6) << "\n";
  out << "line_spacing=" << FormatFixed(path.line_spacing, 6) << "\n";
  out << "line_count=" << path.line_count << "\n";
  out << "path_length=" << FormatFixed(path.total_length, 6) << "\n";
  out << "sweep_direction=" << FormatFixed(path.sweep_direction.x, 6) << ","
      << FormatFixed(path.sweep_direction.y, 6) << "\n";
  out << "waypoints=" << path.waypoints.size() << "\n";
  return kExitOk;
}

struct EvalFlags {
  std::string region;
  std::optional<std::string> mission;
  std::optional<std::string> path;
  double radius = 0.0;
  double speed = 2.0;
  std::optional<double> cell;
  std::optional<std::string> origin;
  std::string report;
};

int CmdEvaluate(const EvalFlags &f, std::ostream &out, std::ostream &err) {
  std::vector<Waypoint> waypoints;
  std::optional<std::string> origin = f.origin;
  std::optional<MissionFile> mission;
  if (f.mission) {
    mission = ReadMission(*f.mission);
    const MissionItem &home = mission->items.front();
    if (!origin) origin = fmt::format("{},{},{}", home.latitude, home.longitude, home.altitude);
  }
  const Region region = LoadRegion(f.region, origin, err);
  if (mission) {
    if (!region.local.reference) throw UsageError("cannot place the mission: give --origin");
    for (const Point2D &p : MissionToLocal(*mission, *region.local.reference)) {
      waypoints.push_back({p, WaypointRole::kSweep});
    }
  } else {
    waypoints = ReadPath(*f.path).waypoints;
  }

  std::optional<ConvexPolygon> eroded;
  try {
    eroded = Erode(region.polygon, f.radius);
  } catch (const GeometryError &e) {
    if (e.kind() != GeometryError::Kind::kEmptyErosion) throw UsageError(e.what());
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
  EvalOptions options;
  options.speed = f.speed;
  options.cell_size = f.cell;
  if (mission) options.safety_tolerance = kMissionAuditTolerance;
  const EvalReport report = EvaluatePath(region.polygon, *eroded, waypoints, f.radius, options);
  WriteReport(report, f.report);
  out << FormatReport(report);
  if (report.safety_violations > 0) {
    err << "audit failed: " << report.safety_violations
        << " sampled path points bring the footprint across the region boundary\n";
    return kExitAudit;
  }
  return kExitOk;
}

struct CompareFlags {
  std::string region;
  double radius = 0.0;
  std::string start;
  std::string end;
  std::optional<double> spacing;
  double speed = 2.0;
  std::optional<double> cell;
  std::optional<std::string> origin;
  std::string out_dir;
};

int CmdCompare(const CompareFlags &f, std::ostream &out, std::ostream &err) {
  const Region region = LoadRegion(f.region, f.origin, err);
  PlanParams params;
  params.footprint_radius = f.radius;
  params.start = ParsePointFlag(f.start, "--start", region.file, region.local);
  params.end = ParsePointFlag(f.end, "--end", region.file, region.local);
  params.line_spacing = f.spacing;

  CoveragePath proposed;
  try {
    proposed = PlanCoverage(region.polygon, params);
  } catch (const PlanError &e) {
    if (e.kind() == PlanError::Kind::kInvalidArgument) throw UsageError(e.what());
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
  const ConvexPolygon eroded = Erode(region.polygon, f.radius);
  const CoveragePath baseline =
      PlanBaseline(region.polygon, params.LineSpacing(), params.start, params.end);

  EvalOptions options;
  options.speed = f.speed;
  options.cell_size = f.cell;
  const EvalReport rp = EvaluatePath(region.polygon, eroded, proposed.waypoints, f.radius, options);
  const EvalReport rb = EvaluatePath(region.polygon, eroded, baseline.waypoints, f.radius, options);

  const std::filesystem::path dir(f.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError(IoError::Kind::kWrite,
                  fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  }

  const std::size_t n = region.polygon.size();
  std::string csv =
      "planner,vertices,radius,spacing,lines,length_m,est_time_s,covered_fraction_M,"
      "covered_fraction_Mprime,violations,max_incursion\n";
  auto row = [&](const char *name, const CoveragePath &p, const EvalReport &r) {
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", name, n, FormatFixed(f.radius, 3),
                       FormatFixed(p.line_spacing, 3), p.line_count, FormatFixed(r.path_length, 3),
                       FormatFixed(r.est_flight_time, 3), FormatFixed(r.covered_fraction_region, 6),
                       FormatFixed(r.covered_fraction_eroded, 6), r.safety_violations,
                       FormatFixed(r.max_incursion, 6));
  };
  row("proposed", proposed, rp);
  row("baseline", baseline, rb);
  const double ratio = rp.path_length / rb.path_length;

  std::string table;
  table += fmt::format("{:<10} {:>3} {:>5} {:>5} {:>11} {:>10} {:>8} {:>10}\n", "planner", "N",
                       "r", "delta", "D_total[m]", "t_est[s]", "cov_M", "violations");
  auto line = [&](const char *name, const CoveragePath &p, const EvalReport &r) {
    table += fmt::format("{:<10} {:>3} {:>5} {:>5} {:>11} {:>10} {:>8} {:>10}\n", name, n,
                         FormatFixed(f.radius, 1), FormatFixed(p.line_spacing, 1),
                         FormatFixed(r.path_length, 1), FormatFixed(r.est_flight_time, 1),
                         FormatFixed(r.covered_fraction_region, 4), r.safety_violations);
  };
  line("proposed", proposed, rp);
  line("baseline", baseline, rb);
  table += "length_ratio=" + FormatFixed(ratio, 6) + "\n";

  WriteTextFile(dir / "compare.csv", csv);
  WriteTextFile(dir / "compare.txt", table);
  WriteSvg(region.polygon, eroded, proposed, dir / "proposed.svg",
           {.title = "proposed planner", .path_color = "red"});
  WriteSvg(region.polygon, eroded, baseline, dir / "baseline.svg",
           {.title = "baseline planner", .path_color = "blue"});
  out << table;
  if (rp.safety_violations > 0) {
    err << "audit failed: the proposed path brings the footprint across the boundary\n";
    return kExitAudit;
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Coverage path planning for spraying drones"};
  app.name("spraycov");
  app.require_subcommand(1);

  std::string droplets;
  double fit_altitude = 0.0;
  std::optional<double> sigma;
  std::string fit_out;
  CLI::App *fit = app.add_subcommand("fit", "Fit the paraboloid spray model to droplet samples");
  fit->add_option("--droplets", droplets, "Droplet file, one 'x, y, z' triple per line [m]")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--altitude", fit_altitude,
                  "Mission flight altitude used to derive the footprint radius [m]")
      ->required()
      ->check(CLI::PositiveNumber);
  fit->add_option("--sigma", sigma, "Expected droplet noise standard deviation [m]")
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--out", fit_out, "Output model/report file (key=value)")->required();

  PlanFlags pf;
  CLI::App *plan = app.add_subcommand("plan", "Plan a collision-safe coverage mission");
  plan->add_option("--region", pf.region, "Region file (geodetic or local frame)")
      ->required()
      ->check(CLI::ExistingFile);
  auto *radius_opt =
      plan->add_option("--radius", pf.radius, "Footprint radius [m]")->check(CLI::PositiveNumber);
  auto *model_opt =
      plan->add_option("--model", pf.model, "Fitted model file from 'fit' (instead of --radius)")
          ->check(CLI::ExistingFile);
  radius_opt->excludes(model_opt);
  plan->add_option("--start", pf.start,
                   "Takeoff point: LAT,LON [deg] for geodetic regions, X,Y [m] for local ones")
      ->required();
  plan->add_option("--end", pf.end, "Landing point, same frame as --start")->required();
  plan->add_option("--spacing", pf.spacing, "Flight line spacing [m] (default 2 x radius)")
      ->check(CLI::PositiveNumber);
  plan->add_option("--altitude", pf.altitude, "Flight altitude above home [m]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  plan->add_option("--origin", pf.origin,
                   "LAT,LON[,ALT] [deg, deg, m] anchoring a local-frame region (x east, y north)");
  plan->add_option("--out-mission", pf.out_mission, "Output QGC WPL 110 mission file")
      ->required();
  plan->add_option("--svg", pf.svg, "Optional SVG figure of region, eroded region and path");
  plan->add_option("--out-path", pf.out_path, "Optional local-frame path file [m]");

  EvalFlags ef;
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Rasterized coverage and safety audit of a path");
  evaluate->add_option("--region", ef.region, "Region file")->required()->check(CLI::ExistingFile);
  auto *mission_opt = evaluate->add_option("--mission", ef.mission, "QGC WPL 110 mission file")
                          ->check(CLI::ExistingFile);
  auto *path_opt = evaluate->add_option("--path", ef.path, "Local-frame path file [m]")
                       ->check(CLI::ExistingFile);
  mission_opt->excludes(path_opt);
  evaluate->add_option("--radius", ef.radius, "Footprint radius [m]")
      ->required()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--speed", ef.speed, "Cruise speed for the time estimate [m/s]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--cell", ef.cell, "Raster cell size [m] (default radius / 50)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--origin", ef.origin,
                       "LAT,LON[,ALT] anchoring a local-frame region (missions default to home)");
  evaluate->add_option("--report", ef.report, "Output report file (key=value)")->required();

  CompareFlags cf;
  CLI::App *compare =
      app.add_subcommand("compare", "Run the proposed and the baseline planner side by side");
  compare->add_option("--region", cf.region, "Region file")->required()->check(CLI::ExistingFile);
  compare->add_option("--radius", cf.radius, "Footprint radius [m]")
      ->required()
      ->check(CLI::PositiveNumber);
  compare->add_option("--start", cf.start, "Takeoff point in the region's frame")->required();
  compare->add_option("--end", cf.end, "Landing point in the region's frame")->required();
  compare->add_option("--spacing", cf.spacing, "Flight line spacing [m] (default 2 x radius)")
      ->check(CLI::PositiveNumber);
  compare->add_option("--speed", cf.speed, "Cruise speed [m/s]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->add_option("--cell", cf.cell, "Raster cell size [m] (default radius / 50)")
      ->check(CLI::PositiveNumber);
  compare->add_option("--origin", cf.origin, "LAT,LON[,ALT] anchoring a local-frame region");
  compare->add_option("--out-dir", cf.out_dir, "Output directory for tables and SVGs")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (fit->parsed()) return CmdFit(droplets, fit_altitude, sigma, fit_out, out, err);
    if (plan->parsed()) {
      if (!pf.radius && !pf.model) throw UsageError("plan needs --radius or --model");
      return CmdPlan(pf, out, err);
    }
    if (evaluate->parsed()) {
      if (!ef.mission && !ef.path) throw UsageError("evaluate needs --mission or --path");
      return CmdEvaluate(ef, out, err);
    }
    if (compare->parsed()) return CmdCompare(cf, out, err);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const GeometryError &e) {
    err << "error: invalid region: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}

}  // namespace spraycov::cli
