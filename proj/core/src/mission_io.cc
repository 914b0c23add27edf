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

#include "spraycov/mission_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace spraycov {
namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

[[noreturn]] void ParseFail(const std::string &msg, std::size_t line, std::size_t column) {
  throw IoError(IoError::Kind::kParse, fmt::format("line {}, column {}: {}", line, column, msg),
                line, column);
}

std::string_view StripComment(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

// Splits on commas and blanks. `offset` is the 0-based column of s[0].
// A comma between two empty fields is an error.
std::vector<Token> Tokenize(std::string_view s, std::size_t offset, std::size_t line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  bool expect_value = false;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == ',') {
      if (tokens.empty() || expect_value) ParseFail("empty field", line, offset + i + 1);
      expect_value = true;
      ++i;
    } else {
      const std::size_t start = i;
      while (i < s.size() && s[i] != ',' && s[i] != ' ' && s[i] != '\t') ++i;
      tokens.push_back({s.substr(start, i - start), offset + start + 1});
      expect_value = false;
    }
  }
  if (expect_value) ParseFail("trailing comma", line, offset + s.size() + 1);
  return tokens;
}

double ParseNumber(const Token &t, std::size_t line) {
  double value = 0.0;
  const char *begin = t.text.data();
  const char *end = begin + t.text.size();
  if (!t.text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    ParseFail(fmt::format("'{}' is not a number", t.text), line, t.column);
  }
  if (!std::isfinite(value)) {
    ParseFail(fmt::format("'{}' is not a finite number", t.text), line, t.column);
  }
  return value;
}

int ParseInt(const Token &t, std::size_t line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    ParseFail(fmt::format("'{}' is not an integer", t.text), line, t.column);
  }
  return value;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn &&fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    ++line_no;
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

GeodeticCoord ParseGeodetic(const std::vector<Token> &tokens, std::size_t line,
                            std::size_t column) {
  if (tokens.size() < 2 || tokens.size() > 3) {
    ParseFail("expected 'lat, lon[, alt]'", line, tokens.empty() ? column : tokens[0].column);
  }
  GeodeticCoord g;
  g.latitude = ParseNumber(tokens[0], line);
  g.longitude = ParseNumber(tokens[1], line);
  if (tokens.size() == 3) g.altitude = ParseNumber(tokens[2], line);
  if (g.latitude < -90.0 || g.latitude > 90.0) {
    ParseFail(fmt::format("latitude {} outside [-90, 90]", g.latitude), line, tokens[0].column);
  }
  if (g.longitude < -180.0 || g.longitude > 180.0) {
    ParseFail(fmt::format("longitude {} outside [-180, 180]", g.longitude), line,
              tokens[1].column);
  }
  return g;
}

Point2D ParseLocal(const std::vector<Token> &tokens, std::size_t line, std::size_t column) {
  if (tokens.size() != 2) {
    ParseFail("expected 'x, y'", line, tokens.empty() ? column : tokens[0].column);
  }
  return {ParseNumber(tokens[0], line), ParseNumber(tokens[1], line)};
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string Coordinate(double v) { return FormatFixed(v, 8); }

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string FormatFixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void WriteTextFile(const std::filesystem::path &file, std::string_view contents) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(IoError::Kind::kWrite,
                  fmt::format("cannot open '{}' for writing", file.string()));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw IoError(IoError::Kind::kWrite, fmt::format("write to '{}' failed", file.string()));
  }
}

std::string ReadTextFile(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::kRead, fmt::format("cannot read '{}'", file.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// --- regions ---------------------------------------------------------------

RegionFile ParseRegion(std::string_view text) {
  RegionFile region;
  std::optional<RegionFrame> frame;
  bool has_home = false;

  ForEachLine(text, [&](std::string_view raw, std::size_t line) {
    const std::string_view content = StripComment(raw);
    if (IsBlank(content)) return;
    const std::size_t colon = content.find(':');
    if (colon != std::string_view::npos) {
      const std::string key = Trim(content.substr(0, colon));
      const std::string_view value = content.substr(colon + 1);
      if (key == "frame") {
        const std::string v = Trim(value);
        if (v == "geodetic") {
          frame = RegionFrame::kGeodetic;
        } else if (v == "local") {
          frame = RegionFrame::kLocal;
        } else {
          ParseFail(fmt::format("unknown frame '{}' (expected geodetic or local)", v), line,
                    colon + 2);
        }
        if (!region.geodetic_points.empty() || !region.local_points.empty()) {
          ParseFail("frame must be declared before any point", line, 1);
        }
        return;
      }
      if (key == "home") {
        if (!frame) {
          throw IoError(IoError::Kind::kFrameMissing,
                        fmt::format("line {}: home given before the frame header", line), line, 1);
        }
        const std::vector<Token> tokens = Tokenize(value, colon + 1, line);
        if (*frame == RegionFrame::kGeodetic) {
          region.geodetic_home = ParseGeodetic(tokens, line, colon + 2);
        } else {
          region.local_home = ParseLocal(tokens, line, colon + 2);
        }
        has_home = true;
        return;
      }
      ParseFail(fmt::format("unknown key '{}'", key), line, 1);
    }
    if (!frame) {
      throw IoError(IoError::Kind::kFrameMissing,
                    fmt::format("line {}: point given before the 'frame:' header", line), line, 1);
    }
    const std::vector<Token> tokens = Tokenize(content, 0, line);
    if (*frame == RegionFrame::kGeodetic) {
      region.geodetic_points.push_back(ParseGeodetic(tokens, line, 1));
    } else {
      region.local_points.push_back(ParseLocal(tokens, line, 1));
    }
  });

  if (!frame) throw IoError(IoError::Kind::kFrameMissing, "region file has no 'frame:' header");
  region.frame = *frame;
  const std::size_t count = region.frame == RegionFrame::kGeodetic ? region.geodetic_points.size()
                                                                   : region.local_points.size();
  if (count < 3) {
    throw IoError(IoError::Kind::kTooFewPoints,
                  fmt::format("region needs at least 3 points, got {}", count));
  }
  if (!has_home) {
    region.home_defaulted = true;
    if (region.frame == RegionFrame::kGeodetic) {
      region.geodetic_home = region.geodetic_points.front();
    } else {
      region.local_home = region.local_points.front();
    }
    region.warnings.push_back("no home point given; using the first region vertex");
  }
  return region;
}

RegionFile ReadRegion(const std::filesystem::path &file) { return ParseRegion(ReadTextFile(file)); }

LocalRegion Localize(const RegionFile &region, const std::optional<GeodeticCoord> &origin) {
  LocalRegion out;
  if (region.frame == RegionFrame::kGeodetic) {
    const GeoReference ref(origin.value_or(region.geodetic_home));
    for (const GeodeticCoord &g : region.geodetic_points) {
      out.vertices.push_back(ToPlanar(ref.ToNed(g)));
    }
    out.home = ToPlanar(ref.ToNed(region.geodetic_home));
    out.reference = ref;
  } else {
    out.vertices = region.local_points;
    out.home = region.local_home;
    if (origin) out.reference = GeoReference(*origin);
  }
  return out;
}

// --- droplets --------------------------------------------------------------

std::vector<DropletSample> ParseDroplets(std::string_view text) {
  std::vector<DropletSample> samples;
  ForEachLine(text, [&](std::string_view raw, std::size_t line) {
    const std::string_view content = StripComment(raw);
    if (IsBlank(content)) return;
    const std::vector<Token> tokens = Tokenize(content, 0, line);
    if (tokens.size() != 3) {
      ParseFail(fmt::format("expected 'x, y, z', got {} fields", tokens.size()), line,
                tokens.empty() ? 1 : tokens[0].column);
    }
    samples.push_back(
        {ParseNumber(tokens[0], line), ParseNumber(tokens[1], line), ParseNumber(tokens[2], line)});
  });
  if (samples.empty()) {
    throw IoError(IoError::Kind::kParse, "droplet file contains no samples");
  }
  return samples;
}

std::vector<DropletSample> ReadDroplets(const std::filesystem::path &file) {
  return ParseDroplets(ReadTextFile(file));
}

// --- missions --------------------------------------------------------------

MissionFile BuildMission(const CoveragePath &path, const GeoReference &ref, double altitude) {
  if (path.waypoints.empty()) {
    throw IoError(IoError::Kind::kWrite, "cannot build a mission from an empty path");
  }
  if (!(altitude > 0.0) || !std::isfinite(altitude)) {
    throw IoError(IoError::Kind::kWrite, fmt::format("mission altitude must be positive, got {}",
                                                     altitude));
  }
  MissionFile mission;
  auto geodetic = [&](const Point2D &p) { return ref.ToGeodetic(FromPlanar(p)); };

  MissionItem home;
  home.current = 1;
  home.frame = kMavFrameGlobal;
  home.command = kMavCmdNavWaypoint;
  home.latitude = ref.origin().latitude;
  home.longitude = ref.origin().longitude;
  home.altitude = ref.origin().altitude;
  mission.items.push_back(home);

  const GeodeticCoord first = geodetic(path.waypoints.front().position);
  MissionItem takeoff;
  takeoff.command = kMavCmdNavTakeoff;
  takeoff.latitude = first.latitude;
  takeoff.longitude = first.longitude;
  takeoff.altitude = altitude;
  mission.items.push_back(takeoff);

  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    const bool last = i + 1 == path.waypoints.size();
    const GeodeticCoord g = geodetic(path.waypoints[i].position);
    MissionItem item;
    item.command = last ? kMavCmdNavLand : kMavCmdNavWaypoint;
    item.latitude = g.latitude;
    item.longitude = g.longitude;
    item.altitude = last ? 0.0 : altitude;
    mission.items.push_back(item);
  }
  for (std::size_t i = 0; i < mission.items.size(); ++i) {
    mission.items[i].index = static_cast<int>(i);
  }
  return mission;
}

std::string FormatMission(const MissionFile &mission) {
  std::string out = "QGC WPL 110\n";
  for (const MissionItem &it : mission.items) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", it.index, it.current,
                       it.frame, it.command, Coordinate(it.params[0]), Coordinate(it.params[1]),
                       Coordinate(it.params[2]), Coordinate(it.params[3]), Coordinate(it.latitude),
                       Coordinate(it.longitude), FormatFixed(it.altitude, 6), it.autocontinue);
  }
  return out;
}

MissionFile ParseMission(std::string_view text) {
  MissionFile mission;
  bool header = false;
  ForEachLine(text, [&](std::string_view raw, std::size_t line) {
    std::string_view content = raw;
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    if (!header) {
      if (Trim(content) != "QGC WPL 110") ParseFail("expected 'QGC WPL 110' header", line, 1);
      header = true;
      return;
    }
    if (IsBlank(content)) return;
    std::vector<Token> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = content.find('\t', start);
      fields.push_back({content.substr(start, tab - start), start + 1});
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 12) {
      ParseFail(fmt::format("expected 12 tab-separated fields, got {}", fields.size()), line, 1);
    }
    MissionItem item;
    item.index = ParseInt(fields[0], line);
    item.current = ParseInt(fields[1], line);
    item.frame = ParseInt(fields[2], line);
    item.command = ParseInt(fields[3], line);
    for (int k = 0; k < 4; ++k) item.params[k] = ParseNumber(fields[4 + k], line);
    item.latitude = ParseNumber(fields[8], line);
    item.longitude = ParseNumber(fields[9], line);
    item.altitude = ParseNumber(fields[10], line);
    item.autocontinue = ParseInt(fields[11], line);
    if (item.index != static_cast<int>(mission.items.size())) {
      ParseFail(fmt::format("sequence index {} is not contiguous", item.index), line, 1);
    }
    if (!GeodeticCoord{item.latitude, item.longitude, item.altitude}.IsValid()) {
      ParseFail("latitude/longitude out of range", line, fields[8].column);
    }
    mission.items.push_back(item);
  });
  if (!header) throw IoError(IoError::Kind::kParse, "mission file is empty");
  if (mission.items.empty()) throw IoError(IoError::Kind::kParse, "mission has no home item");
  return mission;
}

MissionFile ReadMission(const std::filesystem::path &file) {
  return ParseMission(ReadTextFile(file));
}

MissionFile WriteMission(const CoveragePath &path, const GeoReference &ref, double altitude,
                         const std::filesystem::path &file) {
  MissionFile mission = BuildMission(path, ref, altitude);
  WriteTextFile(file, FormatMission(mission));
  return mission;
}

std::vector<Point2D> MissionToLocal(const MissionFile &mission, const GeoReference &ref) {
  std::vector<Point2D> out;
  for (std::size_t i = 1; i < mission.items.size(); ++i) {
    const MissionItem &it = mission.items[i];
    out.push_back(ToPlanar(ref.ToNed({it.latitude, it.longitude, ref.origin().altitude})));
  }
  return out;
}

// --- reports ---------------------------------------------------------------

std::string FormatReport(const EvalReport &r) {
  std::string out;
  out += "covered_fraction_M=" + FormatFixed(r.covered_fraction_region, 6) + "\n";
  out += "covered_fraction_Mprime=" + FormatFixed(r.covered_fraction_eroded, 6) + "\n";
  out += "path_length=" + FormatFixed(r.path_length, 6) + "\n";
  out += "est_flight_time=" + FormatFixed(r.est_flight_time, 6) + "\n";
  out += fmt::format("safety_violations={}\n", r.safety_violations);
  out += "max_incursion=" + FormatFixed(r.max_incursion, 6) + "\n";
  return out;
}

void WriteReport(const EvalReport &report, const std::filesystem::path &file) {
  WriteTextFile(file, FormatReport(report));
}

// --- local paths -----------------------------------------------------------

std::string FormatPath(const CoveragePath &path) {
  std::string out = "# spraycov coverage path: x (east, m), y (north, m), role\nframe: local\n";
  for (const Waypoint &w : path.waypoints) {
    out += FormatFixed(w.position.x, 9) + "," + FormatFixed(w.position.y, 9) + "," +
           std::string(RoleName(w.role)) + "\n";
  }
  return out;
}

CoveragePath ParsePath(std::string_view text) {
  CoveragePath path;
  bool framed = false;
  ForEachLine(text, [&](std::string_view raw, std::size_t line) {
    const std::string_view content = StripComment(raw);
    if (IsBlank(content)) return;
    if (!framed) {
      if (Trim(content) != "frame: local") {
        throw IoError(IoError::Kind::kFrameMissing,
                      fmt::format("line {}: path files must start with 'frame: local'", line),
                      line, 1);
      }
      framed = true;
      return;
    }
    const std::vector<Token> tokens = Tokenize(content, 0, line);
    if (tokens.size() != 3) ParseFail("expected 'x, y, role'", line, 1);
    const auto role = ParseRole(tokens[2].text);
    if (!role) ParseFail(fmt::format("unknown role '{}'", tokens[2].text), line, tokens[2].column);
    path.waypoints.push_back({{ParseNumber(tokens[0], line), ParseNumber(tokens[1], line)}, *role});
  });
  if (!framed) throw IoError(IoError::Kind::kFrameMissing, "path file has no 'frame:' header");
  path.total_length = PathLength(path.waypoints);
  return path;
}

CoveragePath ReadPath(const std::filesystem::path &file) { return ParsePath(ReadTextFile(file)); }

void WritePath(const CoveragePath &path, const std::filesystem::path &file) {
  WriteTextFile(file, FormatPath(path));
}

// --- svg -------------------------------------------------------------------

std::string FormatSvg(const ConvexPolygon &region, const ConvexPolygon &eroded,
                      const CoveragePath &path, const SvgStyle &style) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  auto include = [&](const Point2D &p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const Point2D &v : region.vertices()) include(v);
  for (const Waypoint &w : path.waypoints) include(w.position);
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double margin = 0.05 * span;
  const double view_x = lo_x - margin;
  const double view_y = -(hi_y + margin);  // SVG y grows downwards; north is up.
  const double view_w = hi_x - lo_x + 2.0 * margin;
  const double view_h = hi_y - lo_y + 2.0 * margin;
  const double stroke = span / 400.0;
  auto num = [](double v) { return FormatFixed(v, 3); };
  auto xy = [&](const Point2D &p) { return num(p.x) + "," + num(-p.y); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"{} {} {} {}\">\n",
      num(style.width_px), num(style.width_px * view_h / view_w), num(view_x), num(view_y),
      num(view_w), num(view_h));
  out += "<title>" + XmlEscape(style.title) + "</title>\n";

  auto polygon = [&](const char *id, const ConvexPolygon &p, const std::string &color,
                     const char *extra) {
    std::string pts;
    for (std::size_t i = 0; i < p.size(); ++i) pts += (i ? " " : "") + xy(p.vertex(i));
    out += fmt::format(
        "<g id=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}>\n"
        "<polygon points=\"{}\"/>\n</g>\n",
        id, color, num(stroke * 1.5), extra, pts);
  };
  polygon("region", region, style.region_color, "");
  polygon("eroded", eroded, style.eroded_color, fmt::format(" stroke-dasharray=\"{} {}\"",
                                                            num(stroke * 4), num(stroke * 3))
                                                    .c_str());

  struct Group {
    const char *id;
    WaypointRole role;
    std::string color;
    std::string extra;
  };
  const Group groups[] = {
      {"takeoff-transit", WaypointRole::kTakeoffTransit, "gray",
       fmt::format(" stroke-dasharray=\"{} {}\"", num(stroke * 3), num(stroke * 3))},
      {"sweep", WaypointRole::kSweep, style.path_color, ""},
      {"boundary-connection", WaypointRole::kBoundaryConnection, "orange", ""},
      {"corner-tour", WaypointRole::kCornerTour, "green", ""},
      {"landing-transit", WaypointRole::kLandingTransit, "gray",
       fmt::format(" stroke-dasharray=\"{} {}\"", num(stroke * 3), num(stroke * 3))},
  };
  const auto &wps = path.waypoints;
  for (const Group &g : groups) {
    std::string lines;
    for (std::size_t i = 1; i < wps.size(); ++i) {
      if (wps[i].role != g.role) continue;
      lines += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                           num(wps[i - 1].position.x), num(-wps[i - 1].position.y),
                           num(wps[i].position.x), num(-wps[i].position.y));
    }
    if (lines.empty()) continue;
    out += fmt::format("<g id=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}>\n", g.id,
                       g.color, num(stroke), g.extra);
    out += lines;
    out += "</g>\n";
  }
  if (!wps.empty()) {
    out += "<g id=\"markers\" stroke=\"none\">\n";
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"green\"/>\n",
                       num(wps.front().position.x), num(-wps.front().position.y), num(stroke * 4));
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>\n",
                       num(wps.back().position.x), num(-wps.back().position.y), num(stroke * 3));
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

void WriteSvg(const ConvexPolygon &region, const ConvexPolygon &eroded, const CoveragePath &path,
              const std::filesystem::path &file, const SvgStyle &style) {
  WriteTextFile(file, FormatSvg(region, eroded, path, style));
}

}  // namespace spraycov
