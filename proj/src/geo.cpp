#include "anonsat/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <numbers>
#include <ostream>
#include <string_view>

#include "anonsat/errors.hpp"
#include "anonsat/rng.hpp"

namespace anonsat {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMetersPerDegree = kEarthRadiusM * kDegToRad;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_coordinate(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, fmt::format("non-numeric {} '{}'", what, field));
  }
  return value;
}

GeoPoint from_meters(double x_m, double y_m, NodeId id) {
  const double lat = y_m / kMetersPerDegree;
  const double lon = x_m / (kMetersPerDegree * std::cos(lat * kDegToRad));
  return {lat, lon, id};
}

}  // namespace

Dataset parse_dataset(std::istream& source, std::string name) {
  Dataset d{std::move(name), {}};
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  std::size_t columns = 2;

  while (std::getline(source, raw)) {
    ++line;
    const std::string_view row = trim(raw);
    if (row.empty() || row.front() == '#') continue;

    if (!header_seen) {
      if (row == "lat,lon") {
        columns = 2;
      } else if (row == "lat,lon,id") {
        columns = 3;
      } else {
        throw ParseError(line, fmt::format("expected header 'lat,lon', got '{}'", row));
      }
      header_seen = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = row.find(',', start);
      fields.push_back(row.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != columns) {
      throw ParseError(line, fmt::format("expected {} fields, got {}", columns, fields.size()));
    }

    const double lat = parse_coordinate(fields[0], line, "latitude");
    const double lon = parse_coordinate(fields[1], line, "longitude");
    if (lat < -90.0 || lat > 90.0) throw ParseError(line, fmt::format("latitude {} out of range", lat));
    if (lon < -180.0 || lon > 180.0) throw ParseError(line, fmt::format("longitude {} out of range", lon));

    d.points.push_back({lat, lon, static_cast<NodeId>(d.points.size())});
  }
  return d;
}

void write_dataset(std::ostream& out, const Dataset& d, bool with_id) {
  out << (with_id ? "lat,lon,id\n" : "lat,lon\n");
  for (const auto& p : d.points) {
    out << fmt::format("{:.7f},{:.7f}", p.lat, p.lon);
    if (with_id) out << ',' << p.id;
    out << '\n';
  }
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

double bearing(const GeoPoint& from, const GeoPoint& to) {
  if (from.lat == to.lat && from.lon == to.lon) {
    throw DomainError("bearing between coincident points is undefined");
  }
  const double phi1 = from.lat * kDegToRad;
  const double phi2 = to.lat * kDegToRad;
  const double dlambda = (to.lon - from.lon) * kDegToRad;
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  double theta = std::atan2(y, x);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  // atan2 can return exactly -0.0 or round up to 2pi after the shift.
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return theta;
}

Dataset filter_close(const Dataset& d, double min_sep_m) {
  Dataset kept{d.name, {}};
  for (const auto& p : d.points) {
    bool ok = true;
    for (const auto& q : kept.points) {
      if (haversine_m(p, q) < min_sep_m) {
        ok = false;
        break;
      }
    }
    if (ok) kept.points.push_back(p);
  }
  for (std::size_t i = 0; i < kept.points.size(); ++i) kept.points[i].id = static_cast<NodeId>(i);
  return kept;
}

LayoutKind parse_layout_kind(const std::string& s) {
  if (s == "uniform") return LayoutKind::uniform;
  if (s == "clustered") return LayoutKind::clustered;
  if (s == "complete") return LayoutKind::complete;
  throw DomainError("unknown layout kind '" + s + "' (expected uniform, clustered or complete)");
}

std::string to_string(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::uniform: return "uniform";
    case LayoutKind::clustered: return "clustered";
    case LayoutKind::complete: return "complete";
  }
  return "unknown";
}

Dataset generate_synthetic(LayoutKind kind, std::size_t n, double extent_m, std::uint64_t seed) {
  if (!(extent_m > 0.0)) throw DomainError("extent must be positive");
  Rng rng(seed);
  Dataset d{"synthetic-" + to_string(kind), {}};
  d.points.reserve(n);
  const double half = extent_m / 2.0;

  switch (kind) {
    case LayoutKind::uniform:
      for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(-half, half);
        const double y = rng.uniform(-half, half);
        d.points.push_back(from_meters(x, y, static_cast<NodeId>(i)));
      }
      break;

    case LayoutKind::clustered: {
      const std::size_t k = (n + 49) / 50;
      const double sigma = extent_m / 20.0;
      std::vector<std::pair<double, double>> centers(k);
      for (auto& c : centers) c = {rng.uniform(-half, half), rng.uniform(-half, half)};
      for (std::size_t i = 0; i < n; ++i) {
        const auto& [cx, cy] = centers[i % k];
        const double x = std::clamp(cx + sigma * rng.normal(), -half, half);
        const double y = std::clamp(cy + sigma * rng.normal(), -half, half);
        d.points.push_back(from_meters(x, y, static_cast<NodeId>(i)));
      }
      break;
    }

    case LayoutKind::complete:
      // 5 m square: largest pairwise distance ~7.1 m.
      for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(-2.5, 2.5);
        const double y = rng.uniform(-2.5, 2.5);
        d.points.push_back(from_meters(x, y, static_cast<NodeId>(i)));
      }
      break;
  }
  return d;
}

}  // namespace anonsat
