#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anonsat {

using NodeId = std::uint32_t;

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// A gateway position in WGS84 decimal degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  NodeId id = 0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Gateway positions in source-row order. Ids are 0..n-1 in that order.
struct Dataset {
  std::string name;
  std::vector<GeoPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Reads `lat,lon` CSV (an optional trailing `id` column is accepted and
/// ignored). Lines starting with `#` and blank lines are skipped. Throws
/// ParseError naming the 1-based line of the first malformed row.
Dataset parse_dataset(std::istream& source, std::string name);

/// Writes `lat,lon` (or `lat,lon,id`) CSV with 7 fixed decimals per coordinate.
void write_dataset(std::ostream& out, const Dataset& d, bool with_id = false);

/// Great-circle distance in meters on a sphere of radius kEarthRadiusM.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Initial great-circle bearing in radians, 0 = north, clockwise, in [0, 2pi).
/// Throws DomainError when both points coincide.
double bearing(const GeoPoint& from, const GeoPoint& to);

/// Greedy keep-first proximity filter: a point survives iff it is at least
/// `min_sep_m` away from every point kept before it. Ids are renumbered.
Dataset filter_close(const Dataset& d, double min_sep_m = 200.0);

enum class LayoutKind { uniform, clustered, complete };

LayoutKind parse_layout_kind(const std::string& s);
std::string to_string(LayoutKind kind);

/// Synthetic gateway layouts near (0, 0).
///  - uniform:   n points uniform over a square of side `extent_m`
///  - clustered: n points in ceil(n/50) Gaussian clusters inside that square
///  - complete:  n points within 10 m of each other (every range connects all)
Dataset generate_synthetic(LayoutKind kind, std::size_t n, double extent_m, std::uint64_t seed);

}  // namespace anonsat
