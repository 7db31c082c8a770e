// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

namespace geodex {

/// Axis-aligned box in CRS units. Edges follow the closed-open convention, so
/// boxes that only share a boundary do not intersect. There is no
/// antimeridian wrapping: minx > maxx is rejected.
class BoundingBox {
 public:
  /// The EMPTY box.
  constexpr BoundingBox() = default;
  BoundingBox(double minx, double miny, double maxx, double maxy);

  static constexpr BoundingBox empty() { return {}; }

  double minx() const { return minx_; }
  double miny() const { return miny_; }
  double maxx() const { return maxx_; }
  double maxy() const { return maxy_; }
  double width() const { return is_empty() ? 0.0 : maxx_ - minx_; }
  double height() const { return is_empty() ? 0.0 : maxy_ - miny_; }
  double center_x() const { return 0.5 * (minx_ + maxx_); }
  double center_y() const { return 0.5 * (miny_ + maxy_); }

  bool is_empty() const { return !(minx_ < maxx_ && miny_ < maxy_); }

  /// Positive-area overlap.
  bool intersects(const BoundingBox& other) const;
  /// Point test, closed at the min edges and open at the max edges.
  bool contains(double x, double y) const;
  /// True when `other` lies inside this box (EMPTY is inside everything).
  bool covers(const BoundingBox& other) const;

  friend bool operator==(const BoundingBox& a, const BoundingBox& b);

 private:
  double minx_ = std::numeric_limits<double>::infinity();
  double miny_ = std::numeric_limits<double>::infinity();
  double maxx_ = -std::numeric_limits<double>::infinity();
  double maxy_ = -std::numeric_limits<double>::infinity();
};

BoundingBox bbox_intersection(const BoundingBox& a, const BoundingBox& b);
/// Smallest box containing both; EMPTY operands are ignored.
BoundingBox bbox_envelope(const BoundingBox& a, const BoundingBox& b);

/// [start, end) in seconds since the Unix epoch, UTC.
class TimeInterval {
 public:
  /// The EMPTY interval.
  constexpr TimeInterval() = default;
  TimeInterval(std::int64_t start, std::int64_t end);

  static constexpr TimeInterval empty() { return {}; }
  static TimeInterval always();
  /// [Y-01-01T00:00Z, (Y+1)-01-01T00:00Z)
  static TimeInterval year(int y);
  /// [first-01-01, (last+1)-01-01)
  static TimeInterval years(int first, int last);

  std::int64_t start() const { return start_; }
  std::int64_t end() const { return end_; }
  bool is_empty() const { return !(start_ < end_); }
  bool intersects(const TimeInterval& other) const;
  bool covers(const TimeInterval& other) const;

  friend bool operator==(const TimeInterval& a, const TimeInterval& b);

 private:
  std::int64_t start_ = 0;
  std::int64_t end_ = 0;
};

TimeInterval interval_intersection(const TimeInterval& a, const TimeInterval& b);
TimeInterval interval_envelope(const TimeInterval& a, const TimeInterval& b);

/// Epoch seconds of 00:00:00Z on the given civil date.
std::int64_t epoch_seconds(int year, unsigned month, unsigned day);
/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM)".
/// Throws Error(BadTimestamp).
std::int64_t parse_iso8601(std::string_view text);
/// "YYYY-MM-DDTHH:MM:SSZ"; the ALWAYS sentinels print as "-inf" / "+inf".
std::string format_iso8601(std::int64_t seconds);

struct PixelCoord {
  double row;
  double col;
};

struct WorldCoord {
  double x;
  double y;
};

/// world (x, y) = (a*col + b*row + c, d*col + e*row + f)
struct GeoTransform {
  double a = 1.0, b = 0.0, c = 0.0;
  double d = 0.0, e = -1.0, f = 0.0;

  double determinant() const { return a * e - b * d; }
  bool is_axis_aligned() const { return b == 0.0 && d == 0.0; }

  friend bool operator==(const GeoTransform&, const GeoTransform&) = default;
};

WorldCoord transform_pixel_to_world(const GeoTransform& t, double row, double col);
/// Throws Error(SingularTransform) when |det| < 1e-12.
PixelCoord transform_world_to_pixel(const GeoTransform& t, double x, double y);

/// EPSG code. 4326 and 3857 are understood by the projection helpers; other
/// codes are carried through as opaque identifiers.
class CrsId {
 public:
  explicit CrsId(std::uint32_t epsg = 4326);

  std::uint32_t epsg() const { return epsg_; }
  bool is_geographic() const { return epsg_ == 4326; }

  friend bool operator==(const CrsId&, const CrsId&) = default;

 private:
  std::uint32_t epsg_;
};

inline constexpr double kWebMercatorRadius = 6378137.0;
inline constexpr double kWebMercatorMaxLat = 85.06;
/// Spherical meters per degree used for patch footprints and resolution
/// comparisons (error < 0.35% against the ellipsoid).
inline constexpr double kMetersPerDegree = 111320.0;

WorldCoord project_4326_to_3857(double lon_deg, double lat_deg);
WorldCoord project_3857_to_4326(double x_m, double y_m);

}  // namespace geodex
