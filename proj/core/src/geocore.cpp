// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/geocore.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "geodex/error.hpp"

namespace geodex {

// ---------------------------------------------------------------------------
// BoundingBox

BoundingBox::BoundingBox(double minx, double miny, double maxx, double maxy)
    : minx_(minx), miny_(miny), maxx_(maxx), maxy_(maxy) {
  if (std::isnan(minx) || std::isnan(miny) || std::isnan(maxx) || std::isnan(maxy)) {
    fail(ErrorCode::InvalidBox, "NaN coordinate");
  }
  if (minx > maxx) fail(ErrorCode::InvalidBox, "minx > maxx (antimeridian-crossing boxes are not supported)");
  if (miny > maxy) fail(ErrorCode::InvalidBox, "miny > maxy");
}

bool BoundingBox::intersects(const BoundingBox& o) const {
  if (is_empty() || o.is_empty()) return false;
  return minx_ < o.maxx_ && o.minx_ < maxx_ && miny_ < o.maxy_ && o.miny_ < maxy_;
}

bool BoundingBox::contains(double x, double y) const {
  return !is_empty() && minx_ <= x && x < maxx_ && miny_ <= y && y < maxy_;
}

bool BoundingBox::covers(const BoundingBox& o) const {
  if (o.is_empty()) return true;
  if (is_empty()) return false;
  return minx_ <= o.minx_ && o.maxx_ <= maxx_ && miny_ <= o.miny_ && o.maxy_ <= maxy_;
}

bool operator==(const BoundingBox& a, const BoundingBox& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  return a.minx_ == b.minx_ && a.miny_ == b.miny_ && a.maxx_ == b.maxx_ && a.maxy_ == b.maxy_;
}

BoundingBox bbox_intersection(const BoundingBox& a, const BoundingBox& b) {
  if (!a.intersects(b)) return BoundingBox::empty();
  return {std::max(a.minx(), b.minx()), std::max(a.miny(), b.miny()), std::min(a.maxx(), b.maxx()),
          std::min(a.maxy(), b.maxy())};
}

BoundingBox bbox_envelope(const BoundingBox& a, const BoundingBox& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.minx(), b.minx()), std::min(a.miny(), b.miny()), std::max(a.maxx(), b.maxx()),
          std::max(a.maxy(), b.maxy())};
}

// ---------------------------------------------------------------------------
// TimeInterval

TimeInterval::TimeInterval(std::int64_t start, std::int64_t end) : start_(start), end_(end) {
  if (start > end) fail(ErrorCode::InvalidInterval, "start > end");
}

TimeInterval TimeInterval::always() {
  return {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
}

TimeInterval TimeInterval::year(int y) { return years(y, y); }

TimeInterval TimeInterval::years(int first, int last) {
  return {epoch_seconds(first, 1, 1), epoch_seconds(last + 1, 1, 1)};
}

bool TimeInterval::intersects(const TimeInterval& o) const {
  if (is_empty() || o.is_empty()) return false;
  return start_ < o.end_ && o.start_ < end_;
}

bool TimeInterval::covers(const TimeInterval& o) const {
  if (o.is_empty()) return true;
  if (is_empty()) return false;
  return start_ <= o.start_ && o.end_ <= end_;
}

bool operator==(const TimeInterval& a, const TimeInterval& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  return a.start_ == b.start_ && a.end_ == b.end_;
}

TimeInterval interval_intersection(const TimeInterval& a, const TimeInterval& b) {
  if (!a.intersects(b)) return TimeInterval::empty();
  return {std::max(a.start(), b.start()), std::min(a.end(), b.end())};
}

TimeInterval interval_envelope(const TimeInterval& a, const TimeInterval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.start(), b.start()), std::max(a.end(), b.end())};
}

// ---------------------------------------------------------------------------
// Calendar helpers

std::int64_t epoch_seconds(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok()) fail(ErrorCode::BadTimestamp, "invalid civil date");
  return sys_seconds{sys_days{ymd}}.time_since_epoch().count();
}

namespace {

bool read_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return ec == std::errc{} && p == s.data() + pos + len;
}

[[noreturn]] void bad_timestamp(std::string_view text) {
  fail(ErrorCode::BadTimestamp, "cannot parse '" + std::string(text) + "'");
}

}  // namespace

std::int64_t parse_iso8601(std::string_view s) {
  int y = 0, mo = 0, d = 0;
  if (!read_fixed(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !read_fixed(s, 5, 2, mo) || s[7] != '-' ||
      !read_fixed(s, 8, 2, d)) {
    bad_timestamp(s);
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31) bad_timestamp(s);
  std::int64_t secs = 0;
  try {
    secs = epoch_seconds(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
  } catch (const Error&) {
    bad_timestamp(s);
  }
  if (s.size() == 10) return secs;

  int hh = 0, mm = 0, ss = 0;
  if ((s[10] != 'T' && s[10] != ' ') || !read_fixed(s, 11, 2, hh) || s.size() < 19 || s[13] != ':' ||
      !read_fixed(s, 14, 2, mm) || s[16] != ':' || !read_fixed(s, 17, 2, ss)) {
    bad_timestamp(s);
  }
  if (hh > 23 || mm > 59 || ss > 60) bad_timestamp(s);
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t digits = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits) bad_timestamp(s);
  }
  if (pos >= s.size()) bad_timestamp(s);  // zone designator is mandatory
  std::int64_t offset = 0;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    int oh = 0, om = 0;
    if (!read_fixed(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' || !read_fixed(s, pos + 4, 2, om)) {
      bad_timestamp(s);
    }
    offset = (s[pos] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    pos += 6;
  } else {
    bad_timestamp(s);
  }
  if (pos != s.size()) bad_timestamp(s);
  return secs + hh * 3600 + mm * 60 + ss - offset;
}

std::string format_iso8601(std::int64_t seconds) {
  if (seconds == std::numeric_limits<std::int64_t>::min()) return "-inf";
  if (seconds == std::numeric_limits<std::int64_t>::max()) return "+inf";
  using namespace std::chrono;
  const sys_seconds tp{std::chrono::seconds{seconds}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss hms{tp - day};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------
// Affine transforms

WorldCoord transform_pixel_to_world(const GeoTransform& t, double row, double col) {
  return {t.a * col + t.b * row + t.c, t.d * col + t.e * row + t.f};
}

PixelCoord transform_world_to_pixel(const GeoTransform& t, double x, double y) {
  const double det = t.determinant();
  if (!(std::abs(det) >= 1e-12)) fail(ErrorCode::SingularTransform, "|det| < 1e-12");
  const double dx = x - t.c;
  const double dy = y - t.f;
  // [col,row] = M^-1 [dx,dy] with M = [[a,b],[d,e]]
  const double col = (t.e * dx - t.b * dy) / det;
  const double row = (-t.d * dx + t.a * dy) / det;
  return {row, col};
}

CrsId::CrsId(std::uint32_t epsg) : epsg_(epsg) {
  if (epsg == 0) fail(ErrorCode::InvalidCrs, "EPSG code must be positive");
}

// ---------------------------------------------------------------------------
// Spherical Web Mercator

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}  // namespace

WorldCoord project_4326_to_3857(double lon, double lat) {
  if (!(std::abs(lat) <= kWebMercatorMaxLat)) fail(ErrorCode::LatitudeOutOfRange, std::to_string(lat));
  if (!(std::abs(lon) <= 180.0)) fail(ErrorCode::LongitudeOutOfRange, std::to_string(lon));
  const double x = kWebMercatorRadius * lon * kDegToRad;
  const double y = kWebMercatorRadius * std::log(std::tan(std::numbers::pi / 4.0 + lat * kDegToRad / 2.0));
  return {x, y};
}

WorldCoord project_3857_to_4326(double x, double y) {
  const double lon = x / kWebMercatorRadius * kRadToDeg;
  const double lat = (2.0 * std::atan(std::exp(y / kWebMercatorRadius)) - std::numbers::pi / 2.0) * kRadToDeg;
  // Tolerate rounding at the edges of the valid domain.
  if (!(std::abs(lon) <= 180.0 + 1e-9)) fail(ErrorCode::LongitudeOutOfRange, std::to_string(lon));
  if (!(std::abs(lat) <= kWebMercatorMaxLat + 1e-9)) fail(ErrorCode::LatitudeOutOfRange, std::to_string(lat));
  return {lon, lat};
}

}  // namespace geodex
