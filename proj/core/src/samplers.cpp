// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "geodex/error.hpp"
#include "geodex/index.hpp"
#include "geodex/random.hpp"

namespace geodex {
namespace {

void check_resolution(double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    fail(ErrorCode::ZeroResolution, "resolution must be positive, got " + std::to_string(resolution));
  }
}

void check_bounds(const BoundingBox& bounds) {
  if (bounds.is_empty()) fail(ErrorCode::InvalidArgument, "sampling bounds are empty");
}

/// Whole pixels in `extent`, tolerant of rounding in extent = max - min.
std::size_t extent_pixels(double extent, double resolution) {
  return static_cast<std::size_t>(std::floor(extent / resolution + 1e-9));
}

std::vector<double> axis_origins(double lo, double hi, double resolution, std::uint32_t size_px,
                                 std::uint32_t stride_px) {
  const std::size_t count = grid_axis_count(hi - lo, resolution, size_px, stride_px);
  const double side = size_px * resolution;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double origin = lo + static_cast<double>(k) * stride_px * resolution;
    if (count > 1) origin = std::min(origin, hi - side);
    out.push_back(origin);
  }
  return out;
}

}  // namespace

std::size_t grid_axis_count(double extent, double resolution, std::uint32_t size_px, std::uint32_t stride_px) {
  check_resolution(resolution);
  if (size_px == 0 || stride_px == 0) fail(ErrorCode::InvalidArgument, "size and stride must be >= 1");
  const std::size_t n = extent_pixels(extent, resolution);
  if (n <= size_px) return 1;
  return (n - size_px + stride_px - 1) / stride_px + 1;
}

std::vector<BoundingBox> grid_samples(const BoundingBox& bounds, double resolution, std::uint32_t size_px,
                                      std::uint32_t stride_px) {
  check_bounds(bounds);
  const auto xs = axis_origins(bounds.minx(), bounds.maxx(), resolution, size_px, stride_px);
  const auto ys = axis_origins(bounds.miny(), bounds.maxy(), resolution, size_px, stride_px);
  const double side = size_px * resolution;
  std::vector<BoundingBox> out;
  out.reserve(xs.size() * ys.size());
  for (double y : ys) {
    for (double x : xs) out.emplace_back(x, y, x + side, y + side);
  }
  return out;
}

std::vector<BoundingBox> random_samples(const BoundingBox& bounds, double resolution, std::uint32_t size_px,
                                        std::uint32_t n, std::uint64_t seed) {
  check_bounds(bounds);
  check_resolution(resolution);
  if (size_px == 0) fail(ErrorCode::InvalidArgument, "size must be >= 1");
  const double side = size_px * resolution;
  if (side > bounds.width() || side > bounds.height()) {
    fail(ErrorCode::PatchTooLarge, "patch side " + std::to_string(side) + " exceeds the bounds");
  }
  const double range_x = bounds.width() - side;
  const double range_y = bounds.height() - side;
  SplitMix64 rng(seed);
  std::vector<BoundingBox> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double x = std::min(bounds.minx() + rng.next_double() * range_x, bounds.maxx() - side);
    const double y = std::min(bounds.miny() + rng.next_double() * range_y, bounds.maxy() - side);
    out.emplace_back(x, y, x + side, y + side);
  }
  return out;
}

}  // namespace geodex
