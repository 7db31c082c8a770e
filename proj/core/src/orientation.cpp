// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/orientation.hpp"

#include <algorithm>
#include <cmath>

#include "geodex/error.hpp"

namespace geodex {

RasterTile normalize_orientation(RasterTile tile) {
  if (!tile.transform.is_axis_aligned()) fail(ErrorCode::UnsupportedRotation, "b or d is non-zero");
  if (!(std::abs(tile.transform.determinant()) >= 1e-12)) fail(ErrorCode::SingularTransform, "|det| < 1e-12");
  if (tile.transform.e < 0.0 || tile.height == 0) return tile;

  const std::size_t row_bytes = std::size_t{tile.width} * tile.pixel_bytes();
  auto* base = tile.data.data();
  for (std::uint32_t top = 0, bottom = tile.height - 1; top < bottom; ++top, --bottom) {
    std::swap_ranges(base + top * row_bytes, base + (top + 1) * row_bytes, base + bottom * row_bytes);
  }
  tile.transform.f += tile.transform.e * tile.height;
  tile.transform.e = -tile.transform.e;
  return tile;
}

}  // namespace geodex
