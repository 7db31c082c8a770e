// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/raster.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "geodex/error.hpp"

namespace geodex {

std::size_t dtype_size(DType t) {
  switch (t) {
    case DType::I8: return 1;
    case DType::U16: return 2;
    case DType::F32: return 4;
  }
  fail(ErrorCode::UnknownDtype, "dtype code " + std::to_string(static_cast<int>(t)));
}

std::string_view to_string(DType t) {
  switch (t) {
    case DType::I8: return "i8";
    case DType::U16: return "u16";
    case DType::F32: return "f32";
  }
  return "?";
}

DType parse_dtype(std::string_view name) {
  if (name == "i8" || name == "int8") return DType::I8;
  if (name == "u16" || name == "uint16") return DType::U16;
  if (name == "f32" || name == "float32") return DType::F32;
  fail(ErrorCode::UnknownDtype, std::string(name));
}

QuantScheme QuantScheme::affine(double scale, double zero_point) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(zero_point)) {
    fail(ErrorCode::InvalidArgument, "quantization scale must be finite and > 0");
  }
  return {Kind::Affine, scale, zero_point};
}

std::span<const std::uint8_t> RasterTile::pixel(std::uint32_t row, std::uint32_t col) const {
  assert(row < height && col < width);
  const std::size_t stride = pixel_bytes();
  return {data.data() + (std::size_t{row} * width + col) * stride, stride};
}

BoundingBox RasterTile::footprint() const {
  const WorldCoord corners[] = {
      transform_pixel_to_world(transform, 0, 0),
      transform_pixel_to_world(transform, 0, width),
      transform_pixel_to_world(transform, height, 0),
      transform_pixel_to_world(transform, height, width),
  };
  double minx = corners[0].x, maxx = corners[0].x, miny = corners[0].y, maxy = corners[0].y;
  for (const auto& p : corners) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  return {minx, miny, maxx, maxy};
}

void RasterTile::validate() const {
  if (width == 0 || height == 0) fail(ErrorCode::InvalidTile, "zero width or height");
  if (dims == 0) fail(ErrorCode::InvalidTile, "zero embedding dimensions");
  (void)dtype_size(dtype);
  if (data.size() != expected_bytes()) {
    fail(ErrorCode::InvalidTile, "payload is " + std::to_string(data.size()) + " bytes, expected " +
                                     std::to_string(expected_bytes()));
  }
  if (!(std::abs(transform.determinant()) >= 1e-12)) fail(ErrorCode::InvalidTile, "singular transform");
  if (time.is_empty()) fail(ErrorCode::InvalidTile, "empty time interval");
  if (quant.kind == QuantScheme::Kind::Affine && !(quant.scale > 0.0)) {
    fail(ErrorCode::InvalidTile, "quantization scale must be > 0");
  }
}

}  // namespace geodex
