// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodex/geocore.hpp"

namespace geodex {

/// Storage dtype of embedding values. Numeric values match the canonical
/// store's dtype byte.
enum class DType : std::uint8_t { I8 = 1, U16 = 2, F32 = 3 };

std::size_t dtype_size(DType t);
std::string_view to_string(DType t);
/// Accepts "i8"/"int8", "u16"/"uint16", "f32"/"float32". Throws UnknownDtype.
DType parse_dtype(std::string_view name);

/// Mapping from stored integers back to floating point:
/// Affine: value = scale * (raw - zero_point).
struct QuantScheme {
  enum class Kind : std::uint8_t { Identity = 0, Affine = 1 };

  Kind kind = Kind::Identity;
  double scale = 1.0;
  double zero_point = 0.0;

  static QuantScheme identity() { return {}; }
  /// Throws InvalidArgument unless scale > 0 and both values are finite.
  static QuantScheme affine(double scale, double zero_point = 0.0);

  bool is_identity() const { return kind == Kind::Identity; }

  friend bool operator==(const QuantScheme&, const QuantScheme&) = default;
};

/// Georeferenced H x W x D grid of pixel embeddings. `data` is little-endian,
/// row-major and pixel-interleaved: the D values of one pixel are contiguous.
struct RasterTile {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t dims = 0;
  DType dtype = DType::F32;
  std::vector<std::uint8_t> data;
  GeoTransform transform;
  CrsId crs{4326};
  TimeInterval time = TimeInterval::always();
  QuantScheme quant;
  std::string product;

  std::size_t pixel_count() const { return std::size_t{width} * height; }
  std::size_t pixel_bytes() const { return std::size_t{dims} * dtype_size(dtype); }
  std::size_t expected_bytes() const { return pixel_count() * pixel_bytes(); }

  /// Raw bytes of pixel (row, col); no bounds check beyond debug asserts.
  std::span<const std::uint8_t> pixel(std::uint32_t row, std::uint32_t col) const;

  /// World-space extent (valid for axis-aligned transforms).
  BoundingBox footprint() const;

  /// Throws InvalidTile when sizes, transform or time violate the invariants.
  void validate() const;

  friend bool operator==(const RasterTile&, const RasterTile&) = default;
};

/// One patch-level embedding: a footprint in EPSG:4326 and its vector.
struct PatchRecord {
  std::uint64_t id = 0;
  BoundingBox footprint;
  TimeInterval time = TimeInterval::always();
  std::string product;
  std::vector<float> embedding;

  friend bool operator==(const PatchRecord&, const PatchRecord&) = default;
};

}  // namespace geodex
