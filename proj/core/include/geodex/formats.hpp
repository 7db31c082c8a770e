// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "geodex/raster.hpp"

namespace geodex {

// ---------------------------------------------------------------------------
// GeoTIFF (classic TIFF subset)
//
// Supported: "II"/"MM" byte order, first IFD only, strips or tiles, chunky
// planar configuration, no compression or deflate (Compression 1 or 8),
// 8-bit signed, 16-bit unsigned and 32-bit IEEE samples. Georeferencing comes
// from ModelPixelScale + ModelTiepoint and the CRS from GeoKey 2048 or 3072.
// The returned tile carries the file's own orientation; run
// normalize_orientation() to get a north-up grid.

RasterTile parse_geotiff(std::span<const std::uint8_t> bytes);

// ---------------------------------------------------------------------------
// Patch tables: one JSON object per line.
//
//   {"id": 7, "lon": 12.5, "lat": 41.9, "size_m": 320,
//    "t_start": "2024-01-01T00:00:00Z", "t_end": "2025-01-01T00:00:00Z",
//    "product": "Earth Index Embeddings", "embedding": [0.1, ...]}
//
// "bbox": [minx, miny, maxx, maxy] may replace lon/lat/size_m. Records
// without "id" take their zero-based record index. Blank lines are skipped.

std::vector<PatchRecord> parse_patch_table(std::istream& lines);
/// Writes records in the bbox form, one per line, with explicit ids.
void write_patch_table(std::span<const PatchRecord> records, std::ostream& out);

/// size_m x size_m square centered on (lon, lat), in degrees.
BoundingBox patch_footprint(double lon, double lat, double size_m);

// ---------------------------------------------------------------------------
// Headerless binary grids described by a JSON sidecar:
//
//   {"width": W, "height": H, "dims": D, "dtype": "i8"|"u16"|"f32",
//    "byte_order": "little"|"big", "transform": [a, b, c, d, e, f],
//    "epsg": 4326, "t_start": "...", "t_end": "...",
//    "quant": {"scale": s, "zero_point": z},   (optional)
//    "product": "..."}                          (optional)

RasterTile parse_raw_grid(std::span<const std::uint8_t> data, std::string_view sidecar_json);

// ---------------------------------------------------------------------------
// Canonical tile store ("ETS1"): fixed 136-byte little-endian header, raw
// payload, trailing CRC-32 of the payload.

inline constexpr std::size_t kStoreHeaderSize = 136;
inline constexpr std::size_t kStoreProductNameSize = 32;
inline constexpr std::uint16_t kStoreVersion = 1;

std::vector<std::uint8_t> write_store(const RasterTile& tile);
void write_store(const RasterTile& tile, std::ostream& sink);
RasterTile read_store(std::span<const std::uint8_t> bytes);
RasterTile read_store(std::istream& source);

void write_store_file(const RasterTile& tile, const std::filesystem::path& path);
RasterTile read_store_file(const std::filesystem::path& path);

/// CRC-32 (IEEE 802.3 polynomial), as stored in the trailer.
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

}  // namespace geodex
