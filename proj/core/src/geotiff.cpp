// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <optional>

#include "byte_io.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"

namespace geodex {
namespace {

using detail::ByteReader;

enum Tag : std::uint16_t {
  kImageWidth = 256,
  kImageLength = 257,
  kBitsPerSample = 258,
  kCompression = 259,
  kStripOffsets = 273,
  kSamplesPerPixel = 277,
  kRowsPerStrip = 278,
  kStripByteCounts = 279,
  kPlanarConfig = 284,
  kPredictor = 317,
  kTileWidth = 322,
  kTileLength = 323,
  kTileOffsets = 324,
  kTileByteCounts = 325,
  kSampleFormat = 339,
  kModelPixelScale = 33550,
  kModelTiepoint = 33922,
  kGeoKeyDirectory = 34735,
};

enum GeoKey : std::uint16_t {
  kGeographicType = 2048,
  kProjectedCsType = 3072,
};

constexpr std::uint16_t kUserDefined = 32767;

std::size_t type_size(std::uint16_t type) {
  switch (type) {
    case 1: case 2: case 6: case 7: return 1;   // BYTE ASCII SBYTE UNDEFINED
    case 3: case 8: return 2;                   // SHORT SSHORT
    case 4: case 9: case 11: return 4;          // LONG SLONG FLOAT
    case 5: case 10: case 12: return 8;         // RATIONAL SRATIONAL DOUBLE
    default: return 0;
  }
}

struct Entry {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::uint64_t value_offset = 0;  // where the values start in the file
};

class Ifd {
 public:
  Ifd(const ByteReader& in, std::uint32_t offset) : in_(in) {
    const auto n = in.read<std::uint16_t>(offset);
    in.require(offset + 2ull, 12ull * n + 4);  // entries plus the next-IFD pointer
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint64_t pos = offset + 2ull + 12ull * i;
      const auto tag = in.read<std::uint16_t>(pos);
      Entry e;
      e.type = in.read<std::uint16_t>(pos + 2);
      e.count = in.read<std::uint32_t>(pos + 4);
      const std::size_t tsize = type_size(e.type);
      if (tsize == 0) continue;  // unknown field type; skip the entry
      const std::uint64_t total = std::uint64_t{tsize} * e.count;
      e.value_offset = total <= 4 ? pos + 8 : in.read<std::uint32_t>(pos + 8);
      entries_[tag] = e;
    }
  }

  bool has(std::uint16_t tag) const { return entries_.count(tag) != 0; }

  std::vector<std::uint64_t> integers(std::uint16_t tag) const {
    const Entry& e = entries_.at(tag);
    const std::size_t tsize = type_size(e.type);
    if (e.type != 1 && e.type != 3 && e.type != 4) {
      fail(ErrorCode::CorruptData, "tag " + std::to_string(tag) + " is not an unsigned integer field");
    }
    in_.require(e.value_offset, std::uint64_t{tsize} * e.count);
    std::vector<std::uint64_t> out;
    out.reserve(e.count);
    for (std::uint32_t i = 0; i < e.count; ++i) {
      const std::uint64_t p = e.value_offset + std::uint64_t{tsize} * i;
      switch (e.type) {
        case 1: out.push_back(in_.read<std::uint8_t>(p)); break;
        case 3: out.push_back(in_.read<std::uint16_t>(p)); break;
        default: out.push_back(in_.read<std::uint32_t>(p)); break;
      }
    }
    return out;
  }

  std::uint64_t integer(std::uint16_t tag, std::optional<std::uint64_t> fallback = std::nullopt) const {
    if (!has(tag)) {
      if (fallback) return *fallback;
      fail(ErrorCode::CorruptData, "missing required tag " + std::to_string(tag));
    }
    const auto v = integers(tag);
    if (v.empty()) fail(ErrorCode::CorruptData, "tag " + std::to_string(tag) + " has no values");
    return v.front();
  }

  std::vector<double> doubles(std::uint16_t tag) const {
    const Entry& e = entries_.at(tag);
    if (e.type != 12 && e.type != 11) {
      fail(ErrorCode::CorruptData, "tag " + std::to_string(tag) + " is not a floating-point field");
    }
    const std::size_t tsize = type_size(e.type);
    in_.require(e.value_offset, std::uint64_t{tsize} * e.count);
    std::vector<double> out;
    out.reserve(e.count);
    for (std::uint32_t i = 0; i < e.count; ++i) {
      const std::uint64_t p = e.value_offset + std::uint64_t{tsize} * i;
      out.push_back(e.type == 12 ? in_.read<double>(p) : static_cast<double>(in_.read<float>(p)));
    }
    return out;
  }

 private:
  const ByteReader& in_;
  std::map<std::uint16_t, Entry> entries_;
};

/// Returns the value of the first sample; all samples must agree.
std::uint64_t uniform_per_sample(const Ifd& ifd, std::uint16_t tag, std::uint64_t fallback, std::uint64_t spp) {
  if (!ifd.has(tag)) return fallback;
  const auto v = ifd.integers(tag);
  if (v.empty()) fail(ErrorCode::CorruptData, "tag " + std::to_string(tag) + " has no values");
  if (v.size() != 1 && v.size() != spp) fail(ErrorCode::CorruptData, "tag " + std::to_string(tag) + " count");
  if (!std::all_of(v.begin(), v.end(), [&](std::uint64_t x) { return x == v.front(); })) {
    fail(ErrorCode::UnsupportedLayout, "mixed per-sample values in tag " + std::to_string(tag));
  }
  return v.front();
}

DType sample_dtype(std::uint64_t bits, std::uint64_t format) {
  if (bits == 8 && format == 2) return DType::I8;
  if (bits == 16 && format == 1) return DType::U16;
  if (bits == 32 && format == 3) return DType::F32;
  fail(ErrorCode::UnsupportedLayout,
       "unsupported sample type: " + std::to_string(bits) + " bits, SampleFormat " + std::to_string(format));
}

std::uint32_t read_epsg(const Ifd& ifd) {
  const auto keys = ifd.integers(kGeoKeyDirectory);
  if (keys.size() < 4) fail(ErrorCode::MissingGeoKeys, "GeoKeyDirectory header too short");
  const std::size_t n = keys[3];
  if (keys.size() < 4 + 4 * n) fail(ErrorCode::MissingGeoKeys, "GeoKeyDirectory truncated");
  std::optional<std::uint64_t> geographic;
  std::optional<std::uint64_t> projected;
  for (std::size_t k = 0; k < n; ++k) {
    const auto id = keys[4 + 4 * k];
    const auto location = keys[5 + 4 * k];
    const auto value = keys[7 + 4 * k];
    if (location != 0) continue;  // CS codes are always stored inline
    if (id == kGeographicType) geographic = value;
    if (id == kProjectedCsType) projected = value;
  }
  for (const auto& code : {projected, geographic}) {
    if (code && *code != 0 && *code != kUserDefined) return static_cast<std::uint32_t>(*code);
  }
  fail(ErrorCode::MissingGeoKeys, "no EPSG code in GeographicTypeGeoKey or ProjectedCSTypeGeoKey");
}

/// Decodes one strip or tile into exactly `expected` bytes.
std::vector<std::uint8_t> decode_chunk(std::span<const std::uint8_t> raw, std::uint64_t compression,
                                       std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  if (compression == 1) {
    if (raw.size() < expected) fail(ErrorCode::TruncatedFile, "uncompressed chunk shorter than its pixels");
    std::memcpy(out.data(), raw.data(), expected);
    return out;
  }
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) fail(ErrorCode::CorruptData, "inflateInit failed");
  zs.next_in = const_cast<Bytef*>(raw.data());
  zs.avail_in = static_cast<uInt>(raw.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(expected);
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  const auto remaining_in = zs.avail_in;
  const std::string message = zs.msg ? zs.msg : std::to_string(rc);
  inflateEnd(&zs);
  if (rc == Z_STREAM_END || (rc == Z_BUF_ERROR && produced == expected)) {
    if (produced != expected) fail(ErrorCode::CorruptData, "deflate chunk shorter than its pixels");
    return out;
  }
  if (rc == Z_BUF_ERROR && remaining_in == 0) fail(ErrorCode::TruncatedFile, "deflate stream ends early");
  fail(ErrorCode::CorruptData, "deflate error: " + message);
}

}  // namespace

RasterTile parse_geotiff(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) fail(ErrorCode::TruncatedFile, "shorter than a TIFF header");
  bool big_endian = false;
  if (bytes[0] == 'I' && bytes[1] == 'I') {
    big_endian = false;
  } else if (bytes[0] == 'M' && bytes[1] == 'M') {
    big_endian = true;
  } else {
    fail(ErrorCode::BadMagic, "byte-order mark is neither II nor MM");
  }
  const ByteReader in(bytes, big_endian);
  const auto magic = in.read<std::uint16_t>(2);
  if (magic == 43) fail(ErrorCode::BadMagic, "BigTIFF is not supported");
  if (magic != 42) fail(ErrorCode::BadMagic, "TIFF magic is " + std::to_string(magic));

  const Ifd ifd(in, in.read<std::uint32_t>(4));

  const std::uint64_t width = ifd.integer(kImageWidth);
  const std::uint64_t height = ifd.integer(kImageLength);
  const std::uint64_t spp = ifd.integer(kSamplesPerPixel, 1);
  if (width == 0 || height == 0 || spp == 0) fail(ErrorCode::CorruptData, "zero image dimension");
  if (spp > 0xFFFF) fail(ErrorCode::UnsupportedLayout, "too many samples per pixel");

  const std::uint64_t compression = ifd.integer(kCompression, 1);
  if (compression != 1 && compression != 8 && compression != 32946) {
    fail(ErrorCode::UnsupportedCompression, "Compression=" + std::to_string(compression));
  }
  if (ifd.integer(kPlanarConfig, 1) != 1) fail(ErrorCode::UnsupportedLayout, "PlanarConfiguration must be 1 (chunky)");
  if (ifd.integer(kPredictor, 1) != 1) fail(ErrorCode::UnsupportedLayout, "predictors are not supported");

  const DType dtype = sample_dtype(uniform_per_sample(ifd, kBitsPerSample, 1, spp),
                                   uniform_per_sample(ifd, kSampleFormat, 1, spp));
  const std::size_t sample_size = dtype_size(dtype);
  const std::uint64_t pixel_bytes = spp * sample_size;

  if (!ifd.has(kModelPixelScale) || !ifd.has(kModelTiepoint) || !ifd.has(kGeoKeyDirectory)) {
    fail(ErrorCode::MissingGeoKeys, "ModelPixelScale, ModelTiepoint and GeoKeyDirectory are required");
  }
  const auto scale = ifd.doubles(kModelPixelScale);
  const auto tie = ifd.doubles(kModelTiepoint);
  if (scale.size() < 2 || tie.size() < 6) fail(ErrorCode::MissingGeoKeys, "short ModelPixelScale or ModelTiepoint");
  const std::uint32_t epsg = read_epsg(ifd);

  // The decoded image cannot be much larger than the file: either the bytes
  // are stored raw, or deflate expands them by at most ~1032x.
  const std::uint64_t total = width * height * pixel_bytes;
  const std::uint64_t limit = compression == 1 ? bytes.size() : std::max<std::uint64_t>(bytes.size() * 1100, 1 << 20);
  if (width > 0xFFFFFFFFull || height > 0xFFFFFFFFull || total / width / height != pixel_bytes || total > limit) {
    fail(compression == 1 ? ErrorCode::TruncatedFile : ErrorCode::CorruptData, "image larger than the file can hold");
  }

  RasterTile tile;
  tile.width = static_cast<std::uint32_t>(width);
  tile.height = static_cast<std::uint32_t>(height);
  tile.dims = static_cast<std::uint16_t>(spp);
  tile.dtype = dtype;
  tile.data.assign(total, 0);

  const bool tiled = ifd.has(kTileWidth) || ifd.has(kTileLength) || ifd.has(kTileOffsets);
  std::uint64_t chunk_w = width;
  std::uint64_t chunk_h = 0;
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint64_t> counts;
  if (tiled) {
    chunk_w = ifd.integer(kTileWidth);
    chunk_h = ifd.integer(kTileLength);
    if (chunk_w == 0 || chunk_h == 0) fail(ErrorCode::CorruptData, "zero tile size");
    if (!ifd.has(kTileOffsets) || !ifd.has(kTileByteCounts)) fail(ErrorCode::CorruptData, "missing tile offsets");
    offsets = ifd.integers(kTileOffsets);
    counts = ifd.integers(kTileByteCounts);
  } else {
    chunk_h = std::min(ifd.integer(kRowsPerStrip, height), height);
    if (chunk_h == 0) fail(ErrorCode::CorruptData, "RowsPerStrip is zero");
    if (!ifd.has(kStripOffsets) || !ifd.has(kStripByteCounts)) fail(ErrorCode::CorruptData, "missing strip offsets");
    offsets = ifd.integers(kStripOffsets);
    counts = ifd.integers(kStripByteCounts);
  }
  if (chunk_w * chunk_h * pixel_bytes > std::max<std::uint64_t>(limit, total)) {
    fail(ErrorCode::CorruptData, "chunk larger than the file can hold");
  }
  const std::uint64_t across = (width + chunk_w - 1) / chunk_w;
  const std::uint64_t down = (height + chunk_h - 1) / chunk_h;
  if (offsets.size() != across * down || counts.size() != offsets.size()) {
    fail(ErrorCode::CorruptData, "chunk offset/byte-count arrays do not match the image layout");
  }

  const std::size_t row_bytes = static_cast<std::size_t>(width * pixel_bytes);
  for (std::uint64_t cy = 0; cy < down; ++cy) {
    for (std::uint64_t cx = 0; cx < across; ++cx) {
      const std::size_t idx = static_cast<std::size_t>(cy * across + cx);
      const std::uint64_t rows = tiled ? chunk_h : std::min(chunk_h, height - cy * chunk_h);
      const std::size_t expected = static_cast<std::size_t>(chunk_w * rows * pixel_bytes);
      const auto raw = in.slice(offsets[idx], counts[idx]);
      auto chunk = decode_chunk(raw, compression, expected);
      if (big_endian) detail::swap_samples(chunk, sample_size);

      // Copy the part of the chunk that lies inside the image; tile padding
      // beyond the right and bottom edges is dropped.
      const std::uint64_t x0 = cx * chunk_w;
      const std::uint64_t y0 = cy * chunk_h;
      const std::uint64_t copy_cols = std::min(chunk_w, width - x0);
      const std::uint64_t copy_rows = std::min(rows, height - y0);
      for (std::uint64_t r = 0; r < copy_rows; ++r) {
        std::memcpy(tile.data.data() + (y0 + r) * row_bytes + x0 * pixel_bytes,
                    chunk.data() + r * chunk_w * pixel_bytes, static_cast<std::size_t>(copy_cols * pixel_bytes));
      }
    }
  }

  const double sx = scale[0];
  const double sy = scale[1];
  if (sx == 0.0 || sy == 0.0) fail(ErrorCode::CorruptData, "zero pixel scale");
  const double ti = tie[0], tj = tie[1], tx = tie[3], ty = tie[4];
  for (double v : {sx, sy, ti, tj, tx, ty}) {
    if (!std::isfinite(v)) fail(ErrorCode::CorruptData, "non-finite georeferencing value");
  }
  tile.transform = GeoTransform{sx, 0.0, tx - ti * sx, 0.0, -sy, ty + tj * sy};
  tile.crs = CrsId(epsg);
  tile.time = TimeInterval::always();
  tile.quant = QuantScheme::identity();
  return tile;
}

}  // namespace geodex
