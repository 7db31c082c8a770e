// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "byte_io.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"

namespace geodex {

// Header layout (little-endian):
//   0  magic "ETS1"        14 dtype u8          80 t_start i64
//   4  version u16         15 quant u8          88 t_end i64
//   6  flags u16           16 transform 6xf64   96 height u32
//   8  epsg u32            64 scale f64        100 width u32
//  12  dims u16            72 zero_point f64   104 product name [32]
// followed by the payload and a CRC-32 of the payload.

namespace {
constexpr char kMagic[4] = {'E', 'T', 'S', '1'};
constexpr std::size_t kCrcSize = 4;
}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  constexpr std::size_t kStep = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kStep) {
    const std::size_t n = std::min(kStep, bytes.size() - off);
    crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> write_store(const RasterTile& tile) {
  tile.validate();
  if (tile.product.size() > kStoreProductNameSize) {
    fail(ErrorCode::InvalidTile, "product name longer than " + std::to_string(kStoreProductNameSize) + " bytes");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kStoreHeaderSize + tile.data.size() + kCrcSize);
  detail::ByteWriter w(out);
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.put<std::uint16_t>(kStoreVersion);
  w.put<std::uint16_t>(0);
  w.put<std::uint32_t>(tile.crs.epsg());
  w.put<std::uint16_t>(tile.dims);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(tile.dtype));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(tile.quant.kind));
  for (double v : {tile.transform.a, tile.transform.b, tile.transform.c, tile.transform.d, tile.transform.e,
                   tile.transform.f}) {
    w.put<double>(v);
  }
  w.put<double>(tile.quant.scale);
  w.put<double>(tile.quant.zero_point);
  w.put<std::int64_t>(tile.time.start());
  w.put<std::int64_t>(tile.time.end());
  w.put<std::uint32_t>(tile.height);
  w.put<std::uint32_t>(tile.width);
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(tile.product.data()), tile.product.size()});
  w.pad_to(kStoreHeaderSize);
  w.put_bytes(tile.data);
  w.put<std::uint32_t>(crc32(tile.data));
  return out;
}

void write_store(const RasterTile& tile, std::ostream& sink) {
  const auto bytes = write_store(tile);
  sink.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!sink) fail(ErrorCode::InvalidArgument, "failed to write store");
}

RasterTile read_store(std::span<const std::uint8_t> bytes) {
  const detail::ByteReader in(bytes);
  in.require(0, 4);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorCode::BadMagic, "not an ETS1 store");
  in.require(0, kStoreHeaderSize);
  const auto version = in.read<std::uint16_t>(4);
  if (version != kStoreVersion) fail(ErrorCode::UnsupportedVersion, "store version " + std::to_string(version));
  if (in.read<std::uint16_t>(6) != 0) fail(ErrorCode::UnsupportedVersion, "unknown header flags");

  RasterTile tile;
  const auto epsg = in.read<std::uint32_t>(8);
  if (epsg == 0) fail(ErrorCode::CorruptData, "EPSG code 0");
  tile.crs = CrsId(epsg);
  tile.dims = in.read<std::uint16_t>(12);
  const auto dtype = in.read<std::uint8_t>(14);
  if (dtype < 1 || dtype > 3) fail(ErrorCode::CorruptData, "dtype code " + std::to_string(dtype));
  tile.dtype = static_cast<DType>(dtype);
  const auto quant = in.read<std::uint8_t>(15);
  if (quant > 1) fail(ErrorCode::CorruptData, "quant code " + std::to_string(quant));
  tile.quant.kind = static_cast<QuantScheme::Kind>(quant);
  tile.transform = GeoTransform{in.read<double>(16), in.read<double>(24), in.read<double>(32),
                                in.read<double>(40), in.read<double>(48), in.read<double>(56)};
  tile.quant.scale = in.read<double>(64);
  tile.quant.zero_point = in.read<double>(72);
  const auto start = in.read<std::int64_t>(80);
  const auto end = in.read<std::int64_t>(88);
  if (!(start < end)) fail(ErrorCode::CorruptData, "empty time interval");
  tile.time = TimeInterval(start, end);
  tile.height = in.read<std::uint32_t>(96);
  tile.width = in.read<std::uint32_t>(100);
  const auto name = in.slice(104, kStoreProductNameSize);
  std::size_t name_len = 0;
  while (name_len < name.size() && name[name_len] != 0) ++name_len;
  tile.product.assign(reinterpret_cast<const char*>(name.data()), name_len);

  const std::uint64_t pixels = static_cast<std::uint64_t>(tile.width) * tile.height;
  const std::uint64_t pixel_bytes = static_cast<std::uint64_t>(tile.dims) * dtype_size(tile.dtype);
  if (pixel_bytes != 0 && pixels > bytes.size() / pixel_bytes) {
    fail(ErrorCode::TruncatedFile, "payload extends past end of file");
  }
  const std::uint64_t payload = pixels * pixel_bytes;
  in.require(kStoreHeaderSize, payload);
  in.require(kStoreHeaderSize + payload, kCrcSize);
  if (bytes.size() != kStoreHeaderSize + payload + kCrcSize) fail(ErrorCode::CorruptData, "trailing bytes after CRC");
  const auto body = in.slice(kStoreHeaderSize, payload);
  const auto stored_crc = in.read<std::uint32_t>(kStoreHeaderSize + payload);
  if (crc32(body) != stored_crc) fail(ErrorCode::ChecksumMismatch, "payload CRC-32 does not match");
  tile.data.assign(body.begin(), body.end());

  try {
    tile.validate();
  } catch (const Error& e) {
    fail(ErrorCode::CorruptData, e.what());
  }
  return tile;
}

RasterTile read_store(std::istream& source) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return read_store(bytes);
}

void write_store_file(const RasterTile& tile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot open " + path.string() + " for writing");
  write_store(tile, out);
}

RasterTile read_store_file(const std::filesystem::path& path) { return read_store(read_file_bytes(path)); }

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace geodex
