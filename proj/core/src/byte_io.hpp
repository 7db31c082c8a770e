// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "geodex/error.hpp"

namespace geodex::detail {

static_assert(std::endian::native == std::endian::little, "geodex assumes a little-endian host");

/// Bounds-checked reads at absolute offsets; every overrun throws
/// Error(TruncatedFile).
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes, bool big_endian = false)
      : bytes_(bytes), big_endian_(big_endian) {}

  std::size_t size() const { return bytes_.size(); }
  bool big_endian() const { return big_endian_; }

  void require(std::uint64_t offset, std::uint64_t length) const {
    if (offset > bytes_.size() || length > bytes_.size() - offset) {
      fail(ErrorCode::TruncatedFile, "need " + std::to_string(length) + " bytes at offset " + std::to_string(offset) +
                                         ", file has " + std::to_string(bytes_.size()));
    }
  }

  std::span<const std::uint8_t> slice(std::uint64_t offset, std::uint64_t length) const {
    require(offset, length);
    return bytes_.subspan(static_cast<std::size_t>(offset), static_cast<std::size_t>(length));
  }

  template <typename T>
  T read(std::uint64_t offset) const {
    require(offset, sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + offset, sizeof(T));
    if (big_endian_) value = byteswap_value(value);
    return value;
  }

  template <typename T>
  static T byteswap_value(T value) {
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  bool big_endian_;
};

/// Appends little-endian values.
class ByteWriter {
 public:
  explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    put_bytes({reinterpret_cast<const std::uint8_t*>(&value), sizeof(T)});
  }

  void put_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) return;
    const std::size_t at = out_.size();
    out_.resize(at + bytes.size());
    std::memcpy(out_.data() + at, bytes.data(), bytes.size());
  }
  void pad_to(std::size_t size) {
    if (out_.size() < size) out_.resize(size, 0);
  }

 private:
  std::vector<std::uint8_t>& out_;
};

/// Reverses the byte order of every `sample_size`-byte sample in place.
inline void swap_samples(std::span<std::uint8_t> data, std::size_t sample_size) {
  if (sample_size <= 1) return;
  for (std::size_t i = 0; i + sample_size <= data.size(); i += sample_size) {
    for (std::size_t j = 0; j < sample_size / 2; ++j) std::swap(data[i + j], data[i + sample_size - 1 - j]);
  }
}

}  // namespace geodex::detail
