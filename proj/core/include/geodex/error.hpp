// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geodex {

enum class ErrorCode {
  // geometry
  InvalidBox,
  InvalidInterval,
  InvalidCrs,
  SingularTransform,
  LatitudeOutOfRange,
  LongitudeOutOfRange,
  UnsupportedRotation,
  // registry
  UnknownProduct,
  // formats
  BadMagic,
  UnsupportedVersion,
  UnsupportedCompression,
  UnsupportedLayout,
  MissingGeoKeys,
  TruncatedFile,
  CorruptData,
  ChecksumMismatch,
  MalformedLine,
  EmbeddingLengthMismatch,
  BadTimestamp,
  SizeMismatch,
  MissingField,
  UnknownDtype,
  InvalidTile,
  // index / datasets / samplers
  InvalidEntry,
  CrsMismatch,
  EmptyIntersection,
  ZeroResolution,
  PatchTooLarge,
  InvalidArgument,
  // embeddings
  DimensionMismatch,
  ZeroVector,
  TooFewVectors,
  OutOfBounds,
  NonFiniteValue,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. `code()` identifies the
/// failure; `line()` is set for line-oriented parsers (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  /// The message without the code and line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

}  // namespace geodex
