// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/error.hpp"

namespace geodex {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidBox: return "InvalidBox";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidCrs: return "InvalidCrs";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::LatitudeOutOfRange: return "LatitudeOutOfRange";
    case ErrorCode::LongitudeOutOfRange: return "LongitudeOutOfRange";
    case ErrorCode::UnsupportedRotation: return "UnsupportedRotation";
    case ErrorCode::UnknownProduct: return "UnknownProduct";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::UnsupportedCompression: return "UnsupportedCompression";
    case ErrorCode::UnsupportedLayout: return "UnsupportedLayout";
    case ErrorCode::MissingGeoKeys: return "MissingGeoKeys";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::CorruptData: return "CorruptData";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EmbeddingLengthMismatch: return "EmbeddingLengthMismatch";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::UnknownDtype: return "UnknownDtype";
    case ErrorCode::InvalidTile: return "InvalidTile";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::CrsMismatch: return "CrsMismatch";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::ZeroResolution: return "ZeroResolution";
    case ErrorCode::PatchTooLarge: return "PatchTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::TooFewVectors: return "TooFewVectors";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail, std::optional<std::size_t> line) {
  std::string msg(to_string(code));
  if (line) msg += " (line " + std::to_string(*line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> line)
    : std::runtime_error(compose(code, detail, line)), code_(code), line_(line), detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace geodex
