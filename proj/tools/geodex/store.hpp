// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "geodex/geocore.hpp"
#include "geodex/raster.hpp"

namespace geodex::cli {

inline constexpr std::uint16_t kManifestVersion = 1;
inline constexpr const char* kManifestName = "manifest.json";

enum class EntryKind { Raster, Patch };

/// One file in a store directory. bbox and time are cached from the file so
/// listing a store needs no re-parse.
struct ManifestEntry {
  std::string file;  // relative to the store directory
  std::string product;
  EntryKind kind = EntryKind::Raster;
  BoundingBox bbox;
  TimeInterval time;
  std::uint32_t epsg = 4326;
  std::uint32_t dims = 0;
  std::uint64_t count = 0;  // pixels or patch records
};

struct Manifest {
  std::uint16_t format_version = kManifestVersion;
  std::vector<ManifestEntry> entries;
};

/// Throws Error(InvalidArgument) when the directory has no manifest and
/// Error(CorruptData) when it does not parse.
Manifest read_manifest(const std::filesystem::path& dir);
/// Writes to a temporary name and renames it over manifest.json.
void write_manifest(const std::filesystem::path& dir, const Manifest& manifest);

/// Every file of a store, parsed and checked against its manifest entry.
struct StoreContents {
  Manifest manifest;
  std::vector<RasterTile> tiles;     // raster entries, manifest order
  std::vector<PatchRecord> patches;  // patch entries, manifest then line order
};

StoreContents load_store(const std::filesystem::path& dir);

}  // namespace geodex::cli
