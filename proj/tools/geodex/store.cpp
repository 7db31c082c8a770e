// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "store.hpp"

#include <fstream>

#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "json.hpp"

namespace geodex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view kind_name(EntryKind k) { return k == EntryKind::Raster ? "raster" : "patch"; }

json to_json(const ManifestEntry& e) {
  return {{"file", e.file},
          {"product", e.product},
          {"kind", kind_name(e.kind)},
          {"bbox", {e.bbox.minx(), e.bbox.miny(), e.bbox.maxx(), e.bbox.maxy()}},
          {"t_start", e.time.start()},
          {"t_end", e.time.end()},
          {"epsg", e.epsg},
          {"dims", e.dims},
          {"count", e.count}};
}

ManifestEntry entry_from_json(const json& j) {
  ManifestEntry e;
  e.file = j.at("file").get<std::string>();
  if (e.file.empty() || fs::path(e.file).has_parent_path() || e.file == "." || e.file == "..") {
    fail(ErrorCode::CorruptData, "manifest file name '" + e.file + "' must be a plain file name");
  }
  e.product = j.at("product").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "raster") {
    e.kind = EntryKind::Raster;
  } else if (kind == "patch") {
    e.kind = EntryKind::Patch;
  } else {
    fail(ErrorCode::CorruptData, "manifest kind '" + kind + "'");
  }
  const auto& b = j.at("bbox");
  if (!b.is_array() || b.size() != 4) fail(ErrorCode::CorruptData, "manifest bbox must have 4 numbers");
  e.bbox = BoundingBox(b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>());
  e.time = TimeInterval(j.at("t_start").get<std::int64_t>(), j.at("t_end").get<std::int64_t>());
  e.epsg = j.at("epsg").get<std::uint32_t>();
  e.dims = j.at("dims").get<std::uint32_t>();
  e.count = j.at("count").get<std::uint64_t>();
  return e;
}

void check_entry(const ManifestEntry& e, const BoundingBox& bbox, const TimeInterval& time) {
  if (!(e.bbox == bbox) || !(e.time == time)) {
    fail(ErrorCode::CorruptData, e.file + ": contents do not match the manifest");
  }
}

}  // namespace

Manifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, path.string() + ": no store manifest");
  Manifest m;
  try {
    const json j = json::parse(in);
    m.format_version = j.at("format_version").get<std::uint16_t>();
    if (m.format_version != kManifestVersion) {
      fail(ErrorCode::UnsupportedVersion, path.string() + ": manifest version " + std::to_string(m.format_version));
    }
    for (const auto& e : j.at("entries")) m.entries.push_back(entry_from_json(e));
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptData, path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnsupportedVersion) throw;
    fail(ErrorCode::CorruptData, path.string() + ": " + e.what());
  }
  return m;
}

void write_manifest(const fs::path& dir, const Manifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) entries.push_back(to_json(e));
  const json j = {{"format_version", manifest.format_version}, {"entries", entries}};

  const fs::path tmp = dir / (std::string(kManifestName) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::InvalidArgument, tmp.string() + ": cannot write");
    out << j.dump(2) << '\n';
    if (!out) fail(ErrorCode::InvalidArgument, tmp.string() + ": write failed");
  }
  fs::rename(tmp, dir / kManifestName);
}

StoreContents load_store(const fs::path& dir) {
  StoreContents s;
  s.manifest = read_manifest(dir);
  for (const auto& e : s.manifest.entries) {
    const fs::path path = dir / e.file;
    if (e.kind == EntryKind::Raster) {
      RasterTile tile = read_store_file(path);
      check_entry(e, tile.footprint(), tile.time);
      s.tiles.push_back(std::move(tile));
    } else {
      std::ifstream in(path);
      if (!in) fail(ErrorCode::CorruptData, path.string() + ": listed in the manifest but missing");
      auto records = parse_patch_table(in);
      BoundingBox bbox;
      TimeInterval time;
      for (const auto& r : records) {
        bbox = bbox_envelope(bbox, r.footprint);
        time = interval_envelope(time, r.time);
      }
      check_entry(e, bbox, time);
      for (auto& r : records) s.patches.push_back(std::move(r));
    }
  }
  return s;
}

}  // namespace geodex::cli
