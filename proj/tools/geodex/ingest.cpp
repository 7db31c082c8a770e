// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "geodex/orientation.hpp"
#include "json.hpp"
#include "store.hpp"

namespace geodex::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// `stem.ext`, or `stem-N.ext` when that name is already taken.
std::string unique_name(const fs::path& input, const std::string& ext, std::set<std::string>& taken) {
  std::string stem = input.stem().string();
  for (auto& c : stem) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  if (stem.empty()) stem = "input";
  std::string name = stem + ext;
  for (int n = 1; taken.count(name) != 0; ++n) name = stem + "-" + std::to_string(n) + ext;
  taken.insert(name);
  return name;
}

/// Product metadata: name, dimension check, and the product's dequantization
/// when the input carries raw integers without a scheme of its own.
void attach_product(RasterTile& tile, const std::optional<std::string>& name) {
  if (!name) return;
  if (name->size() > kStoreProductNameSize) {
    fail(ErrorCode::InvalidArgument, "product name longer than " + std::to_string(kStoreProductNameSize) + " bytes");
  }
  tile.product = *name;
  const ProductRecord* p = lookup_product(*name);
  if (p == nullptr) return;
  if (tile.dims != p->dimensions) {
    fail(ErrorCode::EmbeddingLengthMismatch,
         std::to_string(tile.dims) + " bands, " + p->name + " has " + std::to_string(p->dimensions));
  }
  if (tile.quant.is_identity() && tile.dtype == p->storage_dtype) tile.quant = p->dequant;
}

ManifestEntry ingest_raster(RasterTile tile, const IngestOptions& opt, const fs::path& file) {
  if (opt.time) tile.time = *opt.time;
  attach_product(tile, opt.product);
  tile = normalize_orientation(std::move(tile));
  write_store_file(tile, file);
  return {file.filename().string(), tile.product,    EntryKind::Raster, tile.footprint(),
          tile.time,                tile.crs.epsg(), tile.dims,         tile.pixel_count()};
}

ManifestEntry ingest_patches(const fs::path& input, const IngestOptions& opt, const fs::path& file) {
  std::ifstream in(input);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + input.string());
  auto records = parse_patch_table(in);
  if (records.empty()) fail(ErrorCode::InvalidArgument, "patch table has no records");

  const std::size_t dims = records.front().embedding.size();
  ManifestEntry e{file.filename().string(), records.front().product, EntryKind::Patch, {}, {}, 4326,
                  static_cast<std::uint32_t>(dims), records.size()};
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    if (opt.time) r.time = *opt.time;
    if (opt.product) r.product = *opt.product;
    if (r.embedding.size() != dims) {
      throw Error(ErrorCode::EmbeddingLengthMismatch,
                  std::to_string(r.embedding.size()) + " values, first record has " + std::to_string(dims), i + 1);
    }
    if (const ProductRecord* p = lookup_product(r.product); p != nullptr && p->dimensions != dims) {
      throw Error(ErrorCode::EmbeddingLengthMismatch,
                  std::to_string(dims) + " values, " + p->name + " has " + std::to_string(p->dimensions), i + 1);
    }
    e.bbox = bbox_envelope(e.bbox, r.footprint);
    e.time = interval_envelope(e.time, r.time);
  }
  if (opt.product) e.product = *opt.product;

  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::InvalidArgument, "cannot write " + file.string());
  write_patch_table(records, os);
  if (!os) fail(ErrorCode::InvalidArgument, "write failed: " + file.string());
  return e;
}

}  // namespace

void cmd_ingest(const IngestOptions& opt, const GlobalOptions& g, std::ostream& out) {
  if (opt.inputs.empty()) fail(ErrorCode::InvalidArgument, "no input files");
  if (opt.out_dir.empty()) fail(ErrorCode::InvalidArgument, "no output store (--out or GEODEX_STORE)");
  if (opt.kind == InputKind::RawGrid) {
    if (opt.sidecars.empty()) fail(ErrorCode::MissingField, "sidecar: raw-grid inputs need --sidecar");
    if (opt.sidecars.size() != 1 && opt.sidecars.size() != opt.inputs.size()) {
      fail(ErrorCode::InvalidArgument, "give one --sidecar for all inputs or one per input");
    }
  } else if (!opt.sidecars.empty()) {
    fail(ErrorCode::InvalidArgument, "--sidecar applies only to raw-grid inputs");
  }

  fs::create_directories(opt.out_dir);
  Manifest manifest;
  if (fs::exists(opt.out_dir / kManifestName)) manifest = read_manifest(opt.out_dir);
  std::set<std::string> taken{kManifestName};
  for (const auto& e : manifest.entries) taken.insert(e.file);

  std::vector<fs::path> written;
  const std::size_t kept = manifest.entries.size();
  for (std::size_t i = 0; i < opt.inputs.size(); ++i) {
    const fs::path& input = opt.inputs[i];
    try {
      if (opt.kind == InputKind::PatchTable) {
        const fs::path file = opt.out_dir / unique_name(input, ".jsonl", taken);
        written.push_back(file);
        manifest.entries.push_back(ingest_patches(input, opt, file));
      } else {
        RasterTile tile;
        if (opt.kind == InputKind::GeoTiff) {
          tile = parse_geotiff(read_file_bytes(input));
        } else {
          const fs::path& sidecar = opt.sidecars.size() == 1 ? opt.sidecars.front() : opt.sidecars[i];
          tile = parse_raw_grid(read_file_bytes(input), read_text(sidecar));
        }
        const fs::path file = opt.out_dir / unique_name(input, ".ets", taken);
        written.push_back(file);
        manifest.entries.push_back(ingest_raster(std::move(tile), opt, file));
      }
    } catch (const Error& e) {
      std::error_code ignored;
      for (const auto& f : written) fs::remove(f, ignored);
      manifest.entries.resize(kept);
      throw Error(e.code(), input.string() + ": " + e.detail(), e.line());
    }
  }
  write_manifest(opt.out_dir, manifest);

  for (std::size_t i = kept; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    if (g.json) {
      out << nlohmann::json{{"file", e.file}, {"kind", e.kind == EntryKind::Raster ? "raster" : "patch"},
                            {"count", e.count}}
                 .dump()
          << '\n';
    } else {
      out << e.file << ',' << (e.kind == EntryKind::Raster ? "raster" : "patch") << ',' << e.count << '\n';
    }
  }
}

}  // namespace geodex::cli
