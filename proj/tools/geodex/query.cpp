// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "commands.hpp"
#include "geodex/error.hpp"
#include "geodex/index.hpp"
#include "json.hpp"
#include "store.hpp"

namespace geodex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

namespace {

GeoDataset store_dataset(StoreContents& store) {
  if (store.tiles.empty() && store.patches.empty()) fail(ErrorCode::InvalidArgument, "store is empty");
  if (store.patches.empty()) return GeoDataset::from_tiles(std::move(store.tiles));
  if (store.tiles.empty()) return GeoDataset::from_patches(std::move(store.patches));
  return union_datasets(GeoDataset::from_tiles(std::move(store.tiles)), GeoDataset::from_patches(std::move(store.patches)));
}

/// WGS84 version of a box in `crs`; GeoJSON output is WGS84 only.
BoundingBox to_wgs84(const BoundingBox& b, std::uint32_t epsg) {
  if (epsg == 4326) return b;
  if (epsg != 3857) fail(ErrorCode::CrsMismatch, "GeoJSON export needs EPSG:4326 or EPSG:3857, got EPSG:" + std::to_string(epsg));
  const WorldCoord lo = project_3857_to_4326(b.minx(), b.miny());
  const WorldCoord hi = project_3857_to_4326(b.maxx(), b.maxy());
  return BoundingBox(lo.x, lo.y, hi.x, hi.y);
}

json polygon(const BoundingBox& b) {
  return {{"type", "Polygon"},
          {"coordinates",
           {{{b.minx(), b.miny()}, {b.maxx(), b.miny()}, {b.maxx(), b.maxy()}, {b.minx(), b.maxy()}, {b.minx(), b.miny()}}}}};
}

void print_boxes(const std::vector<BoundingBox>& boxes, const GlobalOptions& g, std::ostream& out) {
  for (const auto& b : boxes) {
    if (g.json) {
      out << json{{"minx", b.minx()}, {"miny", b.miny()}, {"maxx", b.maxx()}, {"maxy", b.maxy()}}.dump() << '\n';
    } else {
      out << format_number(b.minx()) << ',' << format_number(b.miny()) << ',' << format_number(b.maxx()) << ','
          << format_number(b.maxy()) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Search corpus

/// Searchable vectors of one store plus the footprint of every id. Raster ids
/// number pixels consecutively, tile by tile in manifest order, row-major.
struct Corpus {
  VectorSet vectors;
  std::uint32_t epsg = 4326;
  std::vector<RasterTile> tiles;
  std::vector<std::uint64_t> offsets;  // first id of each tile
  std::vector<PatchRecord> patches;
  std::unordered_map<std::uint64_t, std::size_t> patch_index;

  BoundingBox footprint(std::uint64_t id) const {
    if (tiles.empty()) return patches[patch_index.at(id)].footprint;
    const auto t = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), id) - offsets.begin()) - 1;
    const RasterTile& tile = tiles[t];
    const std::uint64_t p = id - offsets[t];
    const double row = static_cast<double>(p / tile.width);
    const double col = static_cast<double>(p % tile.width);
    const WorldCoord a = transform_pixel_to_world(tile.transform, row, col);
    const WorldCoord b = transform_pixel_to_world(tile.transform, row + 1, col + 1);
    return BoundingBox(std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y));
  }
};

Corpus build_corpus(StoreContents store) {
  Corpus c;
  if (store.tiles.empty() && store.patches.empty()) fail(ErrorCode::InvalidArgument, "store is empty");
  if (!store.tiles.empty() && !store.patches.empty()) {
    fail(ErrorCode::InvalidArgument, "store mixes rasters and patch tables; search one kind per store");
  }
  if (!store.tiles.empty()) {
    c.tiles = std::move(store.tiles);
    c.epsg = c.tiles.front().crs.epsg();
    c.vectors = VectorSet(c.tiles.front().dims);
    std::uint64_t next = 0;
    for (const auto& t : c.tiles) {
      if (t.crs.epsg() != c.epsg) fail(ErrorCode::CrsMismatch, "store tiles use more than one CRS");
      c.offsets.push_back(next);
      next += t.pixel_count();
    }
    c.vectors.reserve(next);
    for (std::size_t t = 0; t < c.tiles.size(); ++t) {
      const RasterTile& tile = c.tiles[t];
      for (std::uint32_t r = 0; r < tile.height; ++r) {
        for (std::uint32_t col = 0; col < tile.width; ++col) {
          c.vectors.add(c.offsets[t] + static_cast<std::uint64_t>(r) * tile.width + col,
                        dequantize_pixel(tile.pixel(r, col), tile.dtype, tile.quant));
        }
      }
    }
  } else {
    c.patches = std::move(store.patches);
    c.vectors = patch_corpus(c.patches);
    for (std::size_t i = 0; i < c.patches.size(); ++i) {
      if (!c.patch_index.emplace(c.patches[i].id, i).second) {
        fail(ErrorCode::InvalidArgument, "duplicate patch id " + std::to_string(c.patches[i].id) + " in store");
      }
    }
  }
  return c;
}

std::vector<float> read_query_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::vector<float> v;
  try {
    json j = json::parse(in);
    if (j.is_object()) j = j.at("embedding");
    if (!j.is_array()) fail(ErrorCode::InvalidArgument, path.string() + ": expected an array of numbers");
    for (const auto& x : j) {
      if (!x.is_number()) fail(ErrorCode::InvalidArgument, path.string() + ": expected an array of numbers");
      v.push_back(x.get<float>());
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
  return v;
}

std::vector<float> query_at(const Corpus& c, double lon, double lat) {
  if (!c.patches.empty()) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.patches.size(); ++i) {
      const auto& p = c.patches[i];
      const double dx = p.footprint.center_x() - lon;
      const double dy = p.footprint.center_y() - lat;
      const double d = dx * dx + dy * dy;
      if (d < best_d || (d == best_d && p.id < c.patches[best].id)) {
        best = i;
        best_d = d;
      }
    }
    return c.patches[best].embedding;
  }
  double x = lon, y = lat;
  if (c.epsg == 3857) {
    const WorldCoord w = project_4326_to_3857(lon, lat);
    x = w.x;
    y = w.y;
  } else if (c.epsg != 4326) {
    fail(ErrorCode::CrsMismatch, "--query-lon/--query-lat need an EPSG:4326 or EPSG:3857 store, got EPSG:" +
                                     std::to_string(c.epsg));
  }
  for (const auto& t : c.tiles) {
    if (t.footprint().contains(x, y)) return pixel_vector_at(t, x, y);
  }
  fail(ErrorCode::OutOfBounds, "query location (" + format_number(lon) + ", " + format_number(lat) + ") is outside the store");
}

}  // namespace

void cmd_sample(const SampleOptions& opt, const GlobalOptions& g, std::ostream& out) {
  StoreContents store = load_store(opt.store);
  const GeoDataset ds = store_dataset(store);
  const auto res = opt.resolution ? opt.resolution : ds.resolution();
  if (!res) fail(ErrorCode::InvalidArgument, "patch-table stores have no pixel size; pass --res");
  const auto boxes = opt.random ? random_samples(ds.bounds(), *res, opt.size, *opt.random, opt.seed)
                                : grid_samples(ds.bounds(), *res, opt.size, opt.stride.value_or(opt.size));
  print_boxes(boxes, g, out);
}

void cmd_search(const SearchOptions& opt, const GlobalOptions& g, std::ostream& out) {
  const bool by_location = opt.lon.has_value() || opt.lat.has_value();
  if (by_location == opt.query_file.has_value()) {
    fail(ErrorCode::InvalidArgument, "give either --query-lon and --query-lat, or --query-file");
  }
  if (by_location && !(opt.lon && opt.lat)) fail(ErrorCode::InvalidArgument, "--query-lon and --query-lat go together");

  const Corpus c = build_corpus(load_store(opt.store));
  const std::vector<float> query = by_location ? query_at(c, *opt.lon, *opt.lat) : read_query_file(*opt.query_file);

  std::vector<Hit> hits;
  if (opt.ivf) {
    const IvfIndex idx = build_ivf(c.vectors, opt.ivf->first, opt.seed, opt.metric);
    hits = search_ivf(idx, query, opt.k, opt.ivf->second);
  } else {
    hits = topk_search(query, c.vectors, opt.k, opt.metric, g.jobs);
  }

  if (opt.geojson) {
    json features = json::array();
    for (std::size_t i = 0; i < hits.size(); ++i) {
      features.push_back({{"type", "Feature"},
                          {"geometry", polygon(to_wgs84(c.footprint(hits[i].id), c.epsg))},
                          {"properties", {{"rank", i + 1}, {"id", hits[i].id}, {"score", hits[i].score}}}});
    }
    out << json{{"type", "FeatureCollection"}, {"features", features}}.dump() << '\n';
    return;
  }
  if (!g.json) out << "rank,id,score,minx,miny,maxx,maxy\n";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const BoundingBox b = c.footprint(hits[i].id);
    if (g.json) {
      out << json{{"rank", i + 1}, {"id", hits[i].id}, {"score", hits[i].score},
                  {"bbox", {b.minx(), b.miny(), b.maxx(), b.maxy()}}}
                 .dump()
          << '\n';
    } else {
      out << i + 1 << ',' << hits[i].id << ',' << format_number(hits[i].score) << ',' << format_number(b.minx()) << ','
          << format_number(b.miny()) << ',' << format_number(b.maxx()) << ',' << format_number(b.maxy()) << '\n';
    }
  }
}

void cmd_export(const ExportOptions& opt, const GlobalOptions&, std::ostream& out) {
  const Manifest m = read_manifest(opt.store);
  json features = json::array();
  for (const auto& e : m.entries) {
    features.push_back({{"type", "Feature"},
                        {"geometry", polygon(to_wgs84(e.bbox, e.epsg))},
                        {"properties",
                         {{"file", e.file},
                          {"product", e.product},
                          {"kind", e.kind == EntryKind::Raster ? "raster" : "patch"},
                          {"t_start", format_iso8601(e.time.start())},
                          {"t_end", format_iso8601(e.time.end())},
                          {"dims", e.dims},
                          {"count", e.count}}}});
  }
  const std::string text = json{{"type", "FeatureCollection"}, {"features", features}}.dump() + "\n";
  if (!opt.out) {
    out << text;
    return;
  }
  std::ofstream f(*opt.out, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + opt.out->string());
  f << text;
}

}  // namespace geodex::cli
