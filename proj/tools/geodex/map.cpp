// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <unordered_set>

#include "commands.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "geodex/index.hpp"
#include "json.hpp"
#include "store.hpp"

namespace geodex::cli {
namespace {

struct PixelRange {
  std::uint32_t row0, row1, col0, col1;  // half-open
};

/// Pixels of `tile` that may have their centre inside `box`.
PixelRange pixels_touching(const RasterTile& tile, const BoundingBox& box) {
  const PixelCoord a = transform_world_to_pixel(tile.transform, box.minx(), box.miny());
  const PixelCoord b = transform_world_to_pixel(tile.transform, box.maxx(), box.maxy());
  auto clamp = [](double v, std::uint32_t hi) {
    return static_cast<std::uint32_t>(std::clamp(v, 0.0, static_cast<double>(hi)));
  };
  return {clamp(std::floor(std::min(a.row, b.row)), tile.height), clamp(std::ceil(std::max(a.row, b.row)), tile.height),
          clamp(std::floor(std::min(a.col, b.col)), tile.width), clamp(std::ceil(std::max(a.col, b.col)), tile.width)};
}

}  // namespace

void cmd_map(const MapOptions& opt, const GlobalOptions& g, std::ostream& out) {
  StoreContents store = load_store(opt.embeddings);
  if (store.tiles.empty() || !store.patches.empty()) {
    fail(ErrorCode::InvalidArgument, opt.embeddings.string() + ": --embeddings must be a raster store");
  }
  RasterTile label_tile = read_store_file(opt.labels);
  if (label_tile.dims != 1 || label_tile.dtype != DType::U16 || !label_tile.quant.is_identity()) {
    fail(ErrorCode::InvalidArgument, opt.labels.string() + ": label raster must be one u16 band without quantization");
  }

  const GeoDataset embeddings = GeoDataset::from_tiles(std::move(store.tiles));
  const GeoDataset labels = GeoDataset::from_tiles({std::move(label_tile)});
  const GeoDataset dataset = intersect_datasets(embeddings, labels);
  const auto patches = grid_samples(dataset.bounds(), *dataset.resolution(), opt.size, opt.size);

  const auto tiles = embeddings.tiles();
  std::vector<std::uint64_t> offsets;
  std::uint64_t next = 0;
  for (const auto& t : tiles) {
    offsets.push_back(next);
    next += t.pixel_count();
  }

  // Training pixels: embedding pixels inside the intersection whose label is
  // non-zero, gathered patch by patch.
  std::vector<LabeledVector> train;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& box : patches) {
    const Sample s = dataset.sample(box);
    if (s.empty()) continue;
    for (const RasterTile* t : s.sides.front().tiles) {
      const auto ti = static_cast<std::size_t>(t - tiles.data());
      const PixelRange r = pixels_touching(*t, s.bbox);
      for (std::uint32_t row = r.row0; row < r.row1; ++row) {
        for (std::uint32_t col = r.col0; col < r.col1; ++col) {
          const WorldCoord c = transform_pixel_to_world(t->transform, row + 0.5, col + 0.5);
          if (!box.contains(c.x, c.y) || !dataset.bounds().contains(c.x, c.y)) continue;
          const std::uint64_t id = offsets[ti] + static_cast<std::uint64_t>(row) * t->width + col;
          if (!seen.insert(id).second) continue;
          const auto lv = labels.vector_at(c.x, c.y);
          if (!lv) continue;
          const auto label = static_cast<std::uint32_t>(std::lround(lv->front()));
          if (label == 0) continue;
          train.push_back({dequantize_pixel(t->pixel(row, col), t->dtype, t->quant), label, id});
        }
      }
    }
  }
  if (train.empty()) fail(ErrorCode::InvalidArgument, "no labeled embedding pixels inside the intersection");

  // Classify every embedding pixel on a grid over the embedding bounds.
  const BoundingBox bounds = embeddings.bounds();
  const double res = *embeddings.resolution();
  const auto width = static_cast<std::uint32_t>(std::ceil(bounds.width() / res - 1e-9));
  const auto height = static_cast<std::uint32_t>(std::ceil(bounds.height() / res - 1e-9));
  RasterTile result;
  result.width = width;
  result.height = height;
  result.dims = 1;
  result.dtype = DType::U16;
  result.transform = GeoTransform{res, 0.0, bounds.minx(), 0.0, -res, bounds.maxy()};
  result.crs = embeddings.crs();
  result.time = embeddings.time_bounds();
  result.data.assign(result.expected_bytes(), 0);

  VectorSet queries(tiles.front().dims);
  for (std::uint32_t row = 0; row < height; ++row) {
    for (std::uint32_t col = 0; col < width; ++col) {
      const WorldCoord c = transform_pixel_to_world(result.transform, row + 0.5, col + 0.5);
      if (auto v = embeddings.vector_at(c.x, c.y)) queries.add(static_cast<std::uint64_t>(row) * width + col, *v);
    }
  }
  const auto predicted = knn_classify(queries, train, opt.k, opt.metric, g.jobs);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const auto value = static_cast<std::uint16_t>(predicted[i]);
    std::memcpy(result.data.data() + queries.id(i) * sizeof(std::uint16_t), &value, sizeof(value));
  }
  write_store_file(result, opt.out);

  if (g.json) {
    out << nlohmann::json{{"patches", patches.size()}, {"training", train.size()}, {"classified", predicted.size()},
                          {"out", opt.out.string()}}
               .dump()
        << '\n';
  } else {
    out << "patches," << patches.size() << "\ntraining," << train.size() << "\nclassified," << predicted.size()
        << '\n';
  }
}

}  // namespace geodex::cli
