// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "geodex/geocore.hpp"
#include "geodex/raster.hpp"

namespace geodex {

struct IndexEntry {
  std::uint64_t id = 0;
  BoundingBox bbox;
  TimeInterval time = TimeInterval::always();
};

/// Static R-tree over (bbox, time interval) entries, bulk-loaded with
/// Sort-Tile-Recursive packing. Time is not a tree axis: each node keeps the
/// envelope of its children's intervals and prunes on it.
class SpatioTemporalIndex {
 public:
  static constexpr std::size_t kNodeCapacity = 16;

  SpatioTemporalIndex() = default;
  /// Throws InvalidEntry for an empty bbox or time interval.
  explicit SpatioTemporalIndex(std::vector<IndexEntry> entries);

  /// Ids of all entries whose bbox and time both intersect the query
  /// (positive-area / positive-length overlap), ascending.
  std::vector<std::uint64_t> query(const BoundingBox& bbox, const TimeInterval& time) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Number of levels, leaves included; 0 for an empty index.
  std::size_t depth() const { return level_offsets_.empty() ? 0 : level_offsets_.size() - 1; }
  BoundingBox bounds() const;
  TimeInterval time_bounds() const;

 private:
  struct Node {
    BoundingBox bbox;
    TimeInterval time;
    std::uint32_t first = 0;  // into entries_ (leaf level) or nodes_ (upper levels)
    std::uint32_t count = 0;
  };

  std::vector<IndexEntry> entries_;  // STR leaf order
  std::vector<Node> nodes_;          // level 0 (leaves) first, root last
  std::vector<std::size_t> level_offsets_;
};

SpatioTemporalIndex build_index(std::vector<IndexEntry> entries);
std::vector<std::uint64_t> query(const SpatioTemporalIndex& idx, const BoundingBox& bbox, const TimeInterval& time);

// ---------------------------------------------------------------------------
// Datasets

/// What a dataset returns for one (bbox, time) request. Leaf datasets fill
/// `tiles` or `patches`; an intersection returns one Sample per operand in
/// `sides` (left, right). Pointers stay valid while the dataset is alive.
struct Sample {
  BoundingBox bbox;
  TimeInterval time;
  std::vector<const RasterTile*> tiles;
  std::vector<const PatchRecord*> patches;
  std::vector<Sample> sides;

  bool empty() const;
};

/// Queryable collection of raster tiles or patch records, closed under
/// intersection and union. Cheap to copy: nodes are shared and immutable.
class GeoDataset {
 public:
  enum class Kind { Raster, Patch, Intersection, Union };

  /// Tiles must be non-empty, axis-aligned and share one CRS (CrsMismatch).
  static GeoDataset from_tiles(std::vector<RasterTile> tiles);
  /// Patches are always EPSG:4326.
  static GeoDataset from_patches(std::vector<PatchRecord> patches);

  Kind kind() const;
  const BoundingBox& bounds() const;
  const TimeInterval& time_bounds() const;
  CrsId crs() const;
  /// CRS units per pixel; set only when raster-backed.
  std::optional<double> resolution() const;

  /// Leaf contents (empty spans for composite datasets).
  std::span<const RasterTile> tiles() const;
  std::span<const PatchRecord> patches() const;
  /// Operands of an Intersection or Union; nullptr for leaves.
  const GeoDataset* left() const;
  const GeoDataset* right() const;

  Sample sample(const BoundingBox& bbox, const TimeInterval& time = TimeInterval::always()) const;

  /// Dequantized embedding of the raster pixel containing (x, y), searching
  /// tiles in insertion order. Composite datasets answer from the left
  /// operand first. std::nullopt when no raster pixel covers the point.
  std::optional<std::vector<float>> vector_at(double x, double y,
                                              const TimeInterval& time = TimeInterval::always()) const;

 private:
  struct Node;
  explicit GeoDataset(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  friend GeoDataset intersect_datasets(const GeoDataset& a, const GeoDataset& b);
  friend GeoDataset union_datasets(const GeoDataset& a, const GeoDataset& b);

  std::shared_ptr<const Node> node_;
};

/// Spatiotemporal intersection. Resolution is the finer of the two when both
/// sides are raster-backed. Throws CrsMismatch or EmptyIntersection.
GeoDataset intersect_datasets(const GeoDataset& a, const GeoDataset& b);
/// Envelope of both operands; requests are served by the left operand when it
/// has data there, else by the right. Throws CrsMismatch.
GeoDataset union_datasets(const GeoDataset& a, const GeoDataset& b);

// ---------------------------------------------------------------------------
// Samplers

/// Gridded patch origins over `bounds`, row-major (y outer, x inner). Per
/// axis with n = floor(extent / resolution): one patch at min when
/// n <= size_px, otherwise origins at min + k * stride_px * resolution for
/// k = 0..ceil((n - size_px) / stride_px), the last clamped so its far edge
/// meets the bounds. Every box has side size_px * resolution.
std::vector<BoundingBox> grid_samples(const BoundingBox& bounds, double resolution, std::uint32_t size_px,
                                      std::uint32_t stride_px);

/// Number of grid positions along one axis (the per-axis factor of
/// grid_samples().size()).
std::size_t grid_axis_count(double extent, double resolution, std::uint32_t size_px, std::uint32_t stride_px);

/// n boxes of side size_px * resolution with origins uniform over the valid
/// origin rectangle, drawn from splitmix64(seed). Throws PatchTooLarge.
std::vector<BoundingBox> random_samples(const BoundingBox& bounds, double resolution, std::uint32_t size_px,
                                        std::uint32_t n, std::uint64_t seed);

}  // namespace geodex
