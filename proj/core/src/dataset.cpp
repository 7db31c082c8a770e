// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "geodex/embed.hpp"
#include "geodex/error.hpp"
#include "geodex/index.hpp"

namespace geodex {

struct GeoDataset::Node {
  Kind kind = Kind::Raster;
  BoundingBox bounds;
  TimeInterval time;
  CrsId crs;
  std::optional<double> resolution;

  std::vector<RasterTile> tiles;
  std::vector<PatchRecord> patches;
  SpatioTemporalIndex index;  // ids are positions in tiles / patches

  std::optional<GeoDataset> left;
  std::optional<GeoDataset> right;
};

bool Sample::empty() const {
  if (!tiles.empty() || !patches.empty()) return false;
  if (sides.empty()) return true;
  return std::any_of(sides.begin(), sides.end(), [](const Sample& s) { return s.empty(); });
}

GeoDataset GeoDataset::from_tiles(std::vector<RasterTile> tiles) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Raster;
  node->bounds = BoundingBox::empty();
  node->time = TimeInterval::empty();
  if (!tiles.empty()) node->crs = tiles.front().crs;

  std::vector<IndexEntry> entries;
  entries.reserve(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const RasterTile& t = tiles[i];
    t.validate();
    if (t.crs != node->crs) {
      fail(ErrorCode::CrsMismatch,
           "tile " + std::to_string(i) + " is EPSG:" + std::to_string(t.crs.epsg()) + ", expected EPSG:" +
               std::to_string(node->crs.epsg()));
    }
    if (!t.transform.is_axis_aligned()) fail(ErrorCode::UnsupportedRotation, "tile " + std::to_string(i));
    const BoundingBox fp = t.footprint();
    if (fp.is_empty()) fail(ErrorCode::InvalidTile, "tile " + std::to_string(i) + " has an empty footprint");
    entries.push_back({i, fp, t.time});
    node->bounds = bbox_envelope(node->bounds, fp);
    node->time = interval_envelope(node->time, t.time);
    const double res = std::abs(t.transform.a);
    node->resolution = node->resolution ? std::min(*node->resolution, res) : res;
  }
  node->index = SpatioTemporalIndex(std::move(entries));
  node->tiles = std::move(tiles);
  return GeoDataset(std::move(node));
}

GeoDataset GeoDataset::from_patches(std::vector<PatchRecord> patches) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Patch;
  node->bounds = BoundingBox::empty();
  node->time = TimeInterval::empty();
  node->crs = CrsId(4326);

  std::vector<IndexEntry> entries;
  entries.reserve(patches.size());
  for (std::size_t i = 0; i < patches.size(); ++i) {
    entries.push_back({i, patches[i].footprint, patches[i].time});
    node->bounds = bbox_envelope(node->bounds, patches[i].footprint);
    node->time = interval_envelope(node->time, patches[i].time);
  }
  node->index = SpatioTemporalIndex(std::move(entries));
  node->patches = std::move(patches);
  return GeoDataset(std::move(node));
}

GeoDataset::Kind GeoDataset::kind() const { return node_->kind; }
const BoundingBox& GeoDataset::bounds() const { return node_->bounds; }
const TimeInterval& GeoDataset::time_bounds() const { return node_->time; }
CrsId GeoDataset::crs() const { return node_->crs; }
std::optional<double> GeoDataset::resolution() const { return node_->resolution; }
std::span<const RasterTile> GeoDataset::tiles() const { return node_->tiles; }
std::span<const PatchRecord> GeoDataset::patches() const { return node_->patches; }
const GeoDataset* GeoDataset::left() const { return node_->left ? &*node_->left : nullptr; }
const GeoDataset* GeoDataset::right() const { return node_->right ? &*node_->right : nullptr; }

Sample GeoDataset::sample(const BoundingBox& bbox, const TimeInterval& time) const {
  const Node& n = *node_;
  Sample s{bbox, time, {}, {}, {}};
  switch (n.kind) {
    case Kind::Raster:
      for (auto id : n.index.query(bbox, time)) s.tiles.push_back(&n.tiles[id]);
      break;
    case Kind::Patch:
      for (auto id : n.index.query(bbox, time)) s.patches.push_back(&n.patches[id]);
      break;
    case Kind::Intersection: {
      const BoundingBox b = bbox_intersection(bbox, n.bounds);
      const TimeInterval t = interval_intersection(time, n.time);
      s.sides.push_back(n.left->sample(b, t));
      s.sides.push_back(n.right->sample(b, t));
      break;
    }
    case Kind::Union: {
      Sample l = n.left->sample(bbox, time);
      return l.empty() ? n.right->sample(bbox, time) : l;
    }
  }
  return s;
}

std::optional<std::vector<float>> GeoDataset::vector_at(double x, double y, const TimeInterval& time) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Raster:
      for (const auto& t : n.tiles) {
        if (t.footprint().contains(x, y) && t.time.intersects(time)) return pixel_vector_at(t, x, y);
      }
      return std::nullopt;
    case Kind::Patch:
      return std::nullopt;
    case Kind::Intersection:
      if (!n.bounds.contains(x, y)) return std::nullopt;
      [[fallthrough]];
    case Kind::Union:
      if (auto v = n.left->vector_at(x, y, time)) return v;
      return n.right->vector_at(x, y, time);
  }
  return std::nullopt;
}

namespace {

void require_same_crs(const GeoDataset& a, const GeoDataset& b) {
  if (a.crs() != b.crs()) {
    fail(ErrorCode::CrsMismatch,
         "EPSG:" + std::to_string(a.crs().epsg()) + " vs EPSG:" + std::to_string(b.crs().epsg()));
  }
}

std::optional<double> finer(std::optional<double> a, std::optional<double> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

}  // namespace

GeoDataset intersect_datasets(const GeoDataset& a, const GeoDataset& b) {
  require_same_crs(a, b);
  auto node = std::make_shared<GeoDataset::Node>();
  node->kind = GeoDataset::Kind::Intersection;
  node->crs = a.crs();
  node->bounds = bbox_intersection(a.bounds(), b.bounds());
  node->time = interval_intersection(a.time_bounds(), b.time_bounds());
  if (node->bounds.is_empty()) fail(ErrorCode::EmptyIntersection, "operands do not overlap in space");
  if (node->time.is_empty()) fail(ErrorCode::EmptyIntersection, "operands do not overlap in time");
  if (a.resolution() && b.resolution()) node->resolution = std::min(*a.resolution(), *b.resolution());
  node->left = a;
  node->right = b;
  return GeoDataset(std::move(node));
}

GeoDataset union_datasets(const GeoDataset& a, const GeoDataset& b) {
  require_same_crs(a, b);
  auto node = std::make_shared<GeoDataset::Node>();
  node->kind = GeoDataset::Kind::Union;
  node->crs = a.crs();
  node->bounds = bbox_envelope(a.bounds(), b.bounds());
  node->time = interval_envelope(a.time_bounds(), b.time_bounds());
  node->resolution = finer(a.resolution(), b.resolution());
  node->left = a;
  node->right = b;
  return GeoDataset(std::move(node));
}

}  // namespace geodex
