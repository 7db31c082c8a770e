// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geodex/error.hpp"
#include "geodex/index.hpp"

namespace geodex {
namespace {

struct Packable {
  BoundingBox bbox;
  std::uint64_t key;  // tie-breaker: entry id, or node position for upper levels
  std::size_t source;
};

/// Reorders `items` into STR order and returns the size of each packed group.
/// Groups never span two vertical slices.
std::vector<std::size_t> str_order(std::vector<Packable>& items, std::size_t capacity) {
  const std::size_t n = items.size();
  const std::size_t groups = (n + capacity - 1) / capacity;
  const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(groups))));
  const std::size_t slice_items = slices * capacity;

  auto by_x = [](const Packable& l, const Packable& r) {
    const double lx = l.bbox.center_x(), rx = r.bbox.center_x();
    return lx != rx ? lx < rx : l.key < r.key;
  };
  auto by_y = [](const Packable& l, const Packable& r) {
    const double ly = l.bbox.center_y(), ry = r.bbox.center_y();
    return ly != ry ? ly < ry : l.key < r.key;
  };
  std::sort(items.begin(), items.end(), by_x);

  std::vector<std::size_t> sizes;
  for (std::size_t begin = 0; begin < n; begin += slice_items) {
    const std::size_t end = std::min(n, begin + slice_items);
    std::sort(items.begin() + static_cast<std::ptrdiff_t>(begin), items.begin() + static_cast<std::ptrdiff_t>(end), by_y);
    for (std::size_t g = begin; g < end; g += capacity) sizes.push_back(std::min(capacity, end - g));
  }
  return sizes;
}

}  // namespace

SpatioTemporalIndex::SpatioTemporalIndex(std::vector<IndexEntry> entries) {
  for (const auto& e : entries) {
    if (e.bbox.is_empty()) fail(ErrorCode::InvalidEntry, "entry " + std::to_string(e.id) + " has an empty bbox");
    if (e.time.is_empty()) fail(ErrorCode::InvalidEntry, "entry " + std::to_string(e.id) + " has an empty interval");
  }
  if (entries.empty()) return;
  if (entries.size() > 0xFFFFFFFFu) fail(ErrorCode::InvalidArgument, "too many index entries");

  // Leaf level.
  std::vector<Packable> items(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) items[i] = {entries[i].bbox, entries[i].id, i};
  auto sizes = str_order(items, kNodeCapacity);
  entries_.reserve(entries.size());
  for (const auto& it : items) entries_.push_back(entries[it.source]);

  level_offsets_.push_back(0);
  std::size_t pos = 0;
  for (std::size_t s : sizes) {
    Node node{BoundingBox::empty(), TimeInterval::empty(), static_cast<std::uint32_t>(pos),
              static_cast<std::uint32_t>(s)};
    for (std::size_t i = pos; i < pos + s; ++i) {
      node.bbox = bbox_envelope(node.bbox, entries_[i].bbox);
      node.time = interval_envelope(node.time, entries_[i].time);
    }
    nodes_.push_back(node);
    pos += s;
  }
  level_offsets_.push_back(nodes_.size());

  // Upper levels: pack the previous level's nodes the same way until one
  // root remains. Each level is stored contiguously after the one below.
  while (level_offsets_.back() - level_offsets_[level_offsets_.size() - 2] > 1) {
    const std::size_t lo = level_offsets_[level_offsets_.size() - 2];
    const std::size_t hi = level_offsets_.back();
    std::vector<Packable> level(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) level[i - lo] = {nodes_[i].bbox, i - lo, i};
    sizes = str_order(level, kNodeCapacity);

    std::vector<Node> reordered;
    reordered.reserve(level.size());
    for (const auto& it : level) reordered.push_back(nodes_[it.source]);
    std::copy(reordered.begin(), reordered.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(lo));

    std::size_t child = lo;
    for (std::size_t s : sizes) {
      Node parent{BoundingBox::empty(), TimeInterval::empty(), static_cast<std::uint32_t>(child),
                  static_cast<std::uint32_t>(s)};
      for (std::size_t i = child; i < child + s; ++i) {
        parent.bbox = bbox_envelope(parent.bbox, nodes_[i].bbox);
        parent.time = interval_envelope(parent.time, nodes_[i].time);
      }
      nodes_.push_back(parent);
      child += s;
    }
    level_offsets_.push_back(nodes_.size());
  }
}

std::vector<std::uint64_t> SpatioTemporalIndex::query(const BoundingBox& bbox, const TimeInterval& time) const {
  std::vector<std::uint64_t> hits;
  if (nodes_.empty() || bbox.is_empty() || time.is_empty()) return hits;

  // (node index, level) pairs; level 0 nodes point at entries.
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  stack.emplace_back(nodes_.size() - 1, depth() - 1);
  while (!stack.empty()) {
    const auto [index, level] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[index];
    if (!node.bbox.intersects(bbox) || !node.time.intersects(time)) continue;
    if (level == 0) {
      for (std::size_t i = node.first; i < node.first + node.count; ++i) {
        const auto& e = entries_[i];
        if (e.bbox.intersects(bbox) && e.time.intersects(time)) hits.push_back(e.id);
      }
    } else {
      for (std::size_t i = node.first; i < node.first + node.count; ++i) stack.emplace_back(i, level - 1);
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

BoundingBox SpatioTemporalIndex::bounds() const { return nodes_.empty() ? BoundingBox::empty() : nodes_.back().bbox; }

TimeInterval SpatioTemporalIndex::time_bounds() const {
  return nodes_.empty() ? TimeInterval::empty() : nodes_.back().time;
}

SpatioTemporalIndex build_index(std::vector<IndexEntry> entries) { return SpatioTemporalIndex(std::move(entries)); }

std::vector<std::uint64_t> query(const SpatioTemporalIndex& idx, const BoundingBox& bbox, const TimeInterval& time) {
  return idx.query(bbox, time);
}

}  // namespace geodex
