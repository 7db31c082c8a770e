// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geodex/raster.hpp"

namespace geodex {

enum class Metric { Cosine, L2 };

// ---------------------------------------------------------------------------
// Dequantization

/// Affine: out[i] = scale * (raw[i] - zero_point); Identity: plain cast.
std::vector<float> dequantize(std::span<const std::int8_t> raw, const QuantScheme& scheme);
std::vector<float> dequantize(std::span<const std::uint16_t> raw, const QuantScheme& scheme);
std::vector<float> dequantize(std::span<const float> raw, const QuantScheme& scheme);
/// Decodes `dims` little-endian samples of `dtype` from raw pixel bytes.
std::vector<float> dequantize_pixel(std::span<const std::uint8_t> bytes, DType dtype, const QuantScheme& scheme);

/// Vector of the pixel containing world (x, y): floor of the inverse
/// transform, dequantized with the tile's scheme. Throws OutOfBounds.
std::vector<float> pixel_vector_at(const RasterTile& tile, double x, double y);

// ---------------------------------------------------------------------------
// Similarity

/// u.v / (|u| |v|), accumulated in double and clamped to [-1, 1].
/// Throws DimensionMismatch or ZeroVector.
double cosine_similarity(std::span<const float> u, std::span<const float> v);
/// Euclidean distance. Throws DimensionMismatch.
double l2_distance(std::span<const float> u, std::span<const float> v);

/// Flat, row-major collection of equal-length vectors with caller ids.
class VectorSet {
 public:
  explicit VectorSet(std::size_t dim = 0) : dim_(dim) {}

  /// Throws DimensionMismatch on a length mismatch and NonFiniteValue when a
  /// component is NaN or infinite. The first add fixes dim if it was 0.
  void add(std::uint64_t id, std::span<const float> v);
  void reserve(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dim() const { return dim_; }
  std::uint64_t id(std::size_t i) const { return ids_[i]; }
  std::span<const float> vector(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

 private:
  std::size_t dim_;
  std::vector<std::uint64_t> ids_;
  std::vector<float> data_;
};

VectorSet patch_corpus(std::span<const PatchRecord> patches);

struct Hit {
  std::uint64_t id = 0;
  double score = 0.0;  // cosine similarity or L2 distance

  friend bool operator==(const Hit&, const Hit&) = default;
};

/// Ranking order used everywhere: best score first (highest cosine, lowest
/// L2 distance), then ascending id.
bool ranks_before(const Hit& a, const Hit& b, Metric metric);

/// Exact top-k. Under Cosine, zero vectors in the corpus have no defined
/// similarity and are skipped. `jobs` > 1 scans the corpus in parallel
/// chunks; the result is identical for every job count.
/// Throws DimensionMismatch, ZeroVector (cosine query) or InvalidArgument (k = 0).
std::vector<Hit> topk_search(std::span<const float> query, const VectorSet& corpus, std::uint32_t k, Metric metric,
                             unsigned jobs = 1);

// ---------------------------------------------------------------------------
// IVF-flat

/// k-means partition of a corpus (inverted lists of row positions) plus the
/// corpus itself for exact re-scoring. Under Cosine, clustering and centroid
/// ranking run on unit-normalized copies of the vectors.
class IvfIndex {
 public:
  std::size_t nlist() const { return centroids_.size() / std::max<std::size_t>(dim(), 1); }
  std::size_t dim() const { return corpus_.dim(); }
  Metric metric() const { return metric_; }
  std::uint64_t seed() const { return seed_; }
  const VectorSet& corpus() const { return corpus_; }
  std::span<const float> centroid(std::size_t list) const { return {centroids_.data() + list * dim(), dim()}; }
  /// Row positions (into corpus()) assigned to `list`.
  std::span<const std::uint32_t> list(std::size_t l) const { return lists_[l]; }
  /// Ids assigned to `list`, ascending.
  std::vector<std::uint64_t> list_ids(std::size_t l) const;
  /// Lloyd iterations actually run.
  int iterations() const { return iterations_; }

 private:
  friend IvfIndex build_ivf(VectorSet vectors, std::uint32_t nlist, std::uint64_t seed, Metric metric);
  friend std::vector<Hit> search_ivf(const IvfIndex& idx, std::span<const float> query, std::uint32_t k,
                                     std::uint32_t nprobe);

  VectorSet corpus_;
  Metric metric_ = Metric::L2;
  std::uint64_t seed_ = 0;
  std::vector<float> centroids_;
  std::vector<std::vector<std::uint32_t>> lists_;
  int iterations_ = 0;
};

inline constexpr int kIvfMaxIterations = 25;
inline constexpr double kIvfShiftTolerance = 1e-6;

/// Seeded k-means++ then Lloyd iterations until the largest centroid shift
/// drops below 1e-6 or 25 iterations. Empty clusters are re-seeded with the
/// point farthest from its centroid. Throws TooFewVectors unless
/// 1 <= nlist <= n.
IvfIndex build_ivf(VectorSet vectors, std::uint32_t nlist, std::uint64_t seed, Metric metric = Metric::L2);

/// Exact scan of the nprobe lists whose centroids are nearest the query;
/// ordering rules match topk_search. Throws DimensionMismatch or
/// InvalidArgument (nprobe outside [1, nlist], k = 0).
std::vector<Hit> search_ivf(const IvfIndex& idx, std::span<const float> query, std::uint32_t k, std::uint32_t nprobe);

// ---------------------------------------------------------------------------
// kNN label mapping

struct LabeledVector {
  std::vector<float> vector;
  std::uint32_t label = 0;
  std::uint64_t id = 0;
};

/// Majority label among each query's k nearest training vectors (ranked as in
/// topk_search). Vote ties go to the smallest label. Throws DimensionMismatch
/// or InvalidArgument (k = 0, empty training set).
std::vector<std::uint32_t> knn_classify(const VectorSet& queries, std::span<const LabeledVector> train, std::uint32_t k,
                                        Metric metric, unsigned jobs = 1);

}  // namespace geodex
