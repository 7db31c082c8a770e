// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/embed.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <thread>

#include "geodex/error.hpp"
#include "scan.hpp"

namespace geodex {

// ---------------------------------------------------------------------------
// Dequantization

namespace {

template <typename T>
std::vector<float> dequantize_impl(std::span<const T> raw, const QuantScheme& scheme) {
  std::vector<float> out(raw.size());
  if (scheme.is_identity()) {
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = static_cast<float>(raw[i]);
    return out;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = static_cast<float>(scheme.scale * (static_cast<double>(raw[i]) - scheme.zero_point));
  }
  return out;
}

template <typename T>
std::vector<float> decode_samples(std::span<const std::uint8_t> bytes, const QuantScheme& scheme) {
  std::vector<T> samples(bytes.size() / sizeof(T));
  std::memcpy(samples.data(), bytes.data(), samples.size() * sizeof(T));
  return dequantize_impl<T>(samples, scheme);
}

}  // namespace

std::vector<float> dequantize(std::span<const std::int8_t> raw, const QuantScheme& scheme) {
  return dequantize_impl(raw, scheme);
}
std::vector<float> dequantize(std::span<const std::uint16_t> raw, const QuantScheme& scheme) {
  return dequantize_impl(raw, scheme);
}
std::vector<float> dequantize(std::span<const float> raw, const QuantScheme& scheme) {
  return dequantize_impl(raw, scheme);
}

std::vector<float> dequantize_pixel(std::span<const std::uint8_t> bytes, DType dtype, const QuantScheme& scheme) {
  switch (dtype) {
    case DType::I8: return decode_samples<std::int8_t>(bytes, scheme);
    case DType::U16: return decode_samples<std::uint16_t>(bytes, scheme);
    case DType::F32: return decode_samples<float>(bytes, scheme);
  }
  fail(ErrorCode::UnknownDtype, "dtype code " + std::to_string(static_cast<int>(dtype)));
}

std::vector<float> pixel_vector_at(const RasterTile& tile, double x, double y) {
  const PixelCoord p = transform_world_to_pixel(tile.transform, x, y);
  const double row = std::floor(p.row);
  const double col = std::floor(p.col);
  if (!(row >= 0.0 && row < tile.height && col >= 0.0 && col < tile.width)) {
    fail(ErrorCode::OutOfBounds, "(" + std::to_string(x) + ", " + std::to_string(y) + ") is outside the tile");
  }
  return dequantize_pixel(tile.pixel(static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col)), tile.dtype,
                          tile.quant);
}

// ---------------------------------------------------------------------------
// Similarity

namespace {

struct Moments {
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
};

Moments moments(std::span<const float> u, std::span<const float> v) {
  Moments m;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i], b = v[i];
    m.dot += a * b;
    m.uu += a * a;
    m.vv += b * b;
  }
  return m;
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::DimensionMismatch, std::to_string(a) + " vs " + std::to_string(b));
}

double norm2(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return s;
}

double cosine_from(const Moments& m) {
  return std::clamp(m.dot / (std::sqrt(m.uu) * std::sqrt(m.vv)), -1.0, 1.0);
}

double squared_l2(std::span<const float> u, std::span<const float> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = static_cast<double>(u[i]) - v[i];
    s += d * d;
  }
  return s;
}

}  // namespace

double cosine_similarity(std::span<const float> u, std::span<const float> v) {
  check_dims(u.size(), v.size());
  const Moments m = moments(u, v);
  if (!(m.uu > 0.0) || !(m.vv > 0.0)) fail(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  return cosine_from(m);
}

double l2_distance(std::span<const float> u, std::span<const float> v) {
  check_dims(u.size(), v.size());
  return std::sqrt(squared_l2(u, v));
}

void VectorSet::add(std::uint64_t id, std::span<const float> v) {
  if (dim_ == 0 && ids_.empty()) dim_ = v.size();
  if (v.empty()) fail(ErrorCode::DimensionMismatch, "empty vector");
  check_dims(dim_, v.size());
  for (float x : v) {
    if (!std::isfinite(x)) fail(ErrorCode::NonFiniteValue, "vector " + std::to_string(id));
  }
  ids_.push_back(id);
  data_.insert(data_.end(), v.begin(), v.end());
}

void VectorSet::reserve(std::size_t n) {
  ids_.reserve(n);
  data_.reserve(n * dim_);
}

VectorSet patch_corpus(std::span<const PatchRecord> patches) {
  VectorSet set(patches.empty() ? 0 : patches.front().embedding.size());
  set.reserve(patches.size());
  for (const auto& p : patches) set.add(p.id, p.embedding);
  return set;
}

bool ranks_before(const Hit& a, const Hit& b, Metric metric) {
  if (a.score != b.score) return metric == Metric::Cosine ? a.score > b.score : a.score < b.score;
  return a.id < b.id;
}

namespace detail {

/// Scores rows [begin, end) of `corpus` that are listed in `rows` (or all
/// rows when `rows` is null) and keeps the best k.
std::vector<Hit> score_rows(std::span<const float> query, double query_norm2, const VectorSet& corpus,
                            const std::vector<std::uint32_t>* rows, std::size_t begin, std::size_t end, std::size_t k,
                            Metric metric) {
  std::vector<Hit> hits;
  hits.reserve(end - begin);
  for (std::size_t j = begin; j < end; ++j) {
    const std::size_t row = rows == nullptr ? j : (*rows)[j];
    const auto v = corpus.vector(row);
    if (metric == Metric::Cosine) {
      Moments m = moments(query, v);
      m.uu = query_norm2;
      if (!(m.vv > 0.0)) continue;
      hits.push_back({corpus.id(row), cosine_from(m)});
    } else {
      hits.push_back({corpus.id(row), std::sqrt(squared_l2(query, v))});
    }
  }
  auto cmp = [metric](const Hit& a, const Hit& b) { return ranks_before(a, b, metric); };
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(), cmp);
  hits.resize(keep);
  return hits;
}

std::vector<Hit> ranked_scan(std::span<const float> query, const VectorSet& corpus,
                             const std::vector<std::uint32_t>* rows, std::uint32_t k, Metric metric, unsigned jobs) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  check_dims(query.size(), corpus.dim());
  const double qn = norm2(query);
  if (metric == Metric::Cosine && !(qn > 0.0)) fail(ErrorCode::ZeroVector, "query vector is zero");

  const std::size_t n = rows == nullptr ? corpus.size() : rows->size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n / 1024 + 1));
  std::vector<std::vector<Hit>> partial(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  auto run = [&](std::size_t w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    partial[w] = score_rows(query, qn, corpus, rows, begin, end, k, metric);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  std::vector<Hit> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  auto cmp = [metric](const Hit& a, const Hit& b) { return ranks_before(a, b, metric); };
  const std::size_t keep = std::min<std::size_t>(k, merged.size());
  std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(keep), merged.end(), cmp);
  merged.resize(keep);
  return merged;
}

}  // namespace detail

std::vector<Hit> topk_search(std::span<const float> query, const VectorSet& corpus, std::uint32_t k, Metric metric,
                             unsigned jobs) {
  return detail::ranked_scan(query, corpus, nullptr, k, metric, jobs);
}

// ---------------------------------------------------------------------------
// kNN

std::vector<std::uint32_t> knn_classify(const VectorSet& queries, std::span<const LabeledVector> train, std::uint32_t k,
                                        Metric metric, unsigned jobs) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (train.empty()) fail(ErrorCode::InvalidArgument, "training set is empty");
  VectorSet corpus(train.front().vector.size());
  corpus.reserve(train.size());
  std::map<std::uint64_t, std::uint32_t> label_of;
  for (const auto& t : train) {
    corpus.add(t.id, t.vector);
    label_of[t.id] = t.label;
  }
  if (label_of.size() != train.size()) fail(ErrorCode::InvalidArgument, "training ids must be unique");

  std::vector<std::uint32_t> out;
  out.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto hits = topk_search(queries.vector(q), corpus, k, metric, jobs);
    std::map<std::uint32_t, std::size_t> votes;  // ordered: ties resolve to the smallest label
    for (const auto& h : hits) ++votes[label_of.at(h.id)];
    std::uint32_t best = 0;
    std::size_t best_votes = 0;
    for (const auto& [label, count] : votes) {
      if (count > best_votes) {
        best = label;
        best_votes = count;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace geodex
