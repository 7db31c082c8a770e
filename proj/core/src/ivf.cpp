// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geodex/embed.hpp"
#include "geodex/error.hpp"
#include "geodex/random.hpp"
#include "scan.hpp"

namespace geodex {
namespace {

double sq_dist(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    s += d * d;
  }
  return s;
}

/// The vectors k-means actually sees: raw for L2, unit-normalized for cosine.
std::vector<float> working_copy(std::span<const float> v, Metric metric) {
  std::vector<float> out(v.begin(), v.end());
  if (metric != Metric::Cosine) return out;
  double n = 0.0;
  for (float x : v) n += static_cast<double>(x) * x;
  if (n > 0.0) {
    const double inv = 1.0 / std::sqrt(n);
    for (auto& x : out) x = static_cast<float>(x * inv);
  }
  return out;
}

struct KMeans {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::size_t k = 0;
  std::vector<float> points;     // n x dim
  std::vector<float> centroids;  // k x dim
  std::vector<std::uint32_t> assign;
  std::vector<double> dist;  // squared distance to the assigned centroid

  std::span<const float> point(std::size_t i) const { return {points.data() + i * dim, dim}; }
  std::span<float> centroid(std::size_t c) { return {centroids.data() + c * dim, dim}; }
  std::span<const float> centroid(std::size_t c) const { return {centroids.data() + c * dim, dim}; }

  /// Nearest centroid, ties to the lowest index.
  std::pair<std::uint32_t, double> nearest(std::span<const float> p) const {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      const double d = sq_dist(p, centroid(c));
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::uint32_t>(c);
      }
    }
    return {best, best_d};
  }

  void seed_plus_plus(SplitMix64& rng) {
    std::vector<bool> chosen(n, false);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t pick = static_cast<std::size_t>(rng.next_below(n));
    for (std::size_t c = 0; c < k; ++c) {
      if (c > 0) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        if (total > 0.0) {
          const double r = rng.next_double() * total;
          double acc = 0.0;
          pick = n;
          for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            acc += d2[i];
            pick = i;
            if (acc > r) break;
          }
        } else {
          // Every remaining point duplicates a centroid: take a uniform unchosen one.
          std::vector<std::size_t> rest;
          for (std::size_t i = 0; i < n; ++i) {
            if (!chosen[i]) rest.push_back(i);
          }
          pick = rest[static_cast<std::size_t>(rng.next_below(rest.size()))];
        }
      }
      chosen[pick] = true;
      std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(pick * dim), dim, centroid(c).begin());
      for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(point(i), centroid(c)));
    }
  }

  std::vector<std::size_t> assign_all() {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [c, d] = nearest(point(i));
      assign[i] = c;
      dist[i] = d;
      ++counts[c];
    }
    return counts;
  }

  /// Moves the farthest point (from its own centroid) into each empty
  /// cluster. Returns false when an empty cluster could not be filled
  /// because every remaining point sits exactly on its centroid.
  bool reseed_empty(std::vector<std::size_t>& counts) {
    bool all_filled = true;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[assign[i]] < 2 || !(dist[i] > 0.0)) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) {
        all_filled = false;
        continue;
      }
      --counts[assign[far]];
      assign[far] = static_cast<std::uint32_t>(c);
      dist[far] = 0.0;
      counts[c] = 1;
      std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(far * dim), dim, centroid(c).begin());
    }
    return all_filled;
  }

  /// Recomputes means; returns the largest centroid shift (Euclidean).
  double update_means(const std::vector<std::size_t>& counts) {
    std::vector<double> sums(k * dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = point(i);
      double* s = sums.data() + assign[i] * dim;
      for (std::size_t j = 0; j < dim; ++j) s[j] += p[j];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      auto cen = centroid(c);
      double moved = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const auto next = static_cast<float>(sums[c * dim + j] / static_cast<double>(counts[c]));
        const double d = static_cast<double>(next) - cen[j];
        moved += d * d;
        cen[j] = next;
      }
      shift = std::max(shift, std::sqrt(moved));
    }
    return shift;
  }
};

}  // namespace

std::vector<std::uint64_t> IvfIndex::list_ids(std::size_t l) const {
  std::vector<std::uint64_t> ids;
  ids.reserve(lists_[l].size());
  for (auto row : lists_[l]) ids.push_back(corpus_.id(row));
  std::sort(ids.begin(), ids.end());
  return ids;
}

IvfIndex build_ivf(VectorSet vectors, std::uint32_t nlist, std::uint64_t seed, Metric metric) {
  const std::size_t n = vectors.size();
  if (nlist < 1 || nlist > n) {
    fail(ErrorCode::TooFewVectors, "nlist=" + std::to_string(nlist) + " needs 1 <= nlist <= n=" + std::to_string(n));
  }
  if (n > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidArgument, "corpus too large");

  KMeans km;
  km.n = n;
  km.dim = vectors.dim();
  km.k = nlist;
  km.points.reserve(n * km.dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = working_copy(vectors.vector(i), metric);
    km.points.insert(km.points.end(), w.begin(), w.end());
  }
  km.centroids.assign(km.k * km.dim, 0.0f);
  km.assign.assign(n, 0);
  km.dist.assign(n, 0.0);

  SplitMix64 rng(seed);
  km.seed_plus_plus(rng);

  int iterations = 0;
  while (iterations < kIvfMaxIterations) {
    ++iterations;
    auto counts = km.assign_all();
    km.reseed_empty(counts);
    if (km.update_means(counts) < kIvfShiftTolerance) break;
  }

  // Final assignment against the final centroids, so every vector sits in the
  // list of its nearest centroid. Re-seeding can move a centroid, so repeat
  // until no list is empty (or nothing can be moved).
  for (int pass = 0; pass <= kIvfMaxIterations; ++pass) {
    auto counts = km.assign_all();
    if (std::find(counts.begin(), counts.end(), 0u) == counts.end()) break;
    if (!km.reseed_empty(counts)) break;
  }

  IvfIndex idx;
  idx.corpus_ = std::move(vectors);
  idx.metric_ = metric;
  idx.seed_ = seed;
  idx.centroids_ = std::move(km.centroids);
  idx.lists_.assign(nlist, {});
  for (std::size_t i = 0; i < n; ++i) idx.lists_[km.assign[i]].push_back(static_cast<std::uint32_t>(i));
  idx.iterations_ = iterations;
  return idx;
}

std::vector<Hit> search_ivf(const IvfIndex& idx, std::span<const float> query, std::uint32_t k, std::uint32_t nprobe) {
  const std::size_t nlist = idx.lists_.size();
  if (nprobe < 1 || nprobe > nlist) {
    fail(ErrorCode::InvalidArgument, "nprobe=" + std::to_string(nprobe) + " outside [1, " + std::to_string(nlist) + "]");
  }
  if (query.size() != idx.dim()) {
    fail(ErrorCode::DimensionMismatch, std::to_string(query.size()) + " vs " + std::to_string(idx.dim()));
  }
  const auto q = working_copy(query, idx.metric_);
  std::vector<std::pair<double, std::uint32_t>> order(nlist);
  for (std::size_t c = 0; c < nlist; ++c) order[c] = {sq_dist(q, idx.centroid(c)), static_cast<std::uint32_t>(c)};
  std::partial_sort(order.begin(), order.begin() + nprobe, order.end());

  std::vector<std::uint32_t> rows;
  for (std::uint32_t p = 0; p < nprobe; ++p) {
    const auto& l = idx.lists_[order[p].second];
    rows.insert(rows.end(), l.begin(), l.end());
  }
  std::sort(rows.begin(), rows.end());
  return detail::ranked_scan(query, idx.corpus_, &rows, k, idx.metric_, 1);
}

}  // namespace geodex
