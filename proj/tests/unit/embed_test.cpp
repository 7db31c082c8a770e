// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <random>
#include <set>

#include "../oracle/oracles.hpp"
#include "../support/synth.hpp"
#include "geodex/embed.hpp"
#include "geodex/error.hpp"

namespace geodex {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected geodex::Error";
  return ErrorCode::InvalidArgument;
}

std::vector<float> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<float> n;
  std::vector<float> v(dim);
  for (auto& x : v) x = n(rng);
  return v;
}

TEST(Dequantize, Examples) {
  const std::int8_t raw[] = {127, -127, 0};
  EXPECT_EQ(dequantize(raw, QuantScheme::affine(1.0 / 127)), (std::vector<float>{1.0f, -1.0f, 0.0f}));
  const std::uint16_t u[] = {0, 65535};
  EXPECT_EQ(dequantize(u, QuantScheme::affine(1.0 / 65535)), (std::vector<float>{0.0f, 1.0f}));
  const float f[] = {1.5f, -0.0f, 3e-38f};
  const auto out = dequantize(f, QuantScheme::identity());
  EXPECT_EQ(std::memcmp(out.data(), f, sizeof(f)), 0);
  EXPECT_EQ(code_of([] { QuantScheme::affine(0); }), ErrorCode::InvalidArgument);
}

TEST(Dequantize, Monotone) {
  const auto q = QuantScheme::affine(0.37, -3);
  std::vector<std::int8_t> all;
  for (int v = -128; v <= 127; ++v) all.push_back(static_cast<std::int8_t>(v));
  const auto out = dequantize(all, q);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), std::less_equal<>()));
}

TEST(Cosine, Examples) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto v = random_vector(rng, 1 + rng() % 300);
    EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-12);
    auto neg = v;
    for (auto& x : neg) x = -x;
    EXPECT_NEAR(cosine_similarity(v, neg), -1.0, 1e-12);
  }
  const float e1[] = {1, 0, 0}, e2[] = {0, 1, 0}, z[] = {0, 0, 0}, two[] = {1, 1};
  EXPECT_EQ(cosine_similarity(e1, e2), 0.0);
  EXPECT_EQ(code_of([&] { cosine_similarity(e1, z); }), ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([&] { cosine_similarity(e1, two); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(l2_distance(e1, e2), std::sqrt(2.0));
}

VectorSet to_set(const std::vector<std::vector<float>>& rows, const std::vector<std::uint64_t>& ids) {
  VectorSet s(rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) s.add(ids[i], rows[i]);
  return s;
}

void expect_same(const std::vector<Hit>& got, const std::vector<oracle::Scored>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].id, want[i].id) << i;
    EXPECT_NEAR(got[i].score, want[i].score, 1e-12) << i;
  }
}

TEST(TopK, MatchesFullSortOracle) {
  std::mt19937_64 rng(31);
  for (int inst = 0; inst < 60; ++inst) {
    const std::size_t dim = std::vector<std::size_t>{8, 64, 128}[inst % 3];
    const std::size_t n = 1 + rng() % 1000;
    std::vector<std::vector<float>> rows;
    std::vector<std::uint64_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(random_vector(rng, dim));
      ids.push_back(rng() % 5000);
    }
    const auto corpus = to_set(rows, ids);
    const auto q = random_vector(rng, dim);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 20);
    for (bool cosine : {true, false}) {
      const auto metric = cosine ? Metric::Cosine : Metric::L2;
      const auto want = oracle::full_sort_topk(q, rows, ids, k, cosine);
      expect_same(topk_search(q, corpus, k, metric), want);
      expect_same(topk_search(q, corpus, k, metric, 4), want);
    }
  }
}

TEST(TopK, ExamplesAndTies) {
  std::mt19937_64 rng(2);
  std::vector<std::vector<float>> rows;
  std::vector<std::uint64_t> ids;
  for (std::uint64_t i = 0; i < 50; ++i) {
    rows.push_back(random_vector(rng, 16));
    ids.push_back(i * 7);
  }
  const auto corpus = to_set(rows, ids);
  const auto hits = topk_search(rows[13], corpus, 5, Metric::Cosine);
  EXPECT_EQ(hits[0].id, 91u);
  EXPECT_NEAR(hits[0].score, 1.0, 1e-12);
  EXPECT_EQ(topk_search(rows[0], corpus, 500, Metric::L2).size(), 50u);

  VectorSet dup(2);
  const float v[] = {1, 2};
  for (std::uint64_t id : {9u, 3u, 5u}) dup.add(id, v);
  const auto tied = topk_search(v, dup, 2, Metric::Cosine);
  EXPECT_EQ(tied[0].id, 3u);
  EXPECT_EQ(tied[1].id, 5u);
  EXPECT_EQ(code_of([&] { topk_search(std::vector<float>{1, 2, 3}, dup, 1, Metric::L2); }),
            ErrorCode::DimensionMismatch);
}

TEST(TopK, CosineScaleInvariance) {
  std::mt19937_64 rng(12);
  std::vector<std::vector<float>> rows;
  std::vector<std::uint64_t> ids;
  for (std::uint64_t i = 0; i < 300; ++i) {
    rows.push_back(random_vector(rng, 32));
    ids.push_back(i);
  }
  const auto q = random_vector(rng, 32);
  const auto base = topk_search(q, to_set(rows, ids), 20, Metric::Cosine);
  for (auto& r : rows)
    for (auto& x : r) x *= 8.0f;
  const auto scaled = topk_search(q, to_set(rows, ids), 20, Metric::Cosine);
  ASSERT_EQ(base.size(), scaled.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(base[i].id, scaled[i].id);
    EXPECT_NEAR(base[i].score, scaled[i].score, 1e-12);
  }
}

// --- IVF -------------------------------------------------------------------

TEST(Ivf, Degenerate) {
  std::mt19937_64 rng(5);
  VectorSet s(8);
  std::vector<std::vector<float>> rows;
  for (std::uint64_t i = 0; i < 40; ++i) {
    rows.push_back(random_vector(rng, 8));
    s.add(100 + i, rows.back());
  }
  const auto one = build_ivf(s, 1, 7);
  EXPECT_EQ(one.list_ids(0).size(), 40u);

  const auto all = build_ivf(s, 40, 7);
  EXPECT_EQ(all.iterations(), 1);
  std::set<std::uint64_t> seen;
  for (std::size_t l = 0; l < 40; ++l) {
    ASSERT_EQ(all.list(l).size(), 1u);
    seen.insert(all.list_ids(l)[0]);
    const auto row = all.list(l)[0];
    EXPECT_TRUE(std::equal(rows[row].begin(), rows[row].end(), all.centroid(l).begin()));
  }
  EXPECT_EQ(seen.size(), 40u);
  EXPECT_EQ(code_of([&] { build_ivf(s, 41, 7); }), ErrorCode::TooFewVectors);
  EXPECT_EQ(code_of([&] { build_ivf(s, 0, 7); }), ErrorCode::TooFewVectors);
  EXPECT_EQ(code_of([&] { search_ivf(one, rows[0], 1, 2); }), ErrorCode::InvalidArgument);
}

TEST(Ivf, BlobsSeparate) {
  std::mt19937_64 rng(8);
  const auto blobs = synth::make_blobs(rng, 200, 16, 0.05f);
  VectorSet s(16);
  for (std::size_t i = 0; i < blobs.vectors.size(); ++i) s.add(i, blobs.vectors[i]);
  for (Metric m : {Metric::L2, Metric::Cosine}) {
    const auto idx = build_ivf(s, 2, 99, m);
    std::vector<std::vector<float>> centroids{{idx.centroid(0).begin(), idx.centroid(0).end()},
                                              {idx.centroid(1).begin(), idx.centroid(1).end()}};
    for (std::size_t l = 0; l < 2; ++l) {
      const auto ids = idx.list_ids(l);
      ASSERT_EQ(ids.size(), 200u);
      const auto label = blobs.labels[ids[0]];
      for (auto id : ids) EXPECT_EQ(blobs.labels[id], label);
    }
    if (m == Metric::L2) {
      for (std::size_t i = 0; i < blobs.vectors.size(); ++i) {
        const auto c = oracle::nearest_centroid(blobs.vectors[i], centroids);
        const auto ids = idx.list_ids(c);
        EXPECT_TRUE(std::binary_search(ids.begin(), ids.end(), i));
      }
    }
  }
}

TEST(Ivf, FullProbeEqualsExact) {
  std::mt19937_64 rng(15);
  for (int inst = 0; inst < 30; ++inst) {
    const std::size_t dim = 4 + rng() % 30, n = 20 + rng() % 400;
    VectorSet s(dim);
    for (std::size_t i = 0; i < n; ++i) s.add(rng() % 10000, random_vector(rng, dim));
    const std::uint32_t nlist = 1 + static_cast<std::uint32_t>(rng() % 16);
    for (Metric m : {Metric::L2, Metric::Cosine}) {
      const auto idx = build_ivf(s, nlist, inst, m);
      std::size_t total = 0;
      for (std::size_t l = 0; l < nlist; ++l) {
        EXPECT_FALSE(idx.list(l).empty());
        total += idx.list(l).size();
      }
      EXPECT_EQ(total, n);
      const auto q = random_vector(rng, dim);
      EXPECT_EQ(search_ivf(idx, q, 10, nlist), topk_search(q, s, 10, m));
    }
  }
}

TEST(Ivf, SelfQueryAnyProbe) {
  std::mt19937_64 rng(3);
  VectorSet s(8);
  std::vector<std::vector<float>> rows;
  for (int c = 0; c < 8; ++c) {
    auto center = random_vector(rng, 8);
    for (auto& x : center) x *= 20.0f;
    for (int i = 0; i < 25; ++i) {
      auto v = center;
      for (auto& x : v) x += std::normal_distribution<float>(0, 0.1f)(rng);
      s.add(rows.size(), v);
      rows.push_back(v);
    }
  }
  const auto idx = build_ivf(s, 8, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto hit = search_ivf(idx, rows[i], 1, 1);
    ASSERT_EQ(hit.size(), 1u);
    EXPECT_EQ(hit[0].id, i);
  }
}

TEST(Ivf, Deterministic) {
  std::mt19937_64 rng(6);
  VectorSet s(12);
  for (std::uint64_t i = 0; i < 300; ++i) s.add(i, random_vector(rng, 12));
  const auto a = build_ivf(s, 10, 123), b = build_ivf(s, 10, 123);
  for (std::size_t l = 0; l < 10; ++l) EXPECT_EQ(a.list_ids(l), b.list_ids(l));
}

// --- kNN -------------------------------------------------------------------

TEST(Knn, Examples) {
  const std::vector<LabeledVector> train{{{0, 0}, 5, 0}, {{1, 0}, 5, 1}, {{0, 1}, 2, 2}, {{10, 10}, 9, 3}};
  VectorSet q(2);
  q.add(0, std::vector<float>{10, 10});
  q.add(1, std::vector<float>{0.1f, 0.1f});
  EXPECT_EQ(knn_classify(q, train, 1, Metric::L2), (std::vector<std::uint32_t>{9, 5}));
  EXPECT_EQ(knn_classify(q, train, 3, Metric::L2)[1], 5u);

  const std::vector<LabeledVector> tie{{{1, 0}, 7, 0}, {{-1, 0}, 3, 1}};
  VectorSet mid(2);
  mid.add(0, std::vector<float>{0, 0});
  EXPECT_EQ(knn_classify(mid, tie, 2, Metric::L2), std::vector<std::uint32_t>{3});
  EXPECT_EQ(code_of([&] { knn_classify(mid, {}, 1, Metric::L2); }), ErrorCode::InvalidArgument);
}

TEST(Knn, PermutationInvariant) {
  std::mt19937_64 rng(44);
  std::vector<LabeledVector> train;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto v = random_vector(rng, 4);
    for (auto& x : v) x = std::round(x);
    train.push_back({v, static_cast<std::uint32_t>(rng() % 4), i});
  }
  VectorSet q(4);
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto v = random_vector(rng, 4);
    for (auto& x : v) x = std::round(x);
    q.add(i, v);
  }
  const auto base = knn_classify(q, train, 5, Metric::L2);
  for (int p = 0; p < 5; ++p) {
    std::shuffle(train.begin(), train.end(), rng);
    EXPECT_EQ(knn_classify(q, train, 5, Metric::L2, 1 + p), base);
  }
}

// --- pixel addressing ------------------------------------------------------

TEST(PixelVector, Quadrants) {
  RasterTile t;
  t.width = t.height = 2;
  t.dims = 2;
  t.dtype = DType::I8;
  t.quant = QuantScheme::affine(0.5, 0);
  t.transform = GeoTransform{10, 0, 100, 0, -10, 200};
  t.data = {2, 4, 6, 8, 10, 12, 14, 16};
  EXPECT_EQ(pixel_vector_at(t, 105, 195), (std::vector<float>{1, 2}));
  EXPECT_EQ(pixel_vector_at(t, 115, 195), (std::vector<float>{3, 4}));
  EXPECT_EQ(pixel_vector_at(t, 105, 185), (std::vector<float>{5, 6}));
  EXPECT_EQ(pixel_vector_at(t, 115, 185), (std::vector<float>{7, 8}));
  EXPECT_EQ(pixel_vector_at(t, 100, 200), (std::vector<float>{1, 2}));
  EXPECT_EQ(code_of([&] { pixel_vector_at(t, 99, 195); }), ErrorCode::OutOfBounds);
  EXPECT_EQ(code_of([&] { pixel_vector_at(t, 120, 195); }), ErrorCode::OutOfBounds);
  EXPECT_EQ(code_of([&] { pixel_vector_at(t, 105, 201); }), ErrorCode::OutOfBounds);
}

}  // namespace
}  // namespace geodex
