// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../oracle/oracles.hpp"
#include "../oracle/tiff_writer.hpp"
#include "../support/atlas_golden.hpp"
#include "../support/cli_harness.hpp"
#include "../support/synth.hpp"
#include "geodex/embed.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "geodex/index.hpp"
#include "geodex/orientation.hpp"
#include "geodex/registry.hpp"

namespace {

using namespace geodex;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("unexpected exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += "; runtime limit exceeded";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d %-28s %s  (%s; %.2f s%s)\n", number, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
              limit_s > 0 ? (" < " + std::to_string(static_cast<int>(limit_s)) + " s").c_str() : "");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome registry_fidelity() {
  const auto t1 = golden::load("products.json");
  const auto products = builtin_products();
  std::size_t cells = 0, bad = 0;
  if (products.size() != t1.size()) return {false, "product count differs"};
  for (std::size_t i = 0; i < products.size(); ++i) {
    const auto row = golden::product_row(products[i]);
    for (const auto& [col, value] : t1[i].items()) {
      ++cells;
      if (row.at(col) != value) ++bad;
    }
  }
  const auto t2 = golden::load("provenance.json");
  std::vector<json> rows;
  for (const auto& p : products) {
    for (const auto& r : provenance(p.name)) rows.push_back(golden::provenance_row(r));
  }
  std::size_t bad_rows = rows.size() == t2.size() ? 0 : rows.size() + t2.size();
  for (std::size_t i = 0; i < std::min(rows.size(), t2.size()); ++i) bad_rows += rows[i] != t2[i];

  const auto tessera = provenance("Tessera Embeddings");
  const auto mmearth = provenance("Major TOM Embeddings").back();
  const auto google = provenance("Google Satellite Embedding");
  const bool highlights = !tessera[0].weights_license && mmearth.architecture == "ConvNeXt v2" &&
                          mmearth.weights_license == "CC-BY-NC-4.0" && !google[0].code_license &&
                          !google[0].weights_license;
  const bool ok = cells == 63 && bad == 0 && bad_rows == 0 && highlights;
  return {ok, "products " + std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells, table2 " +
                  std::to_string(rows.size() - std::min(bad_rows, rows.size())) + "/" + std::to_string(t2.size()) +
                  " rows, closed/NC highlights " + (highlights ? "ok" : "wrong") + ", exact"};
}

// --- 2 ---------------------------------------------------------------------

Outcome index_equivalence() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> pos(-1000, 1000), ext(0.01, 40);
  std::uniform_int_distribution<std::int64_t> ts(-100000, 100000), tl(1, 20000);
  std::vector<IndexEntry> entries;
  std::vector<oracle::Item> items;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double x = pos(rng), y = pos(rng);
    const BoundingBox b(x, y, x + ext(rng), y + ext(rng));
    const auto s = ts(rng);
    const TimeInterval t(s, s + tl(rng));
    entries.push_back({i, b, t});
    items.push_back({i, {b.minx(), b.miny(), b.maxx(), b.maxy()}, {t.start(), t.end()}});
  }
  const auto idx = build_index(entries);
  std::size_t mismatches = 0, hits = 0;
  for (int q = 0; q < 10000; ++q) {
    const double x = pos(rng), y = pos(rng);
    const BoundingBox qb(x, y, x + 5 * ext(rng), y + 5 * ext(rng));
    const auto s = ts(rng);
    const TimeInterval qt(s, s + 5 * tl(rng));
    const auto got = query(idx, qb, qt);
    hits += got.size();
    mismatches += got != oracle::scan_filter(items, {qb.minx(), qb.miny(), qb.maxx(), qb.maxy()}, {qt.start(), qt.end()});
  }
  return {mismatches == 0, "10000 queries x 10000 entries, " + std::to_string(mismatches) + " mismatches, " +
                               std::to_string(hits) + " total hits, exact"};
}

// --- 3 ---------------------------------------------------------------------

std::vector<float> gaussian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<float> n;
  std::vector<float> v(dim);
  for (auto& x : v) x = n(rng);
  return v;
}

Outcome retrieval_exactness() {
  std::mt19937_64 rng(31337);
  std::size_t topk_bad = 0, ivf_bad = 0;
  const std::size_t dims[] = {8, 64, 128};
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t dim = dims[inst % 3];
    const std::size_t n = 10 + rng() % 1991;
    std::vector<std::vector<float>> rows;
    std::vector<std::uint64_t> ids;
    VectorSet corpus(dim);
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(gaussian(rng, dim));
      ids.push_back(rng() % 1000000);
      corpus.add(ids.back(), rows.back());
    }
    const auto q = gaussian(rng, dim);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 25);
    const bool cosine = inst % 2 == 0;
    const Metric metric = cosine ? Metric::Cosine : Metric::L2;
    const auto exact = topk_search(q, corpus, k, metric);
    const auto want = oracle::full_sort_topk(q, rows, ids, k, cosine);
    bool same = exact.size() == want.size();
    for (std::size_t i = 0; same && i < want.size(); ++i) {
      same = exact[i].id == want[i].id && std::abs(exact[i].score - want[i].score) <= 1e-12;
    }
    topk_bad += !same;

    const std::uint32_t nlist = 1 + static_cast<std::uint32_t>(rng() % 8);
    const auto ivf = build_ivf(std::move(corpus), nlist, static_cast<std::uint64_t>(inst), metric);
    ivf_bad += search_ivf(ivf, q, k, nlist) != exact;
  }

  // Recall on two-blob clustered data.
  const auto blobs = synth::make_blobs(rng, 2500, 64, 0.3f);
  VectorSet corpus(64);
  for (std::size_t i = 0; i < blobs.vectors.size(); ++i) corpus.add(i, blobs.vectors[i]);
  const std::uint32_t nlist = 16;
  const auto ivf = build_ivf(corpus, nlist, 7, Metric::Cosine);
  std::size_t found = 0, wanted = 0;
  for (int q = 0; q < 100; ++q) {
    const auto query = synth::blob_sample(rng, 64, 1 + (q % 2), 0.3f);
    const auto exact = topk_search(query, corpus, 10, Metric::Cosine);
    const auto approx = search_ivf(ivf, query, 10, nlist / 2);
    std::set<std::uint64_t> truth;
    for (const auto& h : exact) truth.insert(h.id);
    for (const auto& h : approx) found += truth.count(h.id);
    wanted += truth.size();
  }
  const double recall = static_cast<double>(found) / static_cast<double>(wanted);
  const bool ok = topk_bad == 0 && ivf_bad == 0 && recall >= 0.9;
  return {ok, "topk vs full sort " + std::to_string(1000 - topk_bad) + "/1000, ivf nprobe=nlist identical " +
                  std::to_string(1000 - ivf_bad) + "/1000, recall@10 at nprobe=nlist/2 " + fmt("%.3f", recall) +
                  " >= 0.9"};
}

// --- 4 ---------------------------------------------------------------------

std::vector<double> csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

Outcome patch_retrieval_workflow() {
  synth::TempDir dir;
  std::mt19937_64 rng(1);
  const std::uint16_t dim = product("Earth Index Embeddings").dimensions;
  std::vector<std::vector<float>> vecs;
  std::vector<std::pair<double, double>> centers;
  std::string table;
  for (std::uint64_t i = 0; i < 500; ++i) {
    vecs.push_back(gaussian(rng, dim));
    centers.emplace_back(-10.0 + 0.003 * static_cast<double>(i % 40), 50.0 + 0.003 * static_cast<double>(i / 40));
    table += json{{"id", i},
                  {"lon", centers.back().first},
                  {"lat", centers.back().second},
                  {"size_m", 320},
                  {"t_start", "2024-01-01T00:00:00Z"},
                  {"t_end", "2025-01-01T00:00:00Z"},
                  {"product", "Earth Index Embeddings"},
                  {"embedding", vecs.back()}}
                 .dump() +
             "\n";
  }
  synth::write_text(dir / "earth_index.jsonl", table);
  const auto store = (dir / "store").string();
  auto r = harness::run({"ingest", "--kind", "patch-table", "--out", store, (dir / "earth_index.jsonl").string()});
  if (r.code != 0) return {false, "ingest failed: " + r.err};

  const std::uint64_t target = 123;
  synth::write_text(dir / "query.json", json(vecs[target]).dump());
  r = harness::run({"search", "--store", store, "--query-file", (dir / "query.json").string(), "-k", "5"});
  if (r.code != 0) return {false, "search failed: " + r.err};
  const auto rows = harness::lines(r.out);
  if (rows.size() != 6) return {false, "expected 5 result rows"};
  const auto top = csv_numbers(rows[1]);
  const auto fp = patch_footprint(centers[target].first, centers[target].second, 320);
  const bool id_ok = top[0] == 1 && top[1] == static_cast<double>(target);
  const double score_err = std::abs(top[2] - 1.0);
  const bool bbox_ok = top[3] == fp.minx() && top[4] == fp.miny() && top[5] == fp.maxx() && top[6] == fp.maxy();
  return {id_ok && score_err <= 1e-9 && bbox_ok, std::string("384-dim patch table, rank-1 id ") +
                                                     (id_ok ? "matches" : "wrong") + ", |cos-1| = " +
                                                     fmt("%.1e", score_err) + " <= 1e-9, bbox " +
                                                     (bbox_ok ? "equals footprint" : "differs")};
}

// --- 5 ---------------------------------------------------------------------

std::size_t closed_form_axis(double extent, double res, std::uint32_t size, std::uint32_t stride) {
  const auto n = static_cast<std::int64_t>(std::floor(extent / res + 1e-9));
  if (n <= size) return 1;
  return static_cast<std::size_t>((n - size + stride - 1) / stride) + 1;
}

Outcome pixel_mapping_workflow() {
  synth::TempDir dir;
  std::mt19937_64 rng(2);
  const std::uint32_t w = 600, h = 300;
  auto scene = synth::make_scene(rng, w, h, 8, 400000, 5000000, 0.25f);
  // Keep every 16th labeled pixel for training; everything else is held out.
  std::vector<bool> trained(scene.truth.size(), false);
  for (std::size_t p = 0; p < scene.truth.size(); ++p) {
    std::uint16_t v;
    std::memcpy(&v, scene.labels.data.data() + 2 * p, 2);
    if (v != 0 && p % 16 == 0) {
      trained[p] = true;
    } else {
      synth::put_sample<std::uint16_t>(scene.labels.data, p, 0);
    }
  }
  const auto [data, side] = harness::write_raw_grid(dir.path(), "pixels", scene.embeddings);
  const auto store = (dir / "store").string();
  auto r = harness::run({"ingest", "--kind", "raw-grid", "--sidecar", side.string(), "--out", store, data.string()});
  if (r.code != 0) return {false, "ingest failed: " + r.err};
  write_store_file(scene.labels, dir / "labels.ets");

  r = harness::run({"map", "--embeddings", store, "--labels", (dir / "labels.ets").string(), "-k", "3", "--size",
                    "256", "--out", (dir / "map.ets").string()});
  if (r.code != 0) return {false, "map failed: " + r.err};
  const auto summary = harness::lines(r.out);
  const std::size_t patches = std::stoul(summary.at(0).substr(summary[0].find(',') + 1));
  const std::size_t expected = closed_form_axis(w * 10.0, 10, 256, 256) * closed_form_axis(h * 10.0, 10, 256, 256);

  const auto mapped = read_store_file(dir / "map.ets");
  std::size_t correct = 0, held_out = 0;
  for (std::size_t p = 0; p < scene.truth.size(); ++p) {
    if (trained[p]) continue;
    std::uint16_t v;
    std::memcpy(&v, mapped.data.data() + 2 * p, 2);
    ++held_out;
    correct += v == scene.truth[p];
  }
  const double acc = static_cast<double>(correct) / static_cast<double>(held_out);
  return {patches == expected && acc >= 0.95, std::to_string(patches) + " grid patches (closed form " +
                                                  std::to_string(expected) + "), held-out accuracy " +
                                                  fmt("%.4f", acc) + " >= 0.95 over " + std::to_string(held_out) +
                                                  " pixels"};
}

// --- 6 ---------------------------------------------------------------------

/// Runs `parse` on mutated input; returns false on any non-typed exception.
bool typed_or_ok(const std::function<void()>& parse) {
  try {
    parse();
  } catch (const Error&) {
  } catch (...) {
    return false;
  }
  return true;
}

std::vector<std::uint8_t> mutate(std::vector<std::uint8_t> b, std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0:  // truncate
      b.resize(b.empty() ? 0 : rng() % b.size());
      break;
    case 1:  // bit flips
      for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n && !b.empty(); ++i) b[rng() % b.size()] ^= 1u << (rng() % 8);
      break;
    case 2:  // random bytes
      for (int i = 0, n = 1 + static_cast<int>(rng() % 8); i < n && !b.empty(); ++i) b[rng() % b.size()] = static_cast<std::uint8_t>(rng());
      break;
    case 3:  // extreme 32-bit value at a random aligned offset
      if (b.size() >= 4) {
        const std::size_t o = (rng() % (b.size() / 4)) * 4;
        const std::uint32_t v = rng() % 2 ? 0xFFFFFFFFu : 0x7FFFFFFFu;
        std::memcpy(b.data() + o, &v, 4);
      }
      break;
    default:  // insert garbage
      b.insert(b.begin() + static_cast<std::ptrdiff_t>(b.empty() ? 0 : rng() % b.size()), 1 + rng() % 16,
               static_cast<std::uint8_t>(rng()));
      break;
  }
  return b;
}

Outcome format_roundtrips() {
  std::mt19937_64 rng(6);
  std::size_t store_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = synth::random_tile(rng);
    const auto bytes = write_store(t);
    const auto back = read_store(bytes);
    store_ok += back == t && write_store(back) == bytes;
  }

  std::size_t tiff_ok = 0;
  std::vector<std::vector<std::uint8_t>> tiffs;
  for (int i = 0; i < 100; ++i) {
    oracle::TiffSpec s;
    s.width = 1 + rng() % 50;
    s.height = 1 + rng() % 50;
    s.bands = static_cast<std::uint16_t>(1 + rng() % 8);
    const oracle::SampleKind kinds[] = {oracle::SampleKind::Int8, oracle::SampleKind::UInt16, oracle::SampleKind::Float32};
    s.sample = kinds[rng() % 3];
    s.big_endian = rng() % 2;
    s.deflate = rng() % 2;
    if (rng() % 2) {
      s.tile_width = s.tile_length = 16;
    } else {
      s.rows_per_strip = static_cast<std::uint32_t>(rng() % 7);
    }
    s.projected = rng() % 2;
    s.epsg = s.projected ? 32633 : 4326;
    s.scale_x = std::ldexp(1.0 + static_cast<double>(rng() % 1000), -static_cast<int>(rng() % 8));
    s.scale_y = std::ldexp(1.0 + static_cast<double>(rng() % 1000), -static_cast<int>(rng() % 8));
    s.tie_x = static_cast<double>(rng() % 2000000) - 1000000.0;
    s.tie_y = static_cast<double>(rng() % 2000000) - 1000000.0;
    std::vector<std::uint8_t> px(std::size_t{s.width} * s.height * s.bands * oracle::sample_size(s.sample));
    for (auto& b : px) b = static_cast<std::uint8_t>(rng() & 0x3F);  // finite f32 bit patterns
    const auto bytes = oracle::write_tiff(s, px);
    tiffs.push_back(bytes);
    const auto t = parse_geotiff(bytes);
    const DType want = s.sample == oracle::SampleKind::Int8     ? DType::I8
                       : s.sample == oracle::SampleKind::UInt16 ? DType::U16
                                                                : DType::F32;
    const GeoTransform gt{s.scale_x, 0, s.tie_x, 0, -s.scale_y, s.tie_y};
    tiff_ok += t.width == s.width && t.height == s.height && t.dtype == want && t.transform == gt && t.data == px;
  }

  // Fuzz: 10^4 mutations spread over the four input formats.
  std::vector<std::vector<std::uint8_t>> stores;
  for (int i = 0; i < 20; ++i) stores.push_back(write_store(synth::random_tile(rng)));
  std::string table;
  for (int i = 0; i < 5; ++i) {
    table += json{{"id", i}, {"lon", 1.5 * i}, {"lat", -2.0}, {"size_m", 320}, {"t_start", "2024-01-01T00:00:00Z"},
                  {"t_end", "2025-01-01T00:00:00Z"}, {"product", "Earth Index Embeddings"},
                  {"embedding", std::vector<float>(384, 0.25f)}}
                 .dump() +
             "\n";
  }
  const std::vector<std::uint8_t> table_bytes(table.begin(), table.end());
  const std::string sidecar =
      R"({"width":3,"height":2,"dims":2,"dtype":"u16","byte_order":"big","transform":[10,0,0,0,-10,20],)"
      R"("epsg":3857,"t_start":"2022-01-01T00:00:00Z","t_end":"2023-01-01T00:00:00Z","quant":{"scale":0.5,"zero_point":1}})";
  const std::vector<std::uint8_t> side_bytes(sidecar.begin(), sidecar.end());
  const std::vector<std::uint8_t> grid(3 * 2 * 2 * 2, 7);

  std::size_t untyped = 0, rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    bool ok = true;
    switch (i % 4) {
      case 0: {
        const auto m = mutate(stores[rng() % stores.size()], rng);
        try {
          read_store(m);
        } catch (const Error&) {
          ++rejected;
        } catch (...) {
          ok = false;
        }
        break;
      }
      case 1: {
        const auto m = mutate(tiffs[rng() % tiffs.size()], rng);
        ok = typed_or_ok([&] { normalize_orientation(parse_geotiff(m)); });
        break;
      }
      case 2: {
        const auto m = mutate(table_bytes, rng);
        ok = typed_or_ok([&] {
          std::istringstream in(std::string(m.begin(), m.end()));
          parse_patch_table(in);
        });
        break;
      }
      default: {
        if (rng() % 2) {
          const auto m = mutate(side_bytes, rng);
          ok = typed_or_ok([&] { parse_raw_grid(grid, std::string(m.begin(), m.end())); });
        } else {
          const auto m = mutate(grid, rng);
          ok = typed_or_ok([&] { parse_raw_grid(m, sidecar); });
        }
        break;
      }
    }
    untyped += !ok;
  }
  const bool pass = store_ok == 100 && tiff_ok == 100 && untyped == 0;
  return {pass, "store round-trip bitwise " + std::to_string(store_ok) + "/100, geotiff oracle fixtures " +
                    std::to_string(tiff_ok) + "/100, fuzz 10000 mutations: " + std::to_string(untyped) +
                    " untyped failures, 0 crashes, " + std::to_string(rejected) + "/2500 corrupted stores rejected"};
}

// --- 7 ---------------------------------------------------------------------

Outcome geometry_numerics() {
  double worst = 0;
  for (int lat = -85; lat <= 85; ++lat) {
    for (int lon = -180; lon <= 180; ++lon) {
      const auto w = project_4326_to_3857(lon, lat);
      const auto g = project_3857_to_4326(w.x, w.y);
      worst = std::max({worst, std::abs(g.x - lon), std::abs(g.y - lat)});
    }
  }

  std::mt19937_64 rng(7);
  std::size_t points = 0, preserved = 0, idempotent = 0, tiles = 0;
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  while (points < 1000) {
    auto t = synth::random_tile(rng);
    if (t.transform.e < 0) t.transform.e = -t.transform.e;  // south-up half of the time below
    if (rng() % 2) t.transform.e = -t.transform.e;
    const auto n = normalize_orientation(t);
    ++tiles;
    idempotent += normalize_orientation(n) == n && n.transform.e < 0 && n.footprint() == t.footprint();
    for (int k = 0; k < 10; ++k) {
      const double col = static_cast<double>(rng() % t.width) + frac(rng);
      const double row = static_cast<double>(rng() % t.height) + frac(rng);
      const auto wpt = transform_pixel_to_world(t.transform, row, col);
      preserved += pixel_vector_at(t, wpt.x, wpt.y) == pixel_vector_at(n, wpt.x, wpt.y);
      ++points;
    }
  }
  const bool ok = worst < 1e-9 && preserved == points && idempotent == tiles;
  return {ok, "mercator max round-trip error " + fmt("%.2e", worst) + " deg < 1e-9 over 1-degree grid, orientation " +
                  std::to_string(preserved) + "/" + std::to_string(points) + " points preserved, idempotent on " +
                  std::to_string(idempotent) + "/" + std::to_string(tiles) + " tiles"};
}

// --- 8 ---------------------------------------------------------------------

Outcome sampler_coverage() {
  std::mt19937_64 rng(8);
  std::size_t count_bad = 0, uncovered = 0, instances = 0;
  for (; instances < 200; ++instances) {
    const double res = std::uniform_real_distribution<double>(0.1, 100)(rng);
    const std::uint32_t size = 1 + static_cast<std::uint32_t>(rng() % 300);
    const std::uint32_t stride = 1 + static_cast<std::uint32_t>(rng() % size);
    const double w = res * static_cast<double>(1 + rng() % 1500);
    const double h = res * static_cast<double>(1 + rng() % 1500);
    const double x0 = std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    const double y0 = std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    const BoundingBox bounds(x0, y0, x0 + w, y0 + h);
    const auto g = grid_samples(bounds, res, size, stride);
    count_bad += g.size() != closed_form_axis(w, res, size, stride) * closed_form_axis(h, res, size, stride);
    std::uniform_real_distribution<double> px(bounds.minx(), bounds.maxx()), py(bounds.miny(), bounds.maxy());
    for (int k = 0; k < 1000; ++k) {
      const double x = px(rng), y = py(rng);
      bool hit = false;
      for (const auto& b : g) {
        if (b.contains(x, y)) {
          hit = true;
          break;
        }
      }
      uncovered += !hit;
    }
  }
  return {count_bad == 0 && uncovered == 0, std::to_string(instances) + " instances x 1000 points, " +
                                                std::to_string(uncovered) + " uncovered, " + std::to_string(count_bad) +
                                                " count mismatches vs closed form"};
}

}  // namespace

int main() {
  report(1, "registry-fidelity", 1.0, registry_fidelity);
  report(2, "index-oracle-equivalence", 30.0, index_equivalence);
  report(3, "retrieval-exactness", 60.0, retrieval_exactness);
  report(4, "patch-retrieval-workflow", 0, patch_retrieval_workflow);
  report(5, "pixel-mapping-workflow", 0, pixel_mapping_workflow);
  report(6, "format-round-trips", 0, format_roundtrips);
  report(7, "geometry-numerics", 0, geometry_numerics);
  report(8, "sampler-coverage", 0, sampler_coverage);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
