// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geodex/embed.hpp"
#include "geodex/registry.hpp"

namespace geodex::cli {

struct GlobalOptions {
  bool json = false;
  unsigned jobs = 1;
};

struct ProductsOptions {
  ProductFilter filter;
  std::optional<std::string> provenance;
};

enum class InputKind { GeoTiff, PatchTable, RawGrid };

struct IngestOptions {
  std::vector<std::filesystem::path> inputs;
  InputKind kind = InputKind::GeoTiff;
  std::vector<std::filesystem::path> sidecars;  // one for all inputs, or one per input
  std::filesystem::path out_dir;
  std::optional<std::string> product;
  std::optional<TimeInterval> time;
};

struct SampleOptions {
  std::filesystem::path store;
  std::uint32_t size = 256;
  std::optional<std::uint32_t> stride;
  std::optional<std::uint32_t> random;
  std::uint64_t seed = 0;
  std::optional<double> resolution;
};

struct SearchOptions {
  std::filesystem::path store;
  std::optional<double> lon;
  std::optional<double> lat;
  std::optional<std::filesystem::path> query_file;
  std::uint32_t k = 5;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> ivf;  // nlist, nprobe
  std::uint64_t seed = 0;
  Metric metric = Metric::Cosine;
  bool geojson = false;
};

struct MapOptions {
  std::filesystem::path embeddings;
  std::filesystem::path labels;
  std::uint32_t k = 3;
  std::uint32_t size = 256;
  Metric metric = Metric::L2;
  std::filesystem::path out;
};

struct ExportOptions {
  std::filesystem::path store;
  std::optional<std::filesystem::path> out;
};

// Each command writes its result to `out` and throws geodex::Error on user
// or input errors.
void cmd_products(const ProductsOptions& opt, const GlobalOptions& g, std::ostream& out);
void cmd_ingest(const IngestOptions& opt, const GlobalOptions& g, std::ostream& out);
void cmd_sample(const SampleOptions& opt, const GlobalOptions& g, std::ostream& out);
void cmd_search(const SearchOptions& opt, const GlobalOptions& g, std::ostream& out);
void cmd_map(const MapOptions& opt, const GlobalOptions& g, std::ostream& out);
void cmd_export(const ExportOptions& opt, const GlobalOptions& g, std::ostream& out);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

}  // namespace geodex::cli
