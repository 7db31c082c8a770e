// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "geodex/error.hpp"

namespace geodex::cli {
namespace {

const std::map<std::string, Metric> kMetrics{{"cosine", Metric::Cosine}, {"l2", Metric::L2}};
const std::map<std::string, InputKind> kInputKinds{
    {"geotiff", InputKind::GeoTiff}, {"patch-table", InputKind::PatchTable}, {"raw-grid", InputKind::RawGrid}};

TimeInterval time_override(const std::optional<int>& year, const std::optional<std::string>& start,
                           const std::optional<std::string>& end) {
  if (year && (start || end)) fail(ErrorCode::InvalidArgument, "--year excludes --t-start/--t-end");
  if (year) return TimeInterval::year(*year);
  if (!start || !end) fail(ErrorCode::InvalidArgument, "--t-start and --t-end go together");
  const std::int64_t s = parse_iso8601(*start);
  const std::int64_t e = parse_iso8601(*end);
  if (!(s < e)) fail(ErrorCode::InvalidInterval, "--t-start must precede --t-end");
  return TimeInterval(s, e);
}

std::pair<std::uint32_t, std::uint32_t> parse_ivf(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const unsigned long nlist = std::stoul(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(text);
    const std::string rest = text.substr(comma + 1);
    const unsigned long nprobe = std::stoul(rest, &used);
    if (used != rest.size() || nlist > 0xFFFFFFFFul || nprobe > 0xFFFFFFFFul) throw std::invalid_argument(text);
    return {static_cast<std::uint32_t>(nlist), static_cast<std::uint32_t>(nprobe)};
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "--ivf expects NLIST,NPROBE, got '" + text + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Access engine for pre-computed Earth embedding products", "geodex"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_flag("--json", global.json, "Machine-readable JSON lines output");
  app.add_option("--jobs", global.jobs, "Worker threads for search and mapping (0 = all cores)")->capture_default_str();

  // products
  ProductsOptions products;
  std::optional<std::string> kind_name;
  std::optional<int> year;
  auto* products_cmd = app.add_subcommand("products", "List the built-in embedding product atlas");
  products_cmd->add_option("--kind", kind_name, "location, patch or pixel");
  products_cmd->add_option("--year", year, "Products whose temporal extent includes this year");
  products_cmd->add_option("--min-year", products.filter.min_year, "Products with data in or after this year");
  products_cmd->add_option("--max-year", products.filter.max_year, "Products with data in or before this year");
  products_cmd->add_option("--license", products.filter.license_prefix, "License prefix, e.g. CC-BY");
  products_cmd->add_option("--max-res", products.filter.max_resolution_m, "Coarsest resolution in meters");
  products_cmd->add_flag("--global", products.filter.global_only, "Only products with global extent");
  products_cmd->add_option("--provenance", products.provenance, "Print the provenance rows of one product");

  // ingest
  IngestOptions ingest;
  std::string input_kind = "geotiff";
  std::optional<int> ingest_year;
  std::optional<std::string> t_start, t_end;
  auto* ingest_cmd = app.add_subcommand("ingest", "Normalize input files into a store directory");
  ingest_cmd->add_option("inputs", ingest.inputs, "Input files")->required();
  ingest_cmd->add_option("--kind", input_kind, "geotiff, patch-table or raw-grid")
      ->check(CLI::IsMember({"geotiff", "patch-table", "raw-grid"}))
      ->capture_default_str();
  ingest_cmd->add_option("--sidecar", ingest.sidecars, "JSON sidecar for raw-grid inputs");
  ingest_cmd->add_option("--out", ingest.out_dir, "Store directory")->envname("GEODEX_STORE");
  ingest_cmd->add_option("--product", ingest.product, "Product name recorded with each input");
  ingest_cmd->add_option("--year", ingest_year, "Time interval: one calendar year");
  ingest_cmd->add_option("--t-start", t_start, "Time interval start (ISO 8601)");
  ingest_cmd->add_option("--t-end", t_end, "Time interval end (ISO 8601)");

  // sample
  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Print gridded or random patch boxes over a store");
  sample_cmd->add_option("--store", sample.store, "Store directory")->envname("GEODEX_STORE")->required();
  sample_cmd->add_option("--size", sample.size, "Patch side in pixels")->capture_default_str();
  sample_cmd->add_option("--stride", sample.stride, "Grid stride in pixels (default: size)");
  sample_cmd->add_option("--random", sample.random, "Draw this many random patches instead of a grid");
  sample_cmd->add_option("--seed", sample.seed, "Random seed")->capture_default_str();
  sample_cmd->add_option("--res", sample.resolution, "Pixel size in CRS units (default: store resolution)");

  // search
  SearchOptions search;
  std::string metric = "cosine";
  std::optional<std::string> ivf, export_format;
  auto* search_cmd = app.add_subcommand("search", "Top-k similarity search over a store");
  search_cmd->add_option("--store", search.store, "Store directory")->envname("GEODEX_STORE")->required();
  search_cmd->add_option("--query-lon", search.lon, "Query longitude (degrees)");
  search_cmd->add_option("--query-lat", search.lat, "Query latitude (degrees)");
  search_cmd->add_option("--query-file", search.query_file, "JSON array holding the query vector");
  search_cmd->add_option("-k", search.k, "Number of results")->capture_default_str();
  search_cmd->add_option("--ivf", ivf, "Approximate search: NLIST,NPROBE");
  search_cmd->add_option("--seed", search.seed, "IVF k-means seed")->capture_default_str();
  search_cmd->add_option("--metric", metric, "cosine or l2")->check(CLI::IsMember({"cosine", "l2"}))->capture_default_str();
  search_cmd->add_option("--export", export_format, "Output format: geojson")->check(CLI::IsMember({"geojson"}));

  // map
  MapOptions map;
  std::string map_metric = "l2";
  auto* map_cmd = app.add_subcommand("map", "kNN label mapping from an embedding store and a label raster");
  map_cmd->add_option("--embeddings", map.embeddings, "Embedding store directory")->required();
  map_cmd->add_option("--labels", map.labels, "Label raster (.ets, one u16 band, 0 = unlabeled)")->required();
  map_cmd->add_option("-k", map.k, "Neighbours per vote")->capture_default_str();
  map_cmd->add_option("--size", map.size, "Grid patch side in pixels")->capture_default_str();
  map_cmd->add_option("--metric", map_metric, "cosine or l2")->check(CLI::IsMember({"cosine", "l2"}))->capture_default_str();
  map_cmd->add_option("--out", map.out, "Output label raster (.ets)")->required();

  // export
  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "Write store footprints as GeoJSON");
  export_cmd->add_option("--store", exp.store, "Store directory")->envname("GEODEX_STORE")->required();
  export_cmd->add_option("--out", exp.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "geodex: " << e.what() << '\n';
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUser;
  }

  try {
    if (global.jobs == 0) global.jobs = std::max(1u, std::thread::hardware_concurrency());
    if (products_cmd->parsed()) {
      if (kind_name) products.filter.kind = parse_product_kind(*kind_name);
      if (year) {
        products.filter.min_year = *year;
        products.filter.max_year = *year;
      }
      cmd_products(products, global, out);
    } else if (ingest_cmd->parsed()) {
      ingest.kind = kInputKinds.at(input_kind);
      if (ingest_year || t_start || t_end) ingest.time = time_override(ingest_year, t_start, t_end);
      cmd_ingest(ingest, global, out);
    } else if (sample_cmd->parsed()) {
      cmd_sample(sample, global, out);
    } else if (search_cmd->parsed()) {
      search.metric = kMetrics.at(metric);
      if (ivf) search.ivf = parse_ivf(*ivf);
      search.geojson = export_format.has_value();
      cmd_search(search, global, out);
    } else if (map_cmd->parsed()) {
      map.metric = kMetrics.at(map_metric);
      cmd_map(map, global, out);
    } else if (export_cmd->parsed()) {
      cmd_export(exp, global, out);
    }
  } catch (const Error& e) {
    err << "geodex: error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "geodex: error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "geodex: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace geodex::cli
