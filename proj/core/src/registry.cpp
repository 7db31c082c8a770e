// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include "geodex/registry.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "geodex/error.hpp"

namespace geodex {

std::string_view to_string(ProductKind k) {
  switch (k) {
    case ProductKind::Location: return "Location";
    case ProductKind::Patch: return "Patch";
    case ProductKind::Pixel: return "Pixel";
  }
  return "?";
}

ProductKind parse_product_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "location") return ProductKind::Location;
  if (lower == "patch") return ProductKind::Patch;
  if (lower == "pixel") return ProductKind::Pixel;
  fail(ErrorCode::InvalidArgument, "unknown product kind '" + std::string(name) + "'");
}

std::string_view to_string(TemporalResolution r) { return r == TemporalResolution::Annual ? "Annual" : "Snapshot"; }
std::string_view to_string(AnalysisDType t) { return t == AnalysisDType::F64 ? "float64" : "float32"; }

std::string_view to_string(Coverage c) {
  switch (c) {
    case Coverage::Full: return "Full";
    case Coverage::Partial: return "Partial";
    case Coverage::None: return "None";
    case Coverage::UnknownSparse: return "UnknownSparse";
  }
  return "?";
}

double SpatialResolution::coarsest_meters() const {
  switch (unit) {
    case Unit::Meters: return value;
    case Unit::MetersRange: return value_max;
    case Unit::Degrees: return value * kMetersPerDegree;
  }
  return value;
}

namespace {

int year_of(std::int64_t seconds) {
  using namespace std::chrono;
  const auto day = floor<days>(sys_seconds{std::chrono::seconds{seconds}});
  return static_cast<int>(year_month_day{day}.year());
}

}  // namespace

int ProductRecord::first_year() const { return year_of(temporal_extent.start()); }
int ProductRecord::last_year() const { return year_of(temporal_extent.end() - 1); }

std::string license_label(const LicenseTerm& term) { return term ? *term : std::string("ClosedSource"); }

namespace {

// Coarse envelope of Togo; approximate, used only for coverage answers.
const BoundingBox kTogoBox{-0.2, 5.9, 1.9, 11.2};

std::vector<ProductRecord> make_products() {
  using R = SpatialResolution;
  using E = SpatialExtent;
  using TR = TemporalResolution;
  const QuantScheme i8_default = QuantScheme::affine(1.0 / 127.0, 0.0);
  const QuantScheme u16_default = QuantScheme::affine(1.0 / 65535.0, 0.0);
  return {
      {"Clay Embeddings", ProductKind::Patch, E::global_sparse(), R::meters(5120.0), TimeInterval::years(2018, 2023),
       true, TR::Snapshot, 768, DType::F32, std::nullopt, QuantScheme::identity(), "ODC-By-1.0"},
      {"Major TOM Embeddings", ProductKind::Patch, E::global(), R::meters_range(2140.0, 3560.0),
       TimeInterval::years(2015, 2024), true, TR::Snapshot, 2048, DType::F32, std::nullopt, QuantScheme::identity(),
       "CC-BY-SA-4.0"},
      {"Earth Index Embeddings", ProductKind::Patch, E::global(), R::meters(320.0), TimeInterval::year(2024), false,
       TR::Snapshot, 384, DType::F32, std::nullopt, QuantScheme::identity(), "CC-BY-4.0"},
      {"Copernicus-Embed", ProductKind::Patch, E::global(), R::degrees(0.25), TimeInterval::year(2021), false,
       TR::Annual, 768, DType::F32, std::nullopt, QuantScheme::identity(), "CC-BY-4.0"},
      {"Presto Embeddings", ProductKind::Pixel, E::region("Togo", kTogoBox), R::meters(10.0),
       TimeInterval::years(2019, 2020), false, TR::Annual, 128, DType::U16, std::nullopt, u16_default, "CC-BY-4.0"},
      {"Tessera Embeddings", ProductKind::Pixel, E::global_sparse(), R::meters(10.0), TimeInterval::years(2017, 2025),
       true, TR::Annual, 128, DType::I8, AnalysisDType::F32, i8_default, "CC-BY-4.0"},
      {"Google Satellite Embedding", ProductKind::Pixel, E::global(), R::meters(10.0), TimeInterval::years(2017, 2024),
       false, TR::Annual, 64, DType::I8, AnalysisDType::F64, i8_default, "CC-BY-4.0"},
  };
}

using Strings = std::vector<std::string>;

std::vector<ProvenanceRecord> make_provenance() {
  const LicenseTerm closed = std::nullopt;
  const std::string mt = "Major TOM Embeddings";
  const Strings mt_data{"CC-BY-SA-4.0"};
  return {
      {"Clay Embeddings", "Clay", "MAE", Strings{"Landsat 8/9", "NAIP", "MODIS", "Sentinel 2", "LINZ"},
       Strings{"Sentinel 2"}, "Apache-2.0", "Apache-2.0",
       Strings{"public domain", "Copernicus T&C", "CC-BY-4.0"}},

      {mt, "ResNet-50", "DINO", Strings{"Sentinel 2"}, Strings{"Sentinel 2"}, "Apache-2.0", "CC-BY-4.0", mt_data},
      {mt, "ResNet-50", "MoCo v2", Strings{"Sentinel 1"}, Strings{"Sentinel 1"}, "Apache-2.0", "CC-BY-4.0", mt_data},
      {mt, "DINOv2-B", "DINOv2", Strings{"Sentinel 2 (RGB)"}, Strings{"Sentinel 2 (RGB)"}, "Apache-2.0", "Apache-2.0",
       mt_data},
      {mt, "ViT-SO400M", "SigLIP", Strings{"WebLI"}, Strings{"Sentinel 2 (RGB)"}, "Apache-2.0", "Apache-2.0", mt_data},
      {mt, "ResNet-50", "DeCUR", Strings{"Sentinel 1/2"}, Strings{"Sentinel 2"}, "Apache-2.0", "Apache-2.0", mt_data},
      {mt, "ResNet-50", "DeCUR", Strings{"Sentinel 1/2"}, Strings{"Sentinel 2"}, "Apache-2.0", "Apache-2.0", mt_data},
      {mt, "ConvNeXt v2", "MP-MAE", Strings{"MMEarth"}, Strings{"Sentinel 2"}, "MIT", "CC-BY-NC-4.0", mt_data},

      {"Earth Index Embeddings", "DINOv2-S", "SoftCon", Strings{"Sentinel 2"}, Strings{"Sentinel 2"}, "Apache-2.0",
       "CC-BY-4.0", Strings{"CC-BY-4.0"}},

      {"Copernicus-Embed", "Copernicus-FM", "MAE Distillation", Strings{"Sentinel 1/2/3/5P", "Copernicus DEM"},
       Strings{"Sentinel 1/2/3/5P", "Copernicus DEM"}, "Apache-2.0", "CC-BY-4.0", Strings{"CC-BY-4.0"}},

      {"Presto Embeddings", "Presto", "MAE", Strings{"Sentinel 1/2", "ERA5", "Dynamic World"},
       Strings{"Sentinel 1/2", "ERA5", "SRTM"}, "MIT", "MIT", Strings{"Copernicus T&C", "CC-BY-4.0"}},

      {"Tessera Embeddings", "Tessera", "Barlow Twins", Strings{"Sentinel 1/2"}, Strings{"Sentinel 1/2"}, "MIT", closed,
       Strings{"CC-BY-4.0"}},

      {"Google Satellite Embedding", "AlphaEarth Foundations", "Contrastive, MAE, Distillation",
       Strings{"Sentinel", "Copernicus DEM", "ERA5", "Landsat", "GEDI", "GRACE", "NLCD", "ALOS PALSAR ScanSAR",
               "Wikipedia articles", "GBIF"},
       Strings{"Sentinel 1/2", "Landsat 8/9"}, closed, closed,
       Strings{"Copernicus T&C", "public domain", "JAXA ToS", "CC-BY-SA-4.0", "CC-BY-4.0"}},
  };
}

const std::vector<ProductRecord>& products_table() {
  static const std::vector<ProductRecord> table = make_products();
  return table;
}

const std::vector<ProvenanceRecord>& provenance_table() {
  static const std::vector<ProvenanceRecord> table = make_provenance();
  return table;
}

bool has_prefix(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

bool is_restricted(const LicenseTerm& term) {
  return !term || term->find("-NC") != std::string::npos;
}

}  // namespace

std::span<const ProductRecord> builtin_products() { return products_table(); }

const ProductRecord* lookup_product(std::string_view name) {
  for (const auto& p : products_table()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const ProductRecord& product(std::string_view name) {
  if (const auto* p = lookup_product(name)) return *p;
  fail(ErrorCode::UnknownProduct, std::string(name));
}

std::vector<ProductRecord> find_products(const ProductFilter& filter) {
  std::vector<ProductRecord> out;
  for (const auto& p : products_table()) {
    if (filter.kind && p.kind != *filter.kind) continue;
    if (filter.min_year && p.last_year() < *filter.min_year) continue;
    if (filter.max_year && p.first_year() > *filter.max_year) continue;
    if (filter.license_prefix && !has_prefix(p.license, *filter.license_prefix)) continue;
    if (filter.max_resolution_m && p.spatial_resolution.coarsest_meters() > *filter.max_resolution_m) continue;
    if (filter.global_only && p.spatial_extent.kind == SpatialExtent::Kind::Region) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<ProvenanceRecord> provenance(std::string_view product_name) {
  (void)product(product_name);
  std::vector<ProvenanceRecord> out;
  for (const auto& r : provenance_table()) {
    if (r.product == product_name) out.push_back(r);
  }
  return out;
}

OpennessReport openness_report(std::string_view product_name) {
  const auto rows = provenance(product_name);
  OpennessReport report;
  auto add = [&](const std::string& field, const LicenseTerm& term, const ProvenanceRecord& row) {
    std::string blocker = field + " " + license_label(term);
    if (rows.size() > 1) blocker += " (" + row.architecture + " row)";
    if (std::find(report.blockers.begin(), report.blockers.end(), blocker) == report.blockers.end()) {
      report.blockers.push_back(std::move(blocker));
    }
  };
  for (const auto& row : rows) {
    if (is_restricted(row.code_license)) add("code", row.code_license, row);
    if (is_restricted(row.weights_license)) add("weights", row.weights_license, row);
  }
  report.fully_open = report.blockers.empty();
  return report;
}

Coverage coverage_check(std::string_view product_name, const BoundingBox& bbox4326, const TimeInterval& t) {
  const auto& p = product(product_name);
  if (!p.temporal_extent.intersects(t)) return Coverage::None;
  const auto& extent = p.spatial_extent;
  if (extent.kind == SpatialExtent::Kind::Region && !extent.region_bbox.intersects(bbox4326)) return Coverage::None;
  if (extent.kind == SpatialExtent::Kind::GlobalSparse || p.temporal_sparse) return Coverage::UnknownSparse;
  // Region envelopes are approximate, so a regional product is never reported as Full.
  if (extent.kind == SpatialExtent::Kind::Global && p.temporal_extent.covers(t)) return Coverage::Full;
  return Coverage::Partial;
}

}  // namespace geodex
