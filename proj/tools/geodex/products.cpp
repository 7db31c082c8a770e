// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <ostream>

#include "commands.hpp"
#include "json.hpp"

namespace geodex::cli {
namespace {

using nlohmann::json;

std::string dtype_label(DType t) {
  switch (t) {
    case DType::I8: return "int8";
    case DType::U16: return "uint16";
    case DType::F32: return "float32";
  }
  return "?";
}

std::string extent_label(const SpatialExtent& e) {
  switch (e.kind) {
    case SpatialExtent::Kind::Global: return "Global";
    case SpatialExtent::Kind::GlobalSparse: return "Global (sparse)";
    case SpatialExtent::Kind::Region: return e.region_name;
  }
  return "?";
}

std::string resolution_label(const SpatialResolution& r) {
  switch (r.unit) {
    case SpatialResolution::Unit::Meters: return format_number(r.value) + " m";
    case SpatialResolution::Unit::Degrees: return format_number(r.value) + " deg";
    case SpatialResolution::Unit::MetersRange: return format_number(r.value) + "-" + format_number(r.value_max) + " m";
  }
  return "?";
}

std::string years_label(const ProductRecord& p) {
  std::string s = std::to_string(p.first_year());
  if (p.last_year() != p.first_year()) s += "-" + std::to_string(p.last_year());
  if (p.temporal_sparse) s += " (sparse)";
  return s;
}

std::string storage_label(const ProductRecord& p) {
  std::string s = dtype_label(p.storage_dtype);
  if (p.analysis_dtype) s += " -> " + std::string(to_string(*p.analysis_dtype));
  return s;
}

json product_json(const ProductRecord& p) {
  json extent = {{"kind", extent_label(p.spatial_extent)}};
  if (p.spatial_extent.kind == SpatialExtent::Kind::Region) {
    const auto& b = p.spatial_extent.region_bbox;
    extent = {{"kind", "Region"}, {"name", p.spatial_extent.region_name}, {"bbox", {b.minx(), b.miny(), b.maxx(), b.maxy()}}};
  } else if (p.spatial_extent.kind == SpatialExtent::Kind::GlobalSparse) {
    extent = {{"kind", "GlobalSparse"}};
  }
  static constexpr std::array<const char*, 3> kUnits{"m", "deg", "m-range"};
  json res = {{"unit", kUnits[static_cast<std::size_t>(p.spatial_resolution.unit)]},
              {"value", p.spatial_resolution.value}};
  if (p.spatial_resolution.unit == SpatialResolution::Unit::MetersRange) res["max"] = p.spatial_resolution.value_max;
  return {{"name", p.name},
          {"kind", to_string(p.kind)},
          {"spatial_extent", extent},
          {"spatial_resolution", res},
          {"first_year", p.first_year()},
          {"last_year", p.last_year()},
          {"temporal_sparse", p.temporal_sparse},
          {"temporal_resolution", to_string(p.temporal_resolution)},
          {"dimensions", p.dimensions},
          {"storage_dtype", dtype_label(p.storage_dtype)},
          {"analysis_dtype", p.analysis_dtype ? json(to_string(*p.analysis_dtype)) : json(nullptr)},
          {"dequant",
           {{"kind", p.dequant.is_identity() ? "identity" : "affine"},
            {"scale", p.dequant.scale},
            {"zero_point", p.dequant.zero_point}}},
          {"license", p.license}};
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
  return s;
}

void print_table(const std::vector<ProductRecord>& products, std::ostream& out) {
  std::vector<std::array<std::string, 9>> rows;
  rows.push_back({"Product", "Kind", "Spatial Extent", "Spatial Res.", "Temporal Extent", "Temporal Res.", "Dims",
                  "Dtype", "License"});
  for (const auto& p : products) {
    rows.push_back({p.name, std::string(to_string(p.kind)), extent_label(p.spatial_extent),
                    resolution_label(p.spatial_resolution), years_label(p), std::string(to_string(p.temporal_resolution)),
                    std::to_string(p.dimensions), storage_label(p), p.license});
  }
  std::array<std::size_t, 9> width{};
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

void print_provenance(const std::string& name, const GlobalOptions& g, std::ostream& out) {
  const auto rows = provenance(name);
  const auto report = openness_report(name);
  if (g.json) {
    for (const auto& r : rows) {
      out << json{{"product", r.product},
                  {"architecture", r.architecture},
                  {"training_method", r.training_method},
                  {"training_data", r.training_data},
                  {"inference_data", r.inference_data},
                  {"code", license_label(r.code_license)},
                  {"weights", license_label(r.weights_license)},
                  {"data", r.data_licenses}}
                 .dump()
          << '\n';
    }
    out << json{{"product", name}, {"fully_open", report.fully_open}, {"blockers", report.blockers}}.dump() << '\n';
    return;
  }
  for (const auto& r : rows) {
    out << "product: " << r.product << '\n'
        << "architecture: " << r.architecture << '\n'
        << "training_method: " << r.training_method << '\n'
        << "training_data: " << join(r.training_data) << '\n'
        << "inference_data: " << join(r.inference_data) << '\n'
        << "code: " << license_label(r.code_license) << '\n'
        << "weights: " << license_label(r.weights_license) << '\n'
        << "data: " << join(r.data_licenses) << "\n\n";
  }
  out << "fully_open: " << (report.fully_open ? "true" : "false") << '\n';
  for (const auto& b : report.blockers) out << "blocker: " << b << '\n';
}

}  // namespace

void cmd_products(const ProductsOptions& opt, const GlobalOptions& g, std::ostream& out) {
  if (opt.provenance) {
    print_provenance(*opt.provenance, g, out);
    return;
  }
  const auto products = find_products(opt.filter);
  if (g.json) {
    for (const auto& p : products) out << product_json(p).dump() << '\n';
  } else {
    print_table(products, out);
  }
}

}  // namespace geodex::cli
