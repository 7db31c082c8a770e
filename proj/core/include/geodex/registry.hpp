// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodex/geocore.hpp"
#include "geodex/raster.hpp"

namespace geodex {

/// Spatial granularity of an embedding product. Location embeddings have no
/// distributed products, so no registry record uses that kind.
enum class ProductKind { Location, Patch, Pixel };

std::string_view to_string(ProductKind k);
/// Case-insensitive "location" / "patch" / "pixel". Throws InvalidArgument.
ProductKind parse_product_kind(std::string_view name);

struct SpatialExtent {
  enum class Kind { Global, GlobalSparse, Region };

  Kind kind = Kind::Global;
  std::string region_name;  // Region only
  BoundingBox region_bbox;  // EPSG:4326, Region only

  static SpatialExtent global() { return {}; }
  static SpatialExtent global_sparse() { return {Kind::GlobalSparse, {}, {}}; }
  static SpatialExtent region(std::string name, BoundingBox bbox) { return {Kind::Region, std::move(name), bbox}; }

  friend bool operator==(const SpatialExtent&, const SpatialExtent&) = default;
};

struct SpatialResolution {
  enum class Unit { Meters, Degrees, MetersRange };

  Unit unit = Unit::Meters;
  double value = 0.0;      // meters, degrees, or the fine end of a range
  double value_max = 0.0;  // coarse end, MetersRange only

  static SpatialResolution meters(double m) { return {Unit::Meters, m, m}; }
  static SpatialResolution degrees(double deg) { return {Unit::Degrees, deg, deg}; }
  static SpatialResolution meters_range(double lo, double hi) { return {Unit::MetersRange, lo, hi}; }

  /// Coarsest ground sampling in meters. Ranges use the coarse end; degrees
  /// convert at the equator (1 deg = 111320 m).
  double coarsest_meters() const;

  friend bool operator==(const SpatialResolution&, const SpatialResolution&) = default;
};

enum class TemporalResolution { Snapshot, Annual };
enum class AnalysisDType { F32, F64 };

std::string_view to_string(TemporalResolution r);
std::string_view to_string(AnalysisDType t);

struct ProductRecord {
  std::string name;
  ProductKind kind = ProductKind::Patch;
  SpatialExtent spatial_extent;
  SpatialResolution spatial_resolution;
  TimeInterval temporal_extent;
  bool temporal_sparse = false;
  TemporalResolution temporal_resolution = TemporalResolution::Snapshot;
  std::uint16_t dimensions = 0;
  DType storage_dtype = DType::F32;
  /// Set when the product is published quantized and dequantized for use.
  std::optional<AnalysisDType> analysis_dtype;
  QuantScheme dequant;
  std::string license;

  int first_year() const;
  int last_year() const;

  friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

/// `std::nullopt` stands for a closed-source component.
using LicenseTerm = std::optional<std::string>;
std::string license_label(const LicenseTerm& term);

struct ProvenanceRecord {
  std::string product;
  std::string architecture;
  std::string training_method;
  std::vector<std::string> training_data;
  std::vector<std::string> inference_data;
  LicenseTerm code_license;
  LicenseTerm weights_license;
  std::vector<std::string> data_licenses;

  friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

struct ProductFilter {
  std::optional<ProductKind> kind;
  std::optional<int> min_year;
  std::optional<int> max_year;
  std::optional<std::string> license_prefix;
  std::optional<double> max_resolution_m;
  bool global_only = false;
};

struct OpennessReport {
  bool fully_open = true;
  std::vector<std::string> blockers;
};

enum class Coverage { Full, Partial, None, UnknownSparse };
std::string_view to_string(Coverage c);

/// The seven published products, in atlas order.
std::span<const ProductRecord> builtin_products();

/// nullptr when the name is not registered.
const ProductRecord* lookup_product(std::string_view name);
/// Throws UnknownProduct.
const ProductRecord& product(std::string_view name);

std::vector<ProductRecord> find_products(const ProductFilter& filter);

/// Throws UnknownProduct.
std::vector<ProvenanceRecord> provenance(std::string_view product_name);

/// Not fully open when any code or weights license is closed source or
/// carries a non-commercial clause. Throws UnknownProduct.
OpennessReport openness_report(std::string_view product_name);

/// Throws UnknownProduct.
Coverage coverage_check(std::string_view product_name, const BoundingBox& bbox4326, const TimeInterval& t);

}  // namespace geodex
