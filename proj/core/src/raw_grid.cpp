// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "json.hpp"

namespace geodex {
namespace {

using nlohmann::json;

const json& field(const json& sidecar, const char* name) {
  const auto it = sidecar.find(name);
  if (it == sidecar.end() || it->is_null()) fail(ErrorCode::MissingField, name);
  return *it;
}

std::uint64_t positive_int(const json& sidecar, const char* name, std::uint64_t max) {
  const json& v = field(sidecar, name);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > max) {
    fail(ErrorCode::InvalidArgument, std::string("'") + name + "' must be an integer in [1, " + std::to_string(max) + "]");
  }
  return v.get<std::uint64_t>();
}

std::int64_t timestamp(const json& sidecar, const char* name) {
  const json& v = field(sidecar, name);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (!v.is_string()) fail(ErrorCode::BadTimestamp, std::string("'") + name + "' must be an ISO-8601 string");
  return parse_iso8601(v.get_ref<const std::string&>());
}

}  // namespace

RasterTile parse_raw_grid(std::span<const std::uint8_t> data, std::string_view sidecar_json) {
  json sidecar;
  try {
    sidecar = json::parse(sidecar_json);
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptData, std::string("sidecar is not valid JSON: ") + e.what());
  }
  if (!sidecar.is_object()) fail(ErrorCode::CorruptData, "sidecar must be a JSON object");

  RasterTile tile;
  tile.width = static_cast<std::uint32_t>(positive_int(sidecar, "width", 0xFFFFFFFFu));
  tile.height = static_cast<std::uint32_t>(positive_int(sidecar, "height", 0xFFFFFFFFu));
  tile.dims = static_cast<std::uint16_t>(positive_int(sidecar, "dims", 0xFFFFu));

  const json& dtype = field(sidecar, "dtype");
  if (!dtype.is_string()) fail(ErrorCode::UnknownDtype, dtype.dump());
  tile.dtype = parse_dtype(dtype.get_ref<const std::string&>());

  const json& order = field(sidecar, "byte_order");
  if (!order.is_string() || (order != "little" && order != "big")) {
    fail(ErrorCode::InvalidArgument, "'byte_order' must be \"little\" or \"big\"");
  }
  const bool big_endian = order == "big";

  const json& t = field(sidecar, "transform");
  if (!t.is_array() || t.size() != 6) fail(ErrorCode::InvalidArgument, "'transform' must hold 6 numbers");
  double coeff[6];
  for (std::size_t i = 0; i < 6; ++i) {
    if (!t[i].is_number()) fail(ErrorCode::InvalidArgument, "'transform' must hold 6 numbers");
    coeff[i] = t[i].get<double>();
  }
  tile.transform = GeoTransform{coeff[0], coeff[1], coeff[2], coeff[3], coeff[4], coeff[5]};
  if (!(std::abs(tile.transform.determinant()) >= 1e-12)) fail(ErrorCode::SingularTransform, "sidecar transform");

  tile.crs = CrsId(static_cast<std::uint32_t>(positive_int(sidecar, "epsg", 0xFFFFFFFFu)));

  const std::int64_t start = timestamp(sidecar, "t_start");
  const std::int64_t end = timestamp(sidecar, "t_end");
  if (!(start < end)) fail(ErrorCode::BadTimestamp, "t_start must precede t_end");
  tile.time = TimeInterval(start, end);

  if (const auto q = sidecar.find("quant"); q != sidecar.end() && !q->is_null()) {
    const json& scale = field(*q, "scale");
    if (!scale.is_number()) fail(ErrorCode::InvalidArgument, "'quant.scale' must be a number");
    double zero_point = 0.0;
    if (const auto z = q->find("zero_point"); z != q->end()) {
      if (!z->is_number()) fail(ErrorCode::InvalidArgument, "'quant.zero_point' must be a number");
      zero_point = z->get<double>();
    }
    tile.quant = QuantScheme::affine(scale.get<double>(), zero_point);
  }
  if (const auto p = sidecar.find("product"); p != sidecar.end() && p->is_string()) tile.product = p->get<std::string>();

  const std::uint64_t sample = dtype_size(tile.dtype);
  const std::uint64_t expected = std::uint64_t{tile.width} * tile.height * tile.dims * sample;
  if (expected / tile.width / tile.height / tile.dims != sample || data.size() != expected) {
    fail(ErrorCode::SizeMismatch, "grid data is " + std::to_string(data.size()) + " bytes, sidecar declares " +
                                      std::to_string(expected));
  }
  tile.data.assign(data.begin(), data.end());
  if (big_endian) detail::swap_samples(tile.data, sample);
  return tile;
}

}  // namespace geodex
