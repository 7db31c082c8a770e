// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "geodex/error.hpp"
#include "geodex/formats.hpp"
#include "geodex/registry.hpp"
#include "json.hpp"

namespace geodex {
namespace {

using nlohmann::json;

[[noreturn]] void line_error(ErrorCode code, std::size_t line, const std::string& detail) {
  throw Error(code, detail, line);
}

double number_field(const json& obj, const char* name, std::size_t line) {
  const auto it = obj.find(name);
  if (it == obj.end() || !it->is_number()) line_error(ErrorCode::MalformedLine, line, std::string("'") + name + "' must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) line_error(ErrorCode::MalformedLine, line, std::string("'") + name + "' is not finite");
  return v;
}

std::int64_t time_field(const json& obj, const char* name, std::size_t line) {
  const auto it = obj.find(name);
  if (it == obj.end()) line_error(ErrorCode::BadTimestamp, line, std::string("missing '") + name + "'");
  if (it->is_number_integer()) return it->get<std::int64_t>();
  if (!it->is_string()) line_error(ErrorCode::BadTimestamp, line, std::string("'") + name + "' must be an ISO-8601 string");
  try {
    return parse_iso8601(it->get_ref<const std::string&>());
  } catch (const Error& e) {
    line_error(ErrorCode::BadTimestamp, line, e.what());
  }
}

BoundingBox footprint_field(const json& obj, std::size_t line) {
  if (const auto it = obj.find("bbox"); it != obj.end()) {
    if (!it->is_array() || it->size() != 4) line_error(ErrorCode::MalformedLine, line, "'bbox' must be [minx,miny,maxx,maxy]");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      if (!(*it)[i].is_number()) line_error(ErrorCode::MalformedLine, line, "'bbox' entries must be numbers");
      v[i] = (*it)[i].get<double>();
    }
    BoundingBox box;
    try {
      box = BoundingBox(v[0], v[1], v[2], v[3]);
    } catch (const Error& e) {
      line_error(ErrorCode::MalformedLine, line, e.what());
    }
    if (box.is_empty()) line_error(ErrorCode::MalformedLine, line, "'bbox' has zero area");
    return box;
  }
  const double lon = number_field(obj, "lon", line);
  const double lat = number_field(obj, "lat", line);
  const double size_m = number_field(obj, "size_m", line);
  if (!(std::abs(lat) < 90.0)) line_error(ErrorCode::MalformedLine, line, "'lat' must be inside (-90, 90)");
  if (!(size_m > 0.0)) line_error(ErrorCode::MalformedLine, line, "'size_m' must be positive");
  return patch_footprint(lon, lat, size_m);
}

json time_json(std::int64_t t) {
  if (t == std::numeric_limits<std::int64_t>::min() || t == std::numeric_limits<std::int64_t>::max()) return t;
  return format_iso8601(t);
}

}  // namespace

BoundingBox patch_footprint(double lon, double lat, double size_m) {
  const double dlat = size_m / kMetersPerDegree;
  const double dlon = size_m / (kMetersPerDegree * std::cos(lat * std::numbers::pi / 180.0));
  return {lon - dlon / 2.0, lat - dlat / 2.0, lon + dlon / 2.0, lat + dlat / 2.0};
}

std::vector<PatchRecord> parse_patch_table(std::istream& lines) {
  std::vector<PatchRecord> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(lines, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::exception& e) {
      line_error(ErrorCode::MalformedLine, line, e.what());
    }
    if (!obj.is_object()) line_error(ErrorCode::MalformedLine, line, "expected a JSON object");

    PatchRecord rec;
    if (const auto it = obj.find("id"); it != obj.end()) {
      if (!it->is_number_unsigned()) line_error(ErrorCode::MalformedLine, line, "'id' must be a non-negative integer");
      rec.id = it->get<std::uint64_t>();
    } else {
      rec.id = out.size();
    }

    const auto product = obj.find("product");
    if (product == obj.end() || !product->is_string()) line_error(ErrorCode::MalformedLine, line, "'product' must be a string");
    rec.product = product->get<std::string>();

    rec.footprint = footprint_field(obj, line);

    const std::int64_t start = time_field(obj, "t_start", line);
    const std::int64_t end = time_field(obj, "t_end", line);
    if (!(start < end)) line_error(ErrorCode::BadTimestamp, line, "t_start must precede t_end");
    rec.time = TimeInterval(start, end);

    const auto emb = obj.find("embedding");
    if (emb == obj.end() || !emb->is_array() || emb->empty()) {
      line_error(ErrorCode::MalformedLine, line, "'embedding' must be a non-empty array");
    }
    rec.embedding.reserve(emb->size());
    for (const auto& v : *emb) {
      if (!v.is_number()) line_error(ErrorCode::MalformedLine, line, "'embedding' values must be numbers");
      const float f = v.get<float>();
      if (!std::isfinite(f)) line_error(ErrorCode::MalformedLine, line, "'embedding' values must be finite");
      rec.embedding.push_back(f);
    }
    if (const auto* registered = lookup_product(rec.product);
        registered != nullptr && registered->dimensions != rec.embedding.size()) {
      line_error(ErrorCode::EmbeddingLengthMismatch, line,
                 rec.product + " has " + std::to_string(registered->dimensions) + " dimensions, line has " +
                     std::to_string(rec.embedding.size()));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_patch_table(std::span<const PatchRecord> records, std::ostream& out) {
  for (const auto& r : records) {
    json obj;
    obj["id"] = r.id;
    obj["bbox"] = {r.footprint.minx(), r.footprint.miny(), r.footprint.maxx(), r.footprint.maxy()};
    obj["t_start"] = time_json(r.time.start());
    obj["t_end"] = time_json(r.time.end());
    obj["product"] = r.product;
    obj["embedding"] = r.embedding;
    out << obj.dump() << '\n';
  }
}

}  // namespace geodex
