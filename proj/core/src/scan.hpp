// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geodex/embed.hpp"

namespace geodex::detail {

/// Exact ranked scan over `rows` of `corpus` (every row when `rows` is null).
std::vector<Hit> ranked_scan(std::span<const float> query, const VectorSet& corpus,
                             const std::vector<std::uint32_t>* rows, std::uint32_t k, Metric metric, unsigned jobs);

}  // namespace geodex::detail
