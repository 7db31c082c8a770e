// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geodex/raster.hpp"

namespace geodex {

/// Returns a north-up copy of `tile` (e < 0). South-up inputs (e > 0) get
/// their rows reversed, e negated and f moved to the opposite edge, so the
/// world footprint and the value at every world coordinate are unchanged.
/// Rotated transforms throw UnsupportedRotation.
RasterTile normalize_orientation(RasterTile tile);

}  // namespace geodex
