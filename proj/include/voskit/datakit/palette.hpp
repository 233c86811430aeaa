#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::datakit {

struct PaletteColor {
    uint8_t r = 0;
    uint8_t g = 0;
    uint8_t b = 0;
};

// 256-entry palette used for mask PNGs; index 0 is black (background) and the
// colors are stable across runs so encoded bytes are reproducible.
const std::array<PaletteColor, 256>& mask_palette();

// Indexed-color PNG -> label raster; palette index k is object ID k.
// Rejects non-palette PNGs with format_error.
LabelRaster decode_palette_mask(const std::vector<uint8_t>& png_bytes);

// Label raster -> indexed-color PNG with index = object ID.
// Labels above 255 cannot be represented and raise range_error.
std::vector<uint8_t> encode_palette_mask(const LabelRaster& raster);

} // namespace voskit::datakit
