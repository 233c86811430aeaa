#pragma once

#include <utility>

#include "voskit/core/types.hpp"

namespace voskit::datakit {

// Aspect-preserving target shape: the longer side becomes target_long_side,
// the shorter side is rounded to the nearest pixel (at least 1).
std::pair<int, int> resized_dims(int width, int height, int target_long_side);

// Bilinear resampling with half-pixel centers and edge clamping.
FrameImage resize_bilinear(const FrameImage& frame, int out_width, int out_height);

// Nearest-neighbor resampling; only source labels can appear in the output.
LabelRaster resize_nearest(const LabelRaster& raster, int out_width, int out_height);

// Scales an aligned (frame, raster) pair so the longer side equals
// target_long_side: image bilinearly, labels nearest-neighbor.
std::pair<FrameImage, LabelRaster> unify_resolution(const FrameImage& frame,
                                                    const LabelRaster& raster,
                                                    int target_long_side);

} // namespace voskit::datakit
