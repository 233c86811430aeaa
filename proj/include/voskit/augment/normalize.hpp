#pragma once

#include <array>

#include "voskit/core/types.hpp"

namespace voskit::augment {

// Channel-wise standardization constants. Defaults are the usual RGB values
// for models pretrained on large natural-image corpora.
struct NormalizeParams {
    std::array<double, 3> mean = {0.485, 0.456, 0.406};
    std::array<double, 3> std = {0.229, 0.224, 0.225};

    void validate() const; // throws std::domain_error
};

// out[c] = (in[c] - mean[c]) / std[c]; flips the normalization flag.
// Normalizing twice is a logic error.
FrameImage normalize(const FrameImage& frame, const NormalizeParams& p);

} // namespace voskit::augment
