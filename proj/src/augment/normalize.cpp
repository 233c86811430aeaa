#include "voskit/augment/normalize.hpp"

#include <cmath>
#include <stdexcept>

namespace voskit::augment {

void NormalizeParams::validate() const {
    for (int c = 0; c < 3; ++c) {
        if (!std::isfinite(mean[c])) {
            throw std::domain_error("normalize: mean must be finite");
        }
        if (!(std[c] > 0.0) || !std::isfinite(std[c])) {
            throw std::domain_error("normalize: std must be positive and finite");
        }
    }
}

FrameImage normalize(const FrameImage& frame, const NormalizeParams& p) {
    p.validate();
    if (frame.normalized) {
        throw std::logic_error("normalize: frame is already normalized");
    }
    FrameImage out = frame;
    const std::size_t pixels = out.pixel_count();
    for (std::size_t i = 0; i < pixels; ++i) {
        for (int c = 0; c < 3; ++c) {
            out.data[i * 3 + c] =
                static_cast<float>((out.data[i * 3 + c] - p.mean[c]) / p.std[c]);
        }
    }
    out.normalized = true;
    return out;
}

} // namespace voskit::augment
