#include "voskit/datakit/resize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace voskit::datakit {

namespace {

void require_positive(int width, int height, const char* who) {
    if (width <= 0 || height <= 0) {
        throw std::domain_error(std::string(who) + ": zero-sized input");
    }
}

} // namespace

std::pair<int, int> resized_dims(int width, int height, int target_long_side) {
    require_positive(width, height, "resized_dims");
    if (target_long_side < 1) {
        throw std::domain_error("resized_dims: target_long_side must be >= 1");
    }
    const double t = static_cast<double>(target_long_side);
    if (width >= height) {
        const int h = std::max(1, static_cast<int>(std::lround(t * height / width)));
        return {target_long_side, h};
    }
    const int w = std::max(1, static_cast<int>(std::lround(t * width / height)));
    return {w, target_long_side};
}

FrameImage resize_bilinear(const FrameImage& frame, int out_width, int out_height) {
    require_positive(frame.width, frame.height, "resize_bilinear");
    require_positive(out_width, out_height, "resize_bilinear output");

    FrameImage out = make_frame(out_width, out_height);
    out.normalized = frame.normalized;

    const double sx_scale = static_cast<double>(frame.width) / out_width;
    const double sy_scale = static_cast<double>(frame.height) / out_height;

    for (int y = 0; y < out_height; ++y) {
        const double sy = (y + 0.5) * sy_scale - 0.5;
        const int y0 = static_cast<int>(std::floor(sy));
        const double fy = sy - y0;
        const int yc0 = std::clamp(y0, 0, frame.height - 1);
        const int yc1 = std::clamp(y0 + 1, 0, frame.height - 1);
        for (int x = 0; x < out_width; ++x) {
            const double sx = (x + 0.5) * sx_scale - 0.5;
            const int x0 = static_cast<int>(std::floor(sx));
            const double fx = sx - x0;
            const int xc0 = std::clamp(x0, 0, frame.width - 1);
            const int xc1 = std::clamp(x0 + 1, 0, frame.width - 1);
            for (int c = 0; c < 3; ++c) {
                const double v00 = frame.at(xc0, yc0, c);
                const double v10 = frame.at(xc1, yc0, c);
                const double v01 = frame.at(xc0, yc1, c);
                const double v11 = frame.at(xc1, yc1, c);
                const double v = v00 * (1.0 - fx) * (1.0 - fy) + v10 * fx * (1.0 - fy) +
                                 v01 * (1.0 - fx) * fy + v11 * fx * fy;
                out.data[(static_cast<std::size_t>(y) * out_width + x) * 3 + c] =
                    static_cast<float>(v);
            }
        }
    }
    return out;
}

LabelRaster resize_nearest(const LabelRaster& raster, int out_width, int out_height) {
    require_positive(raster.width, raster.height, "resize_nearest");
    require_positive(out_width, out_height, "resize_nearest output");

    LabelRaster out = make_raster(out_width, out_height);
    const double sx_scale = static_cast<double>(raster.width) / out_width;
    const double sy_scale = static_cast<double>(raster.height) / out_height;

    for (int y = 0; y < out_height; ++y) {
        const int sy = std::min(raster.height - 1,
                                static_cast<int>(std::floor((y + 0.5) * sy_scale)));
        for (int x = 0; x < out_width; ++x) {
            const int sx = std::min(raster.width - 1,
                                    static_cast<int>(std::floor((x + 0.5) * sx_scale)));
            out.labels[static_cast<std::size_t>(y) * out_width + x] = raster.at(sx, sy);
        }
    }
    return out;
}

std::pair<FrameImage, LabelRaster> unify_resolution(const FrameImage& frame,
                                                    const LabelRaster& raster,
                                                    int target_long_side) {
    if (frame.width != raster.width || frame.height != raster.height) {
        throw std::domain_error("unify_resolution: frame and raster dimensions differ");
    }
    const auto [w, h] = resized_dims(frame.width, frame.height, target_long_side);
    return {resize_bilinear(frame, w, h), resize_nearest(raster, w, h)};
}

} // namespace voskit::datakit
