#pragma once

#include <cstdint>
#include <utility>

#include "voskit/core/types.hpp"

namespace voskit::augment {

// Row-vector affine map: (x, y) -> (a*x + b*y + tx, c*x + d*y + ty), pixel
// coordinates with y growing downward.
struct Affine {
    double a = 1.0, b = 0.0, tx = 0.0;
    double c = 0.0, d = 1.0, ty = 0.0;

    std::pair<double, double> apply(double x, double y) const {
        return {a * x + b * y + tx, c * x + d * y + ty};
    }
    double det() const { return a * d - b * c; }

    static Affine identity() { return {}; }
    Affine then(const Affine& next) const; // next ∘ this
    Affine inverse() const;                // throws std::invalid_argument when degenerate
};

bool operator==(const Affine& lhs, const Affine& rhs);

struct GeomRanges {
    double rotation_max_deg = 20.0; // hard cap 30
    double shear_max_deg = 10.0;    // hard cap 15
    double scale_min = 0.75;
    double scale_max = 1.25;
    // 0/0 means "match the input size".
    int output_width = 0;
    int output_height = 0;

    void validate() const; // throws std::domain_error
};

// One geometric draw, shared by every frame of a clip.
struct GeomParams {
    bool hflip = false;
    double rotation_deg = 0.0;
    double shear_x_deg = 0.0;
    double shear_y_deg = 0.0;
    double scale = 1.0;
    int output_width = 0; // 0 = match input
    int output_height = 0;

    void validate() const; // throws std::domain_error
};

// Draw order (fixed, part of the reproducibility contract):
// hflip, rotation, shear_x, shear_y, scale.
GeomParams sample_geom(uint64_t seed, const GeomRanges& ranges);

// Forward map taking input pixel centers to output pixel centers:
// translate input center to origin, flip, scale, shear, rotate, translate to
// the output center.
Affine affine_matrix(const GeomParams& p, int in_width, int in_height, int out_width,
                     int out_height);

// Samples the source image through the inverse map. Out-of-bounds reads are
// zero (images keep their normalization flag).
FrameImage warp_bilinear(const FrameImage& frame, const Affine& forward, int out_width,
                         int out_height);

// Nearest-neighbor variant for label rasters; out-of-bounds is background.
LabelRaster warp_nearest(const LabelRaster& raster, const Affine& forward, int out_width,
                         int out_height);

// Applies one affine draw to every frame of the clip.
Clip apply_geom(const Clip& clip, const GeomParams& p);

} // namespace voskit::augment
