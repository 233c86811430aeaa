#include "voskit/augment/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "voskit/util/rng.hpp"

namespace voskit::augment {

namespace {

constexpr double kRotationCapDeg = 30.0;
constexpr double kShearCapDeg = 15.0;
constexpr double kDegenerateDet = 1e-9;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void resolve_output(const GeomParams& p, int in_width, int in_height, int& out_width,
                    int& out_height) {
    out_width = p.output_width > 0 ? p.output_width : in_width;
    out_height = p.output_height > 0 ? p.output_height : in_height;
}

} // namespace

Affine Affine::then(const Affine& next) const {
    Affine r;
    r.a = next.a * a + next.b * c;
    r.b = next.a * b + next.b * d;
    r.tx = next.a * tx + next.b * ty + next.tx;
    r.c = next.c * a + next.d * c;
    r.d = next.c * b + next.d * d;
    r.ty = next.c * tx + next.d * ty + next.ty;
    return r;
}

Affine Affine::inverse() const {
    const double determinant = det();
    if (std::abs(determinant) < kDegenerateDet) {
        throw std::invalid_argument("affine: degenerate matrix");
    }
    Affine r;
    r.a = d / determinant;
    r.b = -b / determinant;
    r.c = -c / determinant;
    r.d = a / determinant;
    r.tx = -(r.a * tx + r.b * ty);
    r.ty = -(r.c * tx + r.d * ty);
    return r;
}

bool operator==(const Affine& lhs, const Affine& rhs) {
    return lhs.a == rhs.a && lhs.b == rhs.b && lhs.tx == rhs.tx && lhs.c == rhs.c &&
           lhs.d == rhs.d && lhs.ty == rhs.ty;
}

void GeomRanges::validate() const {
    if (!(rotation_max_deg >= 0.0) || rotation_max_deg > kRotationCapDeg) {
        throw std::domain_error("geometry ranges: rotation_max_deg outside [0, 30]");
    }
    if (!(shear_max_deg >= 0.0) || shear_max_deg > kShearCapDeg) {
        throw std::domain_error("geometry ranges: shear_max_deg outside [0, 15]");
    }
    if (!(scale_min > 0.0) || !(scale_max >= scale_min) || !std::isfinite(scale_max)) {
        throw std::domain_error("geometry ranges: need 0 < scale_min <= scale_max < inf");
    }
    if ((output_width > 0) != (output_height > 0) || output_width < 0 || output_height < 0) {
        throw std::domain_error("geometry ranges: output size must be 0/0 or positive/positive");
    }
}

void GeomParams::validate() const {
    if (!(std::abs(rotation_deg) <= kRotationCapDeg)) {
        throw std::domain_error("geometry params: |rotation_deg| exceeds 30");
    }
    if (!(std::abs(shear_x_deg) <= kShearCapDeg) || !(std::abs(shear_y_deg) <= kShearCapDeg)) {
        throw std::domain_error("geometry params: |shear| exceeds 15");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("geometry params: scale must be positive and finite");
    }
    if ((output_width > 0) != (output_height > 0) || output_width < 0 || output_height < 0) {
        throw std::domain_error("geometry params: output size must be 0/0 or positive/positive");
    }
}

GeomParams sample_geom(uint64_t seed, const GeomRanges& ranges) {
    ranges.validate();
    util::Rng rng(seed);
    GeomParams p;
    p.hflip = rng.bernoulli(0.5);
    p.rotation_deg = rng.uniform(-ranges.rotation_max_deg, ranges.rotation_max_deg);
    p.shear_x_deg = rng.uniform(-ranges.shear_max_deg, ranges.shear_max_deg);
    p.shear_y_deg = rng.uniform(-ranges.shear_max_deg, ranges.shear_max_deg);
    p.scale = rng.uniform(ranges.scale_min, ranges.scale_max);
    p.output_width = ranges.output_width;
    p.output_height = ranges.output_height;
    return p;
}

Affine affine_matrix(const GeomParams& p, int in_width, int in_height, int out_width,
                     int out_height) {
    p.validate();
    if (in_width < 1 || in_height < 1 || out_width < 1 || out_height < 1) {
        throw std::domain_error("affine_matrix: non-positive dimensions");
    }

    const Affine to_origin{1.0, 0.0, -(in_width - 1) / 2.0, 0.0, 1.0, -(in_height - 1) / 2.0};
    const Affine flip{p.hflip ? -1.0 : 1.0, 0.0, 0.0, 0.0, 1.0, 0.0};
    const Affine scale{p.scale, 0.0, 0.0, 0.0, p.scale, 0.0};
    const Affine shear{1.0, std::tan(deg_to_rad(p.shear_x_deg)), 0.0,
                       std::tan(deg_to_rad(p.shear_y_deg)), 1.0, 0.0};
    const double theta = deg_to_rad(p.rotation_deg);
    const Affine rotate{std::cos(theta), std::sin(theta), 0.0,
                        -std::sin(theta), std::cos(theta), 0.0};
    const Affine to_center{1.0, 0.0, (out_width - 1) / 2.0, 0.0, 1.0, (out_height - 1) / 2.0};

    return to_origin.then(flip).then(scale).then(shear).then(rotate).then(to_center);
}

FrameImage warp_bilinear(const FrameImage& frame, const Affine& forward, int out_width,
                         int out_height) {
    if (out_width < 1 || out_height < 1) {
        throw std::domain_error("warp_bilinear: non-positive output size");
    }
    const Affine inv = forward.inverse();
    FrameImage out = make_frame(out_width, out_height);
    out.normalized = frame.normalized;

    auto sample = [&frame](int x, int y, int c) -> double {
        if (x < 0 || x >= frame.width || y < 0 || y >= frame.height) return 0.0;
        return frame.at(x, y, c);
    };

    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const auto [sx, sy] = inv.apply(x, y);
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            const double fx = sx - x0;
            const double fy = sy - y0;
            for (int c = 0; c < 3; ++c) {
                const double v = sample(x0, y0, c) * (1.0 - fx) * (1.0 - fy) +
                                 sample(x0 + 1, y0, c) * fx * (1.0 - fy) +
                                 sample(x0, y0 + 1, c) * (1.0 - fx) * fy +
                                 sample(x0 + 1, y0 + 1, c) * fx * fy;
                out.data[(static_cast<std::size_t>(y) * out_width + x) * 3 + c] =
                    static_cast<float>(v);
            }
        }
    }
    return out;
}

LabelRaster warp_nearest(const LabelRaster& raster, const Affine& forward, int out_width,
                         int out_height) {
    if (out_width < 1 || out_height < 1) {
        throw std::domain_error("warp_nearest: non-positive output size");
    }
    const Affine inv = forward.inverse();
    LabelRaster out = make_raster(out_width, out_height);

    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const auto [sx, sy] = inv.apply(x, y);
            const int xs = static_cast<int>(std::floor(sx + 0.5));
            const int ys = static_cast<int>(std::floor(sy + 0.5));
            if (xs < 0 || xs >= raster.width || ys < 0 || ys >= raster.height) continue;
            out.labels[static_cast<std::size_t>(y) * out_width + x] = raster.at(xs, ys);
        }
    }
    return out;
}

Clip apply_geom(const Clip& clip, const GeomParams& p) {
    const ValidationResult check = validate_clip(clip);
    if (!check.ok) {
        throw std::invalid_argument("apply_geom: invalid clip: " + check.violations.front());
    }
    const int in_width = clip.frames.front().image.width;
    const int in_height = clip.frames.front().image.height;
    int out_width = 0;
    int out_height = 0;
    resolve_output(p, in_width, in_height, out_width, out_height);

    const Affine m = affine_matrix(p, in_width, in_height, out_width, out_height);
    if (std::abs(m.det()) < kDegenerateDet) {
        throw std::invalid_argument("apply_geom: degenerate transform");
    }

    Clip out;
    out.sequence_id = clip.sequence_id;
    out.padded = clip.padded;
    for (const ClipFrame& frame : clip.frames) {
        ClipFrame warped;
        warped.annotated = frame.annotated;
        warped.image = warp_bilinear(frame.image, m, out_width, out_height);
        warped.labels = warp_nearest(frame.labels, m, out_width, out_height);
        out.frames.push_back(std::move(warped));
    }
    out.recompute_object_ids();
    return out;
}

} // namespace voskit::augment
