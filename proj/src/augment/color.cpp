#include "voskit/augment/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voskit/util/rng.hpp"

namespace voskit::augment {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

double luma(double r, double g, double b) { return kLumaR * r + kLumaG * g + kLumaB * b; }

void require_factor(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string("color: ") + name + " must be positive and finite");
    }
}

void require_prob(double v, const char* name) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
        throw std::domain_error(std::string("color: ") + name + " must lie in [0, 1]");
    }
}

} // namespace

void ColorRanges::validate() const {
    require_factor(factor_lo, "factor_lo");
    if (!(factor_hi >= factor_lo) || !std::isfinite(factor_hi)) {
        throw std::domain_error("color: need factor_lo <= factor_hi < inf");
    }
    require_prob(grayscale_prob, "grayscale_prob");
    require_prob(inconsistent_prob, "inconsistent_prob");
}

void ColorParams::validate() const {
    ranges.validate();
    require_factor(brightness, "brightness");
    require_factor(contrast, "contrast");
    require_factor(saturation, "saturation");
}

ColorParams sample_color(uint64_t seed, const ColorRanges& ranges) {
    ranges.validate();
    util::Rng rng(seed);
    ColorParams p;
    p.brightness = rng.uniform(ranges.factor_lo, ranges.factor_hi);
    p.contrast = rng.uniform(ranges.factor_lo, ranges.factor_hi);
    p.saturation = rng.uniform(ranges.factor_lo, ranges.factor_hi);
    p.grayscale = rng.bernoulli(ranges.grayscale_prob);
    p.mode = rng.bernoulli(ranges.inconsistent_prob) ? ColorMode::inconsistent
                                                     : ColorMode::consistent;
    p.ranges = ranges;
    return p;
}

FrameImage adjust_frame_color(const FrameImage& frame, const FrameColorDraw& draw) {
    if (frame.normalized) {
        throw std::logic_error("adjust_frame_color: frame is already normalized");
    }
    require_factor(draw.brightness, "brightness");
    require_factor(draw.contrast, "contrast");
    require_factor(draw.saturation, "saturation");

    FrameImage out = frame;
    const std::size_t pixels = out.pixel_count();
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };

    if (draw.brightness != 1.0) {
        for (std::size_t i = 0; i < out.data.size(); ++i) {
            out.data[i] = static_cast<float>(clamp01(out.data[i] * draw.brightness));
        }
    }
    if (draw.contrast != 1.0) {
        // Pull toward the frame's mean luma.
        double mean = 0.0;
        for (std::size_t i = 0; i < pixels; ++i) {
            mean += luma(out.data[i * 3], out.data[i * 3 + 1], out.data[i * 3 + 2]);
        }
        mean /= static_cast<double>(pixels);
        for (std::size_t i = 0; i < out.data.size(); ++i) {
            out.data[i] = static_cast<float>(clamp01(mean + draw.contrast * (out.data[i] - mean)));
        }
    }
    if (draw.saturation != 1.0) {
        // Pull each pixel toward its own luma.
        for (std::size_t i = 0; i < pixels; ++i) {
            const double g = luma(out.data[i * 3], out.data[i * 3 + 1], out.data[i * 3 + 2]);
            for (int c = 0; c < 3; ++c) {
                out.data[i * 3 + c] = static_cast<float>(
                    clamp01(g + draw.saturation * (out.data[i * 3 + c] - g)));
            }
        }
    }
    if (draw.grayscale) {
        for (std::size_t i = 0; i < pixels; ++i) {
            const double g =
                clamp01(luma(out.data[i * 3], out.data[i * 3 + 1], out.data[i * 3 + 2]));
            const float gf = static_cast<float>(g);
            out.data[i * 3] = gf;
            out.data[i * 3 + 1] = gf;
            out.data[i * 3 + 2] = gf;
        }
    }
    return out;
}

ColorOutcome apply_color(const Clip& clip, const ColorParams& p, uint64_t seed) {
    p.validate();
    for (const ClipFrame& frame : clip.frames) {
        if (frame.image.normalized) {
            throw std::logic_error("apply_color: clip is already normalized");
        }
    }

    util::Rng rng(seed);
    const std::size_t n = clip.frames.size();
    std::vector<FrameColorDraw> draws(n);

    for (std::size_t i = 0; i < n; ++i) {
        if (p.mode == ColorMode::inconsistent) {
            draws[i].brightness = rng.uniform(p.ranges.factor_lo, p.ranges.factor_hi);
            draws[i].contrast = rng.uniform(p.ranges.factor_lo, p.ranges.factor_hi);
            draws[i].saturation = rng.uniform(p.ranges.factor_lo, p.ranges.factor_hi);
        } else {
            draws[i].brightness = p.brightness;
            draws[i].contrast = p.contrast;
            draws[i].saturation = p.saturation;
        }
    }

    switch (p.ranges.selection) {
    case GrayscaleSelection::all_frames:
        for (std::size_t i = 0; i < n; ++i) draws[i].grayscale = p.grayscale;
        break;
    case GrayscaleSelection::independent:
        for (std::size_t i = 0; i < n; ++i) {
            draws[i].grayscale = rng.bernoulli(p.ranges.grayscale_prob);
        }
        break;
    case GrayscaleSelection::one_per_clip:
        if (p.grayscale && n > 0) {
            draws[rng.below(n)].grayscale = true;
        }
        break;
    }

    ColorOutcome outcome;
    outcome.clip.sequence_id = clip.sequence_id;
    outcome.clip.padded = clip.padded;
    for (std::size_t i = 0; i < n; ++i) {
        ClipFrame frame;
        frame.annotated = clip.frames[i].annotated;
        frame.labels = clip.frames[i].labels;
        frame.image = adjust_frame_color(clip.frames[i].image, draws[i]);
        outcome.clip.frames.push_back(std::move(frame));
    }
    outcome.clip.object_ids = clip.object_ids;
    outcome.draws = std::move(draws);
    return outcome;
}

} // namespace voskit::augment
