#pragma once

#include <cstdint>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::augment {

enum class ColorMode { consistent, inconsistent };

// Which frames turn grayscale when the grayscale flag fires.
enum class GrayscaleSelection { all_frames, independent, one_per_clip };

struct ColorRanges {
    double factor_lo = 0.7; // brightness/contrast/saturation
    double factor_hi = 1.3;
    double grayscale_prob = 0.05;
    double inconsistent_prob = 0.2;
    GrayscaleSelection selection = GrayscaleSelection::all_frames;

    void validate() const; // throws std::domain_error
};

// Clip-level color draw. The ranges ride along so inconsistent mode can
// redraw per-frame factors from the same distribution.
struct ColorParams {
    double brightness = 1.0;
    double contrast = 1.0;
    double saturation = 1.0;
    bool grayscale = false;
    ColorMode mode = ColorMode::consistent;
    ColorRanges ranges;

    void validate() const; // throws std::domain_error
};

// What one frame actually received.
struct FrameColorDraw {
    double brightness = 1.0;
    double contrast = 1.0;
    double saturation = 1.0;
    bool grayscale = false;
};

struct ColorOutcome {
    Clip clip;
    std::vector<FrameColorDraw> draws; // one per frame
};

// Draw order: brightness, contrast, saturation, grayscale flag, mode flag.
ColorParams sample_color(uint64_t seed, const ColorRanges& ranges);

// Adjusts every frame's image; rasters pass through untouched. Factors apply
// in the order brightness, contrast, saturation, then grayscale, each result
// clamped to [0, 1]. A factor of exactly 1 leaves values bit-identical.
//
// Draw order against Rng(seed): in inconsistent mode, per frame in clip
// order, (brightness, contrast, saturation); afterwards the grayscale
// selection draws (one Bernoulli per frame for `independent`, a single index
// for `one_per_clip`, none for `all_frames`).
ColorOutcome apply_color(const Clip& clip, const ColorParams& p, uint64_t seed);

// Per-frame primitive used by apply_color.
FrameImage adjust_frame_color(const FrameImage& frame, const FrameColorDraw& draw);

} // namespace voskit::augment
