#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voskit/augment/color.hpp"
#include "voskit/augment/geometry.hpp"
#include "voskit/augment/normalize.hpp"
#include "voskit/core/types.hpp"

namespace voskit::augment {

// Stage toggles plus the sampling ranges for one augmentation policy.
// Serialized as the "geometry"/"color"/"normalize" blocks of the shared JSON
// config document.
struct AugmentConfig {
    bool geom_enabled = true;
    GeomRanges geom;
    bool color_enabled = true;
    ColorRanges color;
    bool normalize_enabled = true;
    NormalizeParams normalize;

    void validate() const;
};

AugmentConfig augment_config_from_json(const std::string& text); // throws config_error
std::string augment_config_to_json(const AugmentConfig& config);
AugmentConfig load_augment_config(const std::filesystem::path& path);

// Everything sampled while augmenting one clip; enough to replay the run.
struct Provenance {
    std::string sequence_id;
    uint64_t seed = 0;
    bool geom_enabled = false;
    GeomParams geom;
    std::vector<Affine> frame_matrices; // one per frame, identical by construction
    bool color_enabled = false;
    ColorParams color;
    std::vector<FrameColorDraw> color_draws; // one per frame
    bool normalize_enabled = false;
    NormalizeParams normalize;
};

std::string provenance_to_json(const Provenance& p);

struct AugmentedClip {
    Clip clip;
    Provenance provenance;
};

// Fixed stage order: geometry, color, normalization. Stage seeds derive from
// `seed` with the labels "geom", "color" and "color-draws", so equal
// (clip, seed, config) triples reproduce bit-identical outputs.
AugmentedClip augment_pipeline(const Clip& clip, uint64_t seed, const AugmentConfig& config);

} // namespace voskit::augment
