#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::postproc {

// Per-object probability maps produced by one sigmoid calibration.
struct CalibratedStack {
    int width = 0;
    int height = 0;
    ScaleConfig config;
    std::map<int32_t, std::vector<double>> per_object; // row-major, values in [0,1]
};

// Final per-pixel arbitration result.
struct FinalLabeling {
    LabelRaster labels;
    // Mean probability over the pixels assigned to each object; objects that
    // won no pixels are absent.
    std::map<int32_t, double> confidence;
};

// p = sigmoid(scale * z + bias), elementwise per object.
CalibratedStack apply_scaling(const LogitStack& logits, const ScaleConfig& c);

// mask = (p >= threshold), threshold taken from the stack's config.
std::map<int32_t, BinaryMask> binarize(const CalibratedStack& stack);

// Pixelwise argmax over objects; the winner must reach the threshold or the
// pixel stays background. Probability ties go to the lower object ID.
FinalLabeling resolve_overlaps(const CalibratedStack& stack);

// Averages per-object probabilities across configs (order-independent, via
// per-pixel sorted summation), averages the thresholds, then arbitrates.
FinalLabeling fuse_configs(const std::vector<CalibratedStack>& stacks);

// Run file: a JSON list of scale configs with optional scenario tags.
std::vector<ScaleConfig> scale_configs_from_json(const std::string& text);
std::vector<ScaleConfig> load_scale_configs(const std::filesystem::path& path);
std::string scale_configs_to_json(const std::vector<ScaleConfig>& configs);

} // namespace voskit::postproc
