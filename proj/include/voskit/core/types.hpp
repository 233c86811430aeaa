#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace voskit {

// Training clips carry at most this many object instances; rasters inside a
// clip must not hold label values above it.
inline constexpr int32_t kMaxClipInstances = 10;

// Row-major interleaved RGB frame, origin top-left; pixel (x, y) channel c
// lives at data[(y * width + x) * 3 + c]. Values are in [0, 1] after decode;
// once `normalized` is set they are unconstrained reals.
struct FrameImage {
    int width = 0;
    int height = 0;
    static constexpr int channels = 3;
    std::vector<float> data;
    bool normalized = false;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    float at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    float& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

FrameImage make_frame(int width, int height, float fill = 0.0f);

// Per-pixel object IDs, 0 = background. Same layout and origin as FrameImage.
struct LabelRaster {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
    int32_t& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }

    // Nonzero label values present anywhere in the raster.
    std::set<int32_t> object_ids() const;
};

LabelRaster make_raster(int width, int height, int32_t fill = 0);

// 0/1 occupancy mask for a single object.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t foreground_count() const;
    bool empty_mask() const { return foreground_count() == 0; }
};

BinaryMask make_mask(int width, int height, std::uint8_t fill = 0);

// Extracts the binary mask of one object id from a raster.
BinaryMask mask_of(const LabelRaster& raster, int32_t object_id);

struct ClipFrame {
    FrameImage image;
    LabelRaster labels;
    bool annotated = true;
};

// Ordered frames of one video segment; the unit of augmentation.
struct Clip {
    std::string sequence_id;
    std::vector<ClipFrame> frames;
    std::set<int32_t> object_ids;
    bool padded = false;

    void recompute_object_ids();
};

// Per-object raw score maps for one frame, before calibration.
struct LogitStack {
    int width = 0;
    int height = 0;
    std::map<int32_t, std::vector<float>> per_object;
};

// Sigmoid calibration triple. The published operating point is scale 7.5,
// bias -4.0 at threshold 0.5.
struct ScaleConfig {
    double sigmoid_scale = 7.5;
    double sigmoid_bias = -4.0;
    double threshold = 0.5;
    std::string tag;

    void validate() const; // throws std::domain_error
};

// Multi-task loss weights (cross-entropy, dice, feature similarity, mask IoU).
struct LossWeights {
    double ce = 1.0;
    double dice = 1.0;
    double sim = 1.0;
    double mask_iou = 1.0;

    void validate() const; // throws std::domain_error
};

struct LossBreakdown {
    double ce = 0.0;
    double dice = 0.0;
    double sim = 0.0;
    double mask_iou = 0.0;
    double total = 0.0;

    static LossBreakdown from_components(double ce, double dice, double sim,
                                         double mask_iou, const LossWeights& w);
};

// Memory/query feature vectors entering the similarity loss.
struct FeaturePair {
    std::vector<double> memory_feature;
    std::vector<double> query_feature;
};

// ---------------------------------------------------------------------------
// Metric report

struct TriScore {
    double j = 0.0;
    double f = 0.0;
    double jf = 0.0;
};

struct FrameScore {
    std::string frame;
    double j = 0.0;
    double f = 0.0;
};

// One (sequence, object) trajectory: per-frame scores plus their means.
struct TrackScore {
    std::string sequence_id;
    int32_t object_id = 0;
    std::vector<FrameScore> frames;
    double j = 0.0;
    double f = 0.0;
    double jf = 0.0;
};

struct MetricReport {
    std::vector<TrackScore> tracks; // sorted by (sequence_id, object_id)
    std::map<std::string, TriScore> per_sequence;
    TriScore aggregate;
    std::size_t frames_scored = 0;
    std::size_t objects_scored = 0;
    std::vector<std::string> warnings;
};

// Arithmetic mean of a (J, F) pair, the ranking metric.
// Throws std::domain_error unless both inputs lie in [0, 1].
double mean_jf(double j, double f);

struct ValidationResult {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks the Clip invariants. Violations come back as data, never as throws.
ValidationResult validate_clip(const Clip& clip);

} // namespace voskit
