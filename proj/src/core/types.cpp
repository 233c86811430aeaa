#include "voskit/core/types.hpp"

#include <cmath>
#include <stdexcept>

namespace voskit {

FrameImage make_frame(int width, int height, float fill) {
    FrameImage f;
    f.width = width;
    f.height = height;
    f.data.assign(static_cast<std::size_t>(width) * height * 3, fill);
    return f;
}

LabelRaster make_raster(int width, int height, int32_t fill) {
    LabelRaster r;
    r.width = width;
    r.height = height;
    r.labels.assign(static_cast<std::size_t>(width) * height, fill);
    return r;
}

BinaryMask make_mask(int width, int height, std::uint8_t fill) {
    BinaryMask m;
    m.width = width;
    m.height = height;
    m.data.assign(static_cast<std::size_t>(width) * height, fill);
    return m;
}

std::set<int32_t> LabelRaster::object_ids() const {
    std::set<int32_t> ids;
    for (int32_t v : labels) {
        if (v != 0) ids.insert(v);
    }
    return ids;
}

std::size_t BinaryMask::foreground_count() const {
    std::size_t n = 0;
    for (std::uint8_t v : data) n += (v != 0);
    return n;
}

BinaryMask mask_of(const LabelRaster& raster, int32_t object_id) {
    BinaryMask m = make_mask(raster.width, raster.height);
    for (std::size_t i = 0; i < raster.labels.size(); ++i) {
        m.data[i] = raster.labels[i] == object_id ? 1 : 0;
    }
    return m;
}

void Clip::recompute_object_ids() {
    object_ids.clear();
    for (const ClipFrame& fr : frames) {
        for (int32_t v : fr.labels.labels) {
            if (v != 0) object_ids.insert(v);
        }
    }
}

void ScaleConfig::validate() const {
    if (!(sigmoid_scale > 0.0) || !std::isfinite(sigmoid_scale)) {
        throw std::domain_error("ScaleConfig: sigmoid_scale must be positive and finite");
    }
    if (!std::isfinite(sigmoid_bias)) {
        throw std::domain_error("ScaleConfig: sigmoid_bias must be finite");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::domain_error("ScaleConfig: threshold must lie in (0, 1)");
    }
}

void LossWeights::validate() const {
    const double ws[] = {ce, dice, sim, mask_iou};
    double sum = 0.0;
    for (double w : ws) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::domain_error("LossWeights: weights must be finite and non-negative");
        }
        sum += w;
    }
    if (!(sum > 0.0)) {
        throw std::domain_error("LossWeights: at least one weight must be positive");
    }
}

LossBreakdown LossBreakdown::from_components(double ce, double dice, double sim,
                                             double mask_iou, const LossWeights& w) {
    w.validate();
    LossBreakdown b;
    b.ce = ce;
    b.dice = dice;
    b.sim = sim;
    b.mask_iou = mask_iou;
    b.total = w.ce * ce + w.dice * dice + w.sim * sim + w.mask_iou * mask_iou;
    return b;
}

double mean_jf(double j, double f) {
    if (!(j >= 0.0 && j <= 1.0) || !(f >= 0.0 && f <= 1.0)) {
        throw std::domain_error("mean_jf: inputs must lie in [0, 1]");
    }
    return (j + f) / 2.0;
}

ValidationResult validate_clip(const Clip& clip) {
    ValidationResult result;
    auto flag = [&result](std::string msg) {
        result.ok = false;
        result.violations.push_back(std::move(msg));
    };

    if (clip.frames.empty()) {
        flag("empty clip");
        return result;
    }

    const int w = clip.frames.front().image.width;
    const int h = clip.frames.front().image.height;
    std::set<int32_t> seen;

    for (std::size_t i = 0; i < clip.frames.size(); ++i) {
        const ClipFrame& fr = clip.frames[i];
        const std::string where = " at frame " + std::to_string(i);

        if (fr.image.width != w || fr.image.height != h ||
            fr.labels.width != w || fr.labels.height != h) {
            flag("dimension mismatch" + where);
            continue;
        }
        if (fr.image.data.size() != fr.image.pixel_count() * 3) {
            flag("image buffer size mismatch" + where);
            continue;
        }
        if (fr.labels.labels.size() != fr.labels.pixel_count()) {
            flag("label buffer size mismatch" + where);
            continue;
        }

        bool finite_ok = true;
        for (float v : fr.image.data) {
            if (!std::isfinite(v)) {
                finite_ok = false;
                break;
            }
        }
        if (!finite_ok) flag("non-finite image value" + where);

        bool over = false;
        bool negative = false;
        for (int32_t v : fr.labels.labels) {
            if (v > kMaxClipInstances) over = true;
            if (v < 0) negative = true;
            if (v != 0) seen.insert(v);
        }
        if (over) {
            flag("instance count exceeds " + std::to_string(kMaxClipInstances) + where);
        }
        if (negative) flag("negative label value" + where);
    }

    if (seen != clip.object_ids) {
        flag("object_ids does not equal the union of nonzero labels");
    }
    return result;
}

} // namespace voskit
