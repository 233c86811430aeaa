#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "voskit/core/types.hpp"
#include "voskit/datakit/manifest.hpp"

namespace voskit::datakit {

// A sampled training clip plus enough bookkeeping to trace it back to disk.
struct ClipSample {
    Clip clip;
    // Indices into the record's annotated-frame list, one per clip frame.
    std::vector<std::size_t> frame_indices;
    // Source object ID -> clip label for every kept instance.
    std::map<int32_t, int32_t> relabel_map;
    // Instances relabeled to background by the instance cap.
    std::vector<int32_t> dropped_ids;
    bool padded = false;
};

// Draws a contiguous run of clip_len annotated frames starting at a uniform
// random index. Shorter sequences repeat their last annotated frame and set
// the pad flag. When more than max_objects instances appear, the largest by
// total pixel area are kept and the rest become background; kept IDs are
// renumbered to 1..k only when one of them would exceed the per-clip label
// bound.
ClipSample sample_clip(const SequenceRecord& record, int clip_len, int max_objects,
                       uint64_t seed);

} // namespace voskit::datakit
