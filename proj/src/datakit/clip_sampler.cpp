#include "voskit/datakit/clip_sampler.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

#include "voskit/core/errors.hpp"
#include "voskit/datakit/image_io.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/util/rng.hpp"

namespace voskit::datakit {

namespace fs = std::filesystem;

namespace {

// Annotated frames only: (frame path, mask path) matched by basename.
std::vector<std::pair<std::string, std::string>> annotated_pairs(const SequenceRecord& record) {
    std::map<std::string, std::string> frame_by_stem;
    for (const std::string& f : record.frame_paths) {
        frame_by_stem[fs::path(f).stem().string()] = f;
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& m : record.mask_paths) {
        const auto it = frame_by_stem.find(fs::path(m).stem().string());
        if (it == frame_by_stem.end()) {
            throw format_error("sample_clip: annotation " + m + " has no matching frame");
        }
        out.emplace_back(it->second, m);
    }
    return out;
}

} // namespace

ClipSample sample_clip(const SequenceRecord& record, int clip_len, int max_objects,
                       uint64_t seed) {
    if (clip_len < 1) throw std::invalid_argument("sample_clip: clip_len must be >= 1");
    if (max_objects < 1) throw std::invalid_argument("sample_clip: max_objects must be >= 1");

    const auto pairs = annotated_pairs(record);
    if (pairs.empty()) {
        throw std::invalid_argument("sample_clip: record has no annotated frames");
    }

    ClipSample sample;
    util::Rng rng(seed);
    const std::size_t available = pairs.size();
    if (available >= static_cast<std::size_t>(clip_len)) {
        const std::size_t start = rng.below(available - clip_len + 1);
        for (int i = 0; i < clip_len; ++i) {
            sample.frame_indices.push_back(start + i);
        }
    } else {
        for (std::size_t i = 0; i < available; ++i) sample.frame_indices.push_back(i);
        while (sample.frame_indices.size() < static_cast<std::size_t>(clip_len)) {
            sample.frame_indices.push_back(available - 1);
        }
        sample.padded = true;
    }

    Clip& clip = sample.clip;
    clip.sequence_id = record.sequence_id;
    clip.padded = sample.padded;
    for (std::size_t idx : sample.frame_indices) {
        const auto& [frame_path, mask_path] = pairs[idx];
        ClipFrame frame;
        frame.image = load_frame_image(frame_path);
        frame.labels = decode_palette_mask(read_binary_file(mask_path));
        if (frame.labels.width != frame.image.width ||
            frame.labels.height != frame.image.height) {
            throw format_error("sample_clip: annotation size differs from frame: " + mask_path);
        }
        if (!clip.frames.empty() && (frame.image.width != clip.frames.front().image.width ||
                                     frame.image.height != clip.frames.front().image.height)) {
            throw format_error("sample_clip: frame size changes mid-sequence: " + frame_path);
        }
        clip.frames.push_back(std::move(frame));
    }

    // Total pixel area per instance across the selected frames.
    std::map<int32_t, std::uint64_t> areas;
    for (const ClipFrame& frame : clip.frames) {
        for (int32_t v : frame.labels.labels) {
            if (v > 0) ++areas[v];
        }
    }

    std::vector<std::pair<int32_t, std::uint64_t>> ranked(areas.begin(), areas.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::set<int32_t> kept;
    for (const auto& [id, area] : ranked) {
        if (kept.size() < static_cast<std::size_t>(max_objects)) {
            kept.insert(id);
        } else {
            sample.dropped_ids.push_back(id);
        }
    }
    std::sort(sample.dropped_ids.begin(), sample.dropped_ids.end());

    const bool renumber = !kept.empty() && *kept.rbegin() > kMaxClipInstances;
    int32_t next = 1;
    for (int32_t id : kept) {
        sample.relabel_map[id] = renumber ? next++ : id;
    }

    if (!sample.dropped_ids.empty() || renumber) {
        for (ClipFrame& frame : clip.frames) {
            for (int32_t& v : frame.labels.labels) {
                if (v == 0) continue;
                const auto it = sample.relabel_map.find(v);
                v = (it == sample.relabel_map.end()) ? 0 : it->second;
            }
        }
    }
    clip.recompute_object_ids();
    return sample;
}

} // namespace voskit::datakit
