#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::datakit {

// One ingested video sequence. Paths are stored as given on the command
// line joined with the layout-relative part, so the manifest is usable from
// the directory it was built in.
struct SequenceRecord {
    std::string sequence_id;     // "<dataset>/<sequence name>"
    std::string source_dataset;
    std::vector<std::string> frame_paths; // temporal order
    std::vector<std::string> mask_paths;  // subset of frames, by basename
    int native_width = 0;
    int native_height = 0;
    std::set<int32_t> object_ids;

    std::size_t frame_count() const { return frame_paths.size(); }
};

struct ManifestTotals {
    std::uint64_t videos = 0;
    std::uint64_t instances = 0;
    std::uint64_t annotated_frames = 0;
};

struct Manifest {
    int schema_version = 1;
    int target_long_side = 0;
    std::vector<SequenceRecord> records; // sorted by sequence_id
    ManifestTotals totals;
};

struct DatasetRoot {
    std::string name;
    std::filesystem::path path;
};

struct IngestOptions {
    int jobs = 1;
    // When nonempty, only sequence_ids listed here are ingested.
    std::set<std::string> include;
    // Filled with one human-readable reason per excluded sequence.
    std::vector<std::string>* exclusion_log = nullptr;
};

// Scans each root's JPEGImages/ and Annotations/ trees and merges every valid
// sequence into one manifest. Sequences without usable annotations are
// excluded with a logged reason; unreadable files abort with io_error.
Manifest build_manifest(const std::vector<DatasetRoot>& roots, int target_long_side,
                        const IngestOptions& options = {});

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

void save_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest load_manifest(const std::filesystem::path& path);

} // namespace voskit::datakit
