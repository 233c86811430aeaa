#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::testsupport {

// Procedural dataset of moving shapes in the JPEGImages/Annotations layout.
// Every sequence holds two objects (a rectangle, label 1, and a disk,
// label 2) that stay inside the frame and are present in every frame, so
// ground truth is never empty on a scored frame.
struct ShapeDatasetSpec {
    int sequences = 5;
    int frames = 8;
    int width = 96;
    int height = 64;
    uint64_t seed = 7;
};

std::string shape_sequence_name(int sequence_index);
std::string shape_frame_stem(int frame_index);

// Ground-truth labels for one frame, identical to what the dataset writer
// encodes.
LabelRaster shape_raster(const ShapeDatasetSpec& spec, int sequence_index, int frame_index);

// The RGB frame that goes with shape_raster (pre-JPEG, values in [0,1]).
FrameImage shape_frame(const ShapeDatasetSpec& spec, int sequence_index, int frame_index);

void write_shape_dataset(const std::filesystem::path& root, const ShapeDatasetSpec& spec);

// Signed 4-neighbor grid distance to the mask boundary: positive inside
// (1 at the innermost boundary pixel), negative outside.
std::vector<double> signed_distance(const BinaryMask& mask);

// Per-object logit maps built from ground truth so that the default
// calibration (scale 7.5, bias -4.0, threshold 0.5) reproduces the labels
// exactly: z = signed_distance/3 + 4/7.5.
LogitStack logits_for_raster(const LabelRaster& raster);

// For each Annotations/<seq>/<stem>.png under dataset_root, writes
// logits_root/<seq>/<stem>.mslg built by logits_for_raster.
void write_logits_tree(const std::filesystem::path& dataset_root,
                       const std::filesystem::path& logits_root);

// ---------------------------------------------------------------------------
// Process and filesystem helpers

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the toolkit binary with the given arguments (each quoted).
CliResult run_cli(const std::vector<std::string>& args);

// Unique directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

uint64_t hash_file(const std::filesystem::path& path);
// Order-independent identity of a directory tree: mixes every file's
// tree-relative path and bytes in sorted path order.
uint64_t hash_tree(const std::filesystem::path& root);

std::string read_text_file(const std::filesystem::path& path);

} // namespace voskit::testsupport
