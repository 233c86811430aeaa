#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace voskit::util {

// Minimal NPY v1.0 support for little-endian float32 C-order arrays. Enough
// to round-trip the frame dumps this toolkit writes; not a general reader.

void write_npy_f32(const std::filesystem::path& path, const float* data,
                   const std::vector<std::size_t>& shape);

struct NpyArrayF32 {
    std::vector<std::size_t> shape;
    std::vector<float> data;
};

NpyArrayF32 read_npy_f32(const std::filesystem::path& path);

} // namespace voskit::util
