#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::datakit {

// Decodes a JPEG or PNG file (sniffed by magic bytes) into an RGB frame with
// values in [0,1]. Grayscale and alpha inputs are converted to plain RGB.
FrameImage load_frame_image(const std::filesystem::path& path);

// Encoders used for fixtures and debug dumps. Inputs must be unnormalized
// frames; values are clamped to [0,1] and quantized to 8 bits.
void save_png_rgb(const std::filesystem::path& path, const FrameImage& frame);
void save_jpeg_rgb(const std::filesystem::path& path, const FrameImage& frame, int quality = 92);

// Reads only as much of the file as needed to learn (width, height).
std::pair<int, int> probe_image_size(const std::filesystem::path& path);

std::vector<uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes);

} // namespace voskit::datakit
