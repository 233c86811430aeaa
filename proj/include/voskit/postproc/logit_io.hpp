#pragma once

#include <filesystem>

#include "voskit/core/types.hpp"

namespace voskit::postproc {

// Raw logit container, one file per frame. Layout, all integers little
// endian: magic "MSLG", u32 version (1), u32 width, u32 height, u32 object
// count, then per object a u32 object ID followed by width*height 32-bit
// floats in row-major order. Objects are stored in ascending ID order.
void write_logit_file(const std::filesystem::path& path, const LogitStack& stack);
LogitStack read_logit_file(const std::filesystem::path& path);

} // namespace voskit::postproc
