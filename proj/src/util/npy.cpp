#include "voskit/util/npy.hpp"

#include "voskit/core/errors.hpp"

#include <cstring>
#include <fstream>
#include <string>

namespace voskit::util {

namespace {

std::string shape_tuple(const std::vector<std::size_t>& shape) {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        s += std::to_string(shape[i]);
        if (shape.size() == 1 || i + 1 < shape.size()) s += ",";
        if (i + 1 < shape.size()) s += " ";
    }
    s += ")";
    return s;
}

} // namespace

void write_npy_f32(const std::filesystem::path& path, const float* data,
                   const std::vector<std::size_t>& shape) {
    std::string dict = "{'descr': '<f4', 'fortran_order': False, 'shape': ";
    dict += shape_tuple(shape);
    dict += ", }";
    // magic(6) + version(2) + header_len(2) + dict padded to a 64-byte boundary
    const std::size_t base = 6 + 2 + 2;
    std::size_t total = base + dict.size() + 1;
    const std::size_t padded = (total + 63) / 64 * 64;
    dict += std::string(padded - total, ' ');
    dict += '\n';

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    const unsigned char magic[8] = {0x93, 'N', 'U', 'M', 'P', 'Y', 1, 0};
    out.write(reinterpret_cast<const char*>(magic), 8);
    const std::uint16_t hlen = static_cast<std::uint16_t>(dict.size());
    const unsigned char hl[2] = {static_cast<unsigned char>(hlen & 0xff),
                                 static_cast<unsigned char>(hlen >> 8)};
    out.write(reinterpret_cast<const char*>(hl), 2);
    out.write(dict.data(), static_cast<std::streamsize>(dict.size()));

    std::size_t count = 1;
    for (std::size_t d : shape) count *= d;
    out.write(reinterpret_cast<const char*>(data),
              static_cast<std::streamsize>(count * sizeof(float)));
    if (!out) throw io_error("write failed: " + path.string());
}

NpyArrayF32 read_npy_f32(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path.string());

    unsigned char magic[8];
    in.read(reinterpret_cast<char*>(magic), 8);
    if (!in || std::memcmp(magic, "\x93NUMPY", 6) != 0) {
        throw format_error("not an NPY file: " + path.string());
    }
    if (magic[6] != 1 || magic[7] != 0) {
        throw format_error("unsupported NPY version: " + path.string());
    }
    unsigned char hl[2];
    in.read(reinterpret_cast<char*>(hl), 2);
    const std::size_t hlen = hl[0] | (static_cast<std::size_t>(hl[1]) << 8);
    std::string dict(hlen, '\0');
    in.read(dict.data(), static_cast<std::streamsize>(hlen));
    if (!in) throw format_error("truncated NPY header: " + path.string());

    if (dict.find("'<f4'") == std::string::npos ||
        dict.find("'fortran_order': False") == std::string::npos) {
        throw format_error("NPY dtype/order not supported: " + path.string());
    }
    const std::size_t open = dict.find('(');
    const std::size_t close = dict.find(')', open);
    if (open == std::string::npos || close == std::string::npos) {
        throw format_error("NPY shape missing: " + path.string());
    }

    NpyArrayF32 arr;
    std::size_t value = 0;
    bool in_number = false;
    for (std::size_t i = open + 1; i <= close; ++i) {
        const char c = dict[i];
        if (c >= '0' && c <= '9') {
            value = value * 10 + static_cast<std::size_t>(c - '0');
            in_number = true;
        } else if (in_number) {
            arr.shape.push_back(value);
            value = 0;
            in_number = false;
        }
    }

    std::size_t count = 1;
    for (std::size_t d : arr.shape) count *= d;
    arr.data.resize(count);
    in.read(reinterpret_cast<char*>(arr.data.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (!in) throw format_error("truncated NPY data: " + path.string());
    return arr;
}

} // namespace voskit::util
