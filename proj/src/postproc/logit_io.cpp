#include "voskit/postproc/logit_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "voskit/core/errors.hpp"

namespace voskit::postproc {

namespace {

constexpr char kMagic[4] = {'M', 'S', 'L', 'G'};
constexpr uint32_t kVersion = 1;

void put_u32(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

uint32_t get_u32(const std::string& in, std::size_t& pos) {
    const auto* p = reinterpret_cast<const unsigned char*>(in.data() + pos);
    pos += 4;
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint32_t float_bits(float f) {
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    return bits;
}

float bits_float(uint32_t bits) {
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

} // namespace

void write_logit_file(const std::filesystem::path& path, const LogitStack& stack) {
    if (stack.width <= 0 || stack.height <= 0) {
        throw std::invalid_argument("logit file: non-positive dimensions");
    }
    const std::size_t n = static_cast<std::size_t>(stack.width) * stack.height;

    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<uint32_t>(stack.width));
    put_u32(out, static_cast<uint32_t>(stack.height));
    put_u32(out, static_cast<uint32_t>(stack.per_object.size()));
    for (const auto& [id, z] : stack.per_object) {
        if (id < 0) throw std::invalid_argument("logit file: negative object ID");
        if (z.size() != n) {
            throw std::invalid_argument("logit file: map size does not match dimensions");
        }
        put_u32(out, static_cast<uint32_t>(id));
        for (float v : z) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("logit file: non-finite logit");
            }
            put_u32(out, float_bits(v));
        }
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw io_error("cannot create file: " + path.string());
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw io_error("write failure: " + path.string());
}

LogitStack read_logit_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw io_error("cannot open file: " + path.string());
    std::string data((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (file.bad()) throw io_error("read failure: " + path.string());

    if (data.size() < 20 || std::memcmp(data.data(), kMagic, 4) != 0) {
        throw format_error("logit file: bad magic: " + path.string());
    }
    std::size_t pos = 4;
    const uint32_t version = get_u32(data, pos);
    if (version != kVersion) {
        throw format_error("logit file: unsupported version " + std::to_string(version) + ": " +
                           path.string());
    }
    LogitStack stack;
    stack.width = static_cast<int>(get_u32(data, pos));
    stack.height = static_cast<int>(get_u32(data, pos));
    const uint32_t objects = get_u32(data, pos);
    if (stack.width <= 0 || stack.height <= 0) {
        throw format_error("logit file: non-positive dimensions: " + path.string());
    }
    const std::size_t n = static_cast<std::size_t>(stack.width) * stack.height;
    const std::size_t need = 20 + static_cast<std::size_t>(objects) * (4 + n * 4);
    if (data.size() != need) {
        throw format_error("logit file: truncated or oversized payload: " + path.string());
    }

    for (uint32_t k = 0; k < objects; ++k) {
        const uint32_t id = get_u32(data, pos);
        if (stack.per_object.count(static_cast<int32_t>(id))) {
            throw format_error("logit file: duplicate object ID: " + path.string());
        }
        std::vector<float>& z = stack.per_object[static_cast<int32_t>(id)];
        z.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = bits_float(get_u32(data, pos));
            if (!std::isfinite(z[i])) {
                throw format_error("logit file: non-finite logit: " + path.string());
            }
        }
    }
    return stack;
}

} // namespace voskit::postproc
