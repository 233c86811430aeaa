#include "voskit/datakit/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include <jpeglib.h>
#include <png.h>

#include "voskit/core/errors.hpp"

namespace voskit::datakit {

namespace {

struct MemReader {
    const uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + n > r->size) {
        png_error(png, "unexpected end of stream");
    }
    std::memcpy(out, r->data + r->pos, n);
    r->pos += n;
}

struct JpegErrorTrap {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
};

[[noreturn]] void jpeg_error_longjmp(j_common_ptr cinfo) {
    auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
    std::longjmp(trap->jump, 1);
}

void jpeg_message_noop(j_common_ptr, int) {}

bool has_png_magic(const std::vector<uint8_t>& bytes) {
    static const uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

bool has_jpeg_magic(const std::vector<uint8_t>& bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff;
}

FrameImage frame_from_rgb8(int width, int height, const std::vector<uint8_t>& rgb) {
    FrameImage out = make_frame(width, height);
    for (std::size_t i = 0; i < rgb.size(); ++i) {
        out.data[i] = static_cast<float>(rgb[i]) / 255.0f;
    }
    return out;
}

std::vector<uint8_t> rgb8_from_frame(const FrameImage& frame, const char* who) {
    if (frame.normalized) {
        throw std::invalid_argument(std::string(who) + ": frame must be unnormalized");
    }
    std::vector<uint8_t> rgb(frame.data.size());
    for (std::size_t i = 0; i < frame.data.size(); ++i) {
        const float v = std::clamp(frame.data[i], 0.0f, 1.0f);
        rgb[i] = static_cast<uint8_t>(std::lround(v * 255.0f));
    }
    return rgb;
}

FrameImage decode_png_rgb(const std::vector<uint8_t>& bytes, const std::filesystem::path& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("png read allocation failed: " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("png info allocation failed: " + path.string());
    }

    MemReader reader{bytes.data(), bytes.size(), 0};
    std::vector<uint8_t> pixels;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("corrupt PNG: " + path.string());
    }

    png_set_read_fn(png, &reader, png_read_from_memory);
    png_read_info(png, info);

    // Normalize every color layout to 8-bit RGB.
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    const int passes = png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("unsupported PNG layout: " + path.string());
    }

    pixels.resize(static_cast<std::size_t>(width) * height * 3);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
    }
    for (int p = 0; p < passes; ++p) {
        png_read_rows(png, rows.data(), nullptr, height);
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return frame_from_rgb8(static_cast<int>(width), static_cast<int>(height), pixels);
}

FrameImage decode_jpeg_rgb(const std::vector<uint8_t>& bytes, const std::filesystem::path& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorTrap trap;
    cinfo.err = jpeg_std_error(&trap.mgr);
    trap.mgr.error_exit = jpeg_error_longjmp;
    trap.mgr.emit_message = jpeg_message_noop;

    std::vector<uint8_t> pixels;

    if (setjmp(trap.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw format_error("corrupt JPEG: " + path.string());
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int width = static_cast<int>(cinfo.output_width);
    const int height = static_cast<int>(cinfo.output_height);
    pixels.resize(static_cast<std::size_t>(width) * height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    return frame_from_rgb8(width, height, pixels);
}

} // namespace

std::vector<uint8_t> read_binary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) throw io_error("read failure: " + path.string());
    return bytes;
}

void write_binary_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot create file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failure: " + path.string());
}

FrameImage load_frame_image(const std::filesystem::path& path) {
    const std::vector<uint8_t> bytes = read_binary_file(path);
    if (has_png_magic(bytes)) return decode_png_rgb(bytes, path);
    if (has_jpeg_magic(bytes)) return decode_jpeg_rgb(bytes, path);
    throw format_error("unrecognized image format: " + path.string());
}

void save_png_rgb(const std::filesystem::path& path, const FrameImage& frame) {
    const std::vector<uint8_t> rgb = rgb8_from_frame(frame, "save_png_rgb");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("png write allocation failed: " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("png info allocation failed: " + path.string());
    }

    std::vector<uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("PNG encode failure: " + path.string());
    }

    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t n) {
            auto* v = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(p));
            v->insert(v->end(), data, data + n);
        },
        [](png_structp) {});
    png_set_IHDR(png, info, static_cast<png_uint_32>(frame.width),
                 static_cast<png_uint_32>(frame.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < frame.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(
                               rgb.data() + static_cast<std::size_t>(y) * frame.width * 3));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);

    write_binary_file(path, out);
}

void save_jpeg_rgb(const std::filesystem::path& path, const FrameImage& frame, int quality) {
    if (quality < 1 || quality > 100) {
        throw std::invalid_argument("save_jpeg_rgb: quality must be in 1..100");
    }
    const std::vector<uint8_t> rgb = rgb8_from_frame(frame, "save_jpeg_rgb");

    jpeg_compress_struct cinfo;
    JpegErrorTrap trap;
    cinfo.err = jpeg_std_error(&trap.mgr);
    trap.mgr.error_exit = jpeg_error_longjmp;
    trap.mgr.emit_message = jpeg_message_noop;

    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;

    if (setjmp(trap.jump)) {
        jpeg_destroy_compress(&cinfo);
        if (buffer) free(buffer);
        throw io_error("JPEG encode failure: " + path.string());
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
    cinfo.image_width = static_cast<JDIMENSION>(frame.width);
    cinfo.image_height = static_cast<JDIMENSION>(frame.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(
            rgb.data() + static_cast<std::size_t>(cinfo.next_scanline) * frame.width * 3);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<uint8_t> bytes(buffer, buffer + buffer_size);
    free(buffer);
    write_binary_file(path, bytes);
}

std::pair<int, int> probe_image_size(const std::filesystem::path& path) {
    const std::vector<uint8_t> bytes = read_binary_file(path);
    if (has_png_magic(bytes)) {
        // Width and height live in the IHDR chunk right after the signature.
        if (bytes.size() < 24) throw format_error("truncated PNG: " + path.string());
        auto be32 = [&bytes](std::size_t at) {
            return (static_cast<uint32_t>(bytes[at]) << 24) |
                   (static_cast<uint32_t>(bytes[at + 1]) << 16) |
                   (static_cast<uint32_t>(bytes[at + 2]) << 8) | static_cast<uint32_t>(bytes[at + 3]);
        };
        return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
    }
    if (has_jpeg_magic(bytes)) {
        jpeg_decompress_struct cinfo;
        JpegErrorTrap trap;
        cinfo.err = jpeg_std_error(&trap.mgr);
        trap.mgr.error_exit = jpeg_error_longjmp;
        trap.mgr.emit_message = jpeg_message_noop;
        if (setjmp(trap.jump)) {
            jpeg_destroy_decompress(&cinfo);
            throw format_error("corrupt JPEG: " + path.string());
        }
        jpeg_create_decompress(&cinfo);
        jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
        jpeg_read_header(&cinfo, TRUE);
        const int w = static_cast<int>(cinfo.image_width);
        const int h = static_cast<int>(cinfo.image_height);
        jpeg_destroy_decompress(&cinfo);
        return {w, h};
    }
    throw format_error("unrecognized image format: " + path.string());
}

} // namespace voskit::datakit
