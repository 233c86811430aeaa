#include "voskit/datakit/palette.hpp"

#include <csetjmp>
#include <cstring>
#include <stdexcept>

#include <png.h>

#include "voskit/core/errors.hpp"

namespace voskit::datakit {

namespace {

struct MemReader {
    const uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void read_from_memory(png_structp png, png_bytep out, png_size_t n) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + n > r->size) {
        png_error(png, "unexpected end of stream");
    }
    std::memcpy(out, r->data + r->pos, n);
    r->pos += n;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t n) {
    auto* v = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
    v->insert(v->end(), data, data + n);
}

void flush_noop(png_structp) {}

} // namespace

const std::array<PaletteColor, 256>& mask_palette() {
    // Bit-reversal palette: channel bits of index i spread across the byte,
    // giving visually distinct colors for small IDs.
    static const std::array<PaletteColor, 256> table = [] {
        std::array<PaletteColor, 256> t{};
        for (int i = 0; i < 256; ++i) {
            int c = i;
            uint8_t r = 0, g = 0, b = 0;
            for (int j = 0; j < 8; ++j) {
                r = static_cast<uint8_t>(r | (((c >> 0) & 1) << (7 - j)));
                g = static_cast<uint8_t>(g | (((c >> 1) & 1) << (7 - j)));
                b = static_cast<uint8_t>(b | (((c >> 2) & 1) << (7 - j)));
                c >>= 3;
            }
            t[static_cast<std::size_t>(i)] = {r, g, b};
        }
        return t;
    }();
    return table;
}

LabelRaster decode_palette_mask(const std::vector<uint8_t>& png_bytes) {
    if (png_bytes.size() < 8 || png_sig_cmp(png_bytes.data(), 0, 8) != 0) {
        throw format_error("palette mask: not a PNG stream");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("palette mask: png read allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("palette mask: png info allocation failed");
    }

    MemReader reader{png_bytes.data(), png_bytes.size(), 0};
    std::vector<uint8_t> pixels;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("palette mask: corrupt PNG stream");
    }

    png_set_read_fn(png, &reader, read_from_memory);
    png_read_info(png, info);

    if (png_get_color_type(png, info) != PNG_COLOR_TYPE_PALETTE) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw format_error("palette mask: PNG is not indexed-color");
    }

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);

    // Expand sub-byte palette indices to one byte per pixel.
    png_set_packing(png);
    const int passes = png_set_interlace_handling(png);
    png_read_update_info(png, info);

    pixels.resize(static_cast<std::size_t>(width) * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width;
    }
    for (int p = 0; p < passes; ++p) {
        png_read_rows(png, rows.data(), nullptr, height);
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    LabelRaster out = make_raster(static_cast<int>(width), static_cast<int>(height));
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        out.labels[i] = pixels[i];
    }
    return out;
}

std::vector<uint8_t> encode_palette_mask(const LabelRaster& raster) {
    if (raster.width <= 0 || raster.height <= 0) {
        throw std::range_error("palette mask: empty raster");
    }
    std::vector<uint8_t> pixels(raster.labels.size());
    for (std::size_t i = 0; i < raster.labels.size(); ++i) {
        const int32_t v = raster.labels[i];
        if (v < 0 || v > 255) {
            throw std::range_error("palette mask: label outside the 0..255 palette range");
        }
        pixels[i] = static_cast<uint8_t>(v);
    }

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("palette mask: png write allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("palette mask: png info allocation failed");
    }

    std::vector<uint8_t> out;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("palette mask: PNG encode failure");
    }

    png_set_write_fn(png, &out, write_to_vector, flush_noop);
    png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width),
                 static_cast<png_uint_32>(raster.height), 8, PNG_COLOR_TYPE_PALETTE,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    const auto& palette = mask_palette();
    std::vector<png_color> colors(256);
    for (std::size_t i = 0; i < 256; ++i) {
        colors[i].red = palette[i].r;
        colors[i].green = palette[i].g;
        colors[i].blue = palette[i].b;
    }
    png_set_PLTE(png, info, colors.data(), 256);
    png_write_info(png, info);

    for (int y = 0; y < raster.height; ++y) {
        png_write_row(png, pixels.data() + static_cast<std::size_t>(y) * raster.width);
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

} // namespace voskit::datakit
