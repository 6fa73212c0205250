#include "lfsgm/image.hpp"

#include <cmath>
#include <cstdio>
#include <png.h>

#include "lfsgm/errors.hpp"

namespace lfsgm {

std::optional<Rgb> sample_view(const ImageU8& view, double u, double v,
                               SampleMode mode) {
    if (mode == SampleMode::nearest) {
        const long x = std::lround(u);
        const long y = std::lround(v);
        if (x < 0 || x >= view.width || y < 0 || y >= view.height)
            return std::nullopt;
        const int xi = static_cast<int>(x);
        const int yi = static_cast<int>(y);
        Rgb out;
        out.r = view.at(xi, yi, 0);
        out.g = view.at(xi, yi, 1);
        out.b = view.at(xi, yi, 2);
        return out;
    }

    if (u < 0.0 || u > view.width - 1 || v < 0.0 || v > view.height - 1)
        return std::nullopt;
    const int x0 = static_cast<int>(std::floor(u));
    const int y0 = static_cast<int>(std::floor(v));
    // Right/bottom taps collapse onto the edge when the weight there is zero.
    const int x1 = std::min(x0 + 1, view.width - 1);
    const int y1 = std::min(y0 + 1, view.height - 1);
    const float fx = static_cast<float>(u - x0);
    const float fy = static_cast<float>(v - y0);
    const float w00 = (1.f - fx) * (1.f - fy);
    const float w10 = fx * (1.f - fy);
    const float w01 = (1.f - fx) * fy;
    const float w11 = fx * fy;

    Rgb out;
    float* ch[3] = {&out.r, &out.g, &out.b};
    for (int c = 0; c < 3; ++c) {
        *ch[c] = w00 * view.at(x0, y0, c) + w10 * view.at(x1, y0, c) +
                 w01 * view.at(x0, y1, c) + w11 * view.at(x1, y1, c);
    }
    return out;
}

namespace {

struct FileHandle {
    std::FILE* fp = nullptr;
    explicit FileHandle(std::FILE* f) : fp(f) {}
    ~FileHandle() {
        if (fp)
            std::fclose(fp);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

} // namespace

ImageU8 read_png(const std::filesystem::path& path) {
    FileHandle file(std::fopen(path.string().c_str(), "rb"));
    if (!file.fp)
        throw io_error("cannot open image: " + path.string());

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw io_error("png reader allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("png reader allocation failed");
    }

    ImageU8 image;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("failed to decode PNG: " + path.string());
    }

    png_init_io(png, file.fp);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize everything to 8-bit RGB.
    if (bit_depth == 16)
        png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY ||
        color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    image = ImageU8(static_cast<int>(w), static_cast<int>(h), 3);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = image.data.data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

void write_png(const std::filesystem::path& path, const ImageU8& image) {
    if (image.channels != 3)
        throw io_error("write_png expects 3-channel images");
    FileHandle file(std::fopen(path.string().c_str(), "wb"));
    if (!file.fp)
        throw io_error("cannot create image: " + path.string());

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw io_error("png writer allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("png writer allocation failed");
    }

    std::vector<png_bytep> rows(image.height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("failed to encode PNG: " + path.string());
    }

    png_init_io(png, file.fp);
    png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < image.height; ++y) {
        rows[y] = const_cast<png_bytep>(image.data.data() +
                                        static_cast<std::size_t>(y) * image.width * 3);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace lfsgm
