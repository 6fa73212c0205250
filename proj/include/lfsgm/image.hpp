#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace lfsgm {

/// Interleaved 8-bit image, row-major, `channels` samples per pixel.
struct ImageU8 {
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<std::uint8_t> data;

    ImageU8() = default;
    ImageU8(int w, int h, int c = 3)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, 0) {}

    bool inside(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    /// Edge-replicating access for window operators near the border.
    std::uint8_t at_clamped(int x, int y, int c) const {
        x = x < 0 ? 0 : (x >= width ? width - 1 : x);
        y = y < 0 ? 0 : (y >= height ? height - 1 : y);
        return at(x, y, c);
    }
};

/// Radiance sample; float so bilinear blends keep fractional values.
struct Rgb {
    float r = 0.f;
    float g = 0.f;
    float b = 0.f;
};

enum class SampleMode { bilinear, nearest };

/// Samples a view at a fractional position. Returns nullopt when the sample
/// footprint (the 4-neighborhood for bilinear, the rounded pixel for nearest)
/// leaves the image. At integer positions both modes return the stored pixel.
std::optional<Rgb> sample_view(const ImageU8& view, double u, double v,
                               SampleMode mode);

ImageU8 read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageU8& image);

} // namespace lfsgm
