#include "lfsgm/viz.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace {

// Viridis control points at t = 0, 0.25, 0.5, 0.75, 1.
constexpr std::array<std::array<double, 3>, 5> anchors = {{
    {68.0, 1.0, 84.0},
    {59.0, 82.0, 139.0},
    {33.0, 145.0, 140.0},
    {94.0, 201.0, 98.0},
    {253.0, 231.0, 37.0},
}};

std::array<std::uint8_t, 3> gradient(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * (anchors.size() - 1);
    const int i = std::min(static_cast<int>(pos),
                           static_cast<int>(anchors.size()) - 2);
    const double f = pos - i;
    std::array<std::uint8_t, 3> rgb{};
    for (int c = 0; c < 3; ++c) {
        const double v = anchors[i][c] + f * (anchors[i + 1][c] - anchors[i][c]);
        rgb[c] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
    return rgb;
}

} // namespace

ImageU8 colorize(const DisparityMap& dm, double d_min, double d_max) {
    if (!(d_min < d_max))
        throw config_error("colorize needs d_min < d_max");
    ImageU8 img(dm.width, dm.height);
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!dm.is_valid(x, y))
                continue; // black
            const auto rgb =
                gradient((dm.value(x, y) - d_min) / (d_max - d_min));
            img.at(x, y, 0) = rgb[0];
            img.at(x, y, 1) = rgb[1];
            img.at(x, y, 2) = rgb[2];
        }
    }
    return img;
}

} // namespace lfsgm
