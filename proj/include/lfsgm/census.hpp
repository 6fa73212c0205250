#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lfsgm/light_field.hpp"

namespace lfsgm {

/// Ordered pixel offsets sampled by the census transform. Offsets must be
/// distinct, exclude (0,0) and fit one machine word (<= 64).
struct CensusPattern {
    std::vector<std::pair<int, int>> offsets; ///< (du, dv)

    int bits() const { return static_cast<int>(offsets.size()); }

    /// 16 offsets spanning a 7x7 window sparsely:
    /// du, dv in {-3, -1, +1, +3}, row-major order.
    static CensusPattern sparse7x7();

    /// Parses "(du,dv),(du,dv),..." (whitespace tolerated).
    static CensusPattern parse(const std::string& text);
    std::string to_string() const;

    void validate() const; ///< throws config_error
};

/// Per-view, per-channel bit strings. Bit k of a pixel is 1 iff the center
/// radiance is strictly greater than the radiance at offset k (ties give 0);
/// offsets falling outside the image compare against the edge-clamped pixel.
/// Views not requested in a partial transform stay empty.
struct CensusField {
    int width = 0;
    int height = 0;
    int bits = 0;
    std::vector<std::array<std::vector<std::uint64_t>, 3>> views;

    bool has_view(int view) const {
        return view >= 0 && view < static_cast<int>(views.size()) &&
               !views[view][0].empty();
    }
    std::uint64_t word(int view, int channel, int x, int y) const {
        return views[view][channel][static_cast<std::size_t>(y) * width + x];
    }
};

/// Transforms every view (or only `view_indices`) channel by channel.
CensusField census_transform(const LightField& lf, const CensusPattern& pattern,
                             int workers = 1);
CensusField census_transform(const LightField& lf, const CensusPattern& pattern,
                             std::span<const int> view_indices, int workers = 1);

/// Number of differing bits between two equal-width bit strings.
inline int hamming(std::uint64_t a, std::uint64_t b) {
    return std::popcount(a ^ b);
}

/// Sum of per-channel Hamming distances between two pixels' bit strings;
/// range [0, 3 * bits].
inline int rgb_census_distance(const CensusField& cf, int view_a, int xa, int ya,
                               int view_b, int xb, int yb) {
    int d = 0;
    for (int c = 0; c < 3; ++c)
        d += hamming(cf.word(view_a, c, xa, ya), cf.word(view_b, c, xb, yb));
    return d;
}

} // namespace lfsgm
