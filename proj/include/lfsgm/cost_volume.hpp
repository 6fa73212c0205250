#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lfsgm/census.hpp"
#include "lfsgm/light_field.hpp"

namespace lfsgm {

/// Per-pixel hypothesis-index search window [lo, hi] (both inclusive, clamped
/// into [0, count-1]) plus a mask of pixels recomputed on the whole range.
struct BorderMaps {
    int width = 0;
    int height = 0;
    int num_hypotheses = 0;
    std::vector<std::uint16_t> lo;
    std::vector<std::uint16_t> hi;
    std::vector<std::uint8_t> full_range_mask;

    BorderMaps() = default;
    BorderMaps(int w, int h, int n)
        : width(w), height(h), num_hypotheses(n),
          lo(static_cast<std::size_t>(w) * h, 0),
          hi(static_cast<std::size_t>(w) * h,
             static_cast<std::uint16_t>(n - 1)),
          full_range_mask(static_cast<std::size_t>(w) * h, 0) {}

    /// Whole-range window at every pixel, mask set everywhere.
    static BorderMaps full(int w, int h, int n) {
        BorderMaps b(w, h, n);
        std::fill(b.full_range_mask.begin(), b.full_range_mask.end(),
                  std::uint8_t{1});
        return b;
    }

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    int lo_at(int x, int y) const { return lo[idx(x, y)]; }
    int hi_at(int x, int y) const { return hi[idx(x, y)]; }
};

/// W x H x N matching costs. Entries outside a pixel's [lo, hi] window are
/// UNSET (stored as NaN, never read by aggregation); all set entries are
/// finite and >= 0. sampled_count counts the (pixel, hypothesis) pairs that
/// were actually evaluated.
struct CostVolume {
    int width = 0;
    int height = 0;
    int num_hypotheses = 0;
    std::vector<float> costs;
    bool bounded = false;
    std::vector<std::uint16_t> lo; ///< per pixel, only when bounded
    std::vector<std::uint16_t> hi;
    std::uint64_t sampled_count = 0;

    CostVolume() = default;
    CostVolume(int w, int h, int n)
        : width(w), height(h), num_hypotheses(n),
          costs(static_cast<std::size_t>(w) * h * n,
                std::numeric_limits<float>::quiet_NaN()) {}

    std::size_t idx(int x, int y, int k) const {
        return (static_cast<std::size_t>(y) * width + x) *
                   static_cast<std::size_t>(num_hypotheses) +
               k;
    }
    int lo_at(int x, int y) const {
        return bounded ? lo[static_cast<std::size_t>(y) * width + x] : 0;
    }
    int hi_at(int x, int y) const {
        return bounded ? hi[static_cast<std::size_t>(y) * width + x]
                       : num_hypotheses - 1;
    }
    bool is_set(int x, int y, int k) const {
        return k >= lo_at(x, y) && k <= hi_at(x, y);
    }
    float at(int x, int y, int k) const {
        assert(is_set(x, y, k));
        return costs[idx(x, y, k)];
    }

    void adopt_bounds(const BorderMaps& borders) {
        assert(borders.width == width && borders.height == height &&
               borders.num_hypotheses == num_hypotheses);
        bounded = true;
        lo = borders.lo;
        hi = borders.hi;
    }
};

/// Maximum per-view RGB L2 cost: opposite corners of the color cube.
inline float max_l2_cost() { return 255.0f * std::sqrt(3.0f); }

/// Census matching cost against one cross-lying view: for every reference
/// pixel and hypothesis, the RGB census distance between the reference pixel
/// and its nearest-neighbor projection into the view. Projections leaving the
/// image saturate at the maximum cost 3 * bits. The view must differ from the
/// reference view. Always unbounded.
CostVolume cross_view_cost(const CensusField& cf, const LightField& lf,
                           int view_s, int view_t, const HypothesisGrid& grid,
                           int workers = 1);

/// All-views L2 cost: per pixel and hypothesis (inside the border window when
/// given), the bilinear RGB L2 distance to every non-reference view with an
/// in-bounds projection, averaged over those views; when no view is in
/// bounds the cost saturates at max_l2_cost().
CostVolume allviews_cost_l2(const LightField& lf, const HypothesisGrid& grid,
                            const BorderMaps* borders, int workers = 1);

/// Census variant of the all-views cost: RGB census distance with
/// nearest-neighbor projection; same averaging, saturation at 3 * bits.
CostVolume allviews_cost_census(const CensusField& cf, const LightField& lf,
                                const HypothesisGrid& grid,
                                const BorderMaps* borders, int workers = 1);

} // namespace lfsgm
