#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lfsgm/cost_volume.hpp"

namespace lfsgm {

/// Path-aggregation penalties and traversal directions.
/// P1 charges a one-index hypothesis change between neighboring pixels on a
/// path, P2 any larger change; 0 <= P1 <= P2. Directions are nonzero,
/// duplicate-free 2D integer steps (du, dv).
struct SgmParams {
    double p1 = 17.0;
    double p2 = 35.0;
    std::vector<std::pair<int, int>> directions = direction_set(16);

    /// Standard direction sets: 4 (axis), 8 (compass), 16 (compass plus
    /// knight-step vectors).
    static std::vector<std::pair<int, int>> direction_set(int count);

    void validate() const; ///< throws config_error
};

/// Per-pixel, per-hypothesis path costs summed over all directions.
/// Stored in double so long saturated paths accumulate without loss.
/// Bounds (when present) mirror the input volume's; entries outside stay NaN.
struct AggregatedVolume {
    int width = 0;
    int height = 0;
    int num_hypotheses = 0;
    std::vector<double> costs;
    bool bounded = false;
    std::vector<std::uint16_t> lo;
    std::vector<std::uint16_t> hi;

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
    double at(int x, int y, int k) const {
        assert(k >= lo_at(x, y) && k <= hi_at(x, y));
        return costs[idx(x, y, k)];
    }
};

/// One direction's path costs:
///   L(p,d) = C(p,d) + min(L(q,d), L(q,d-1)+P1, L(q,d+1)+P1, min_t L(q,t)+P2)
/// with q = p - r, and L(p,d) = C(p,d) where q falls outside the image.
/// With bounds, the min ranges only over the predecessor's window, and a
/// predecessor whose window does not overlap the pixel's restarts the path
/// (L = C). `out` must hold width*height*num_hypotheses doubles; entries
/// outside a pixel's window are left untouched.
void aggregate_direction(const CostVolume& cv, std::pair<int, int> direction,
                         const SgmParams& params, std::span<double> out);

/// Convenience wrapper returning a NaN-initialized buffer.
std::vector<double> aggregate_direction(const CostVolume& cv,
                                        std::pair<int, int> direction,
                                        const SgmParams& params);

/// Elementwise sum of aggregate_direction over every configured direction;
/// direction order does not affect the result. Directions run on up to
/// `workers` threads (one scratch volume per concurrent direction).
AggregatedVolume aggregate_all(const CostVolume& cv, const SgmParams& params,
                               int workers = 1);

/// Per pixel, the hypothesis disparity minimizing the aggregated cost within
/// that pixel's window; ties break toward the smaller index. Pixels with an
/// empty window come out invalid.
DisparityMap wta(const AggregatedVolume& av, const HypothesisGrid& grid);

} // namespace lfsgm
