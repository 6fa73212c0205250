#include "lfsgm/init_disparity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "lfsgm/errors.hpp"

namespace lfsgm {

std::vector<std::pair<int, int>> cross_view_set(const LightField& lf) {
    if (lf.dim_s < 2 && lf.dim_t < 2)
        throw config_error("cross-view set needs at least a 2-view axis");
    const std::vector<std::pair<int, int>> candidates = {
        {lf.ref_s, 0},
        {lf.ref_s, lf.dim_t - 1},
        {0, lf.ref_t},
        {lf.dim_s - 1, lf.ref_t},
    };
    std::vector<std::pair<int, int>> out;
    for (const auto& v : candidates) {
        if (v == std::pair<int, int>{lf.ref_s, lf.ref_t})
            continue;
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    }
    return out;
}

std::vector<DisparityMap> intermediate_maps(const LightField& lf,
                                            const CensusField& cf,
                                            const SgmParams& params,
                                            const HypothesisGrid& grid,
                                            int workers) {
    std::vector<DisparityMap> maps;
    for (const auto& [s, t] : cross_view_set(lf)) {
        const CostVolume cv = cross_view_cost(cf, lf, s, t, grid, workers);
        const AggregatedVolume av = aggregate_all(cv, params, workers);
        maps.push_back(wta(av, grid));
    }
    return maps;
}

DisparityMap fuse(std::span<const DisparityMap> maps, double phi_steps,
                  const HypothesisGrid& grid) {
    if (maps.empty())
        throw config_error("fuse needs at least one map");
    const int w = maps.front().width;
    const int h = maps.front().height;
    for (const DisparityMap& m : maps)
        if (m.width != w || m.height != h)
            throw config_error("fuse inputs must share dimensions");

    const double phi = phi_steps * grid.step();
    DisparityMap out = maps.front();
    for (std::size_t i = 1; i < maps.size(); ++i) {
        const DisparityMap& next = maps[i];
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!out.is_valid(x, y))
                    continue;
                if (!next.is_valid(x, y)) {
                    out.set_invalid(x, y);
                    continue;
                }
                const double cur = out.value(x, y);
                const double cand = next.value(x, y);
                if (std::abs(cur - cand) < phi)
                    out.set(x, y, static_cast<float>((cur + cand) / 2.0));
                else
                    out.set_invalid(x, y); // discarded as uncertain
            }
        }
    }
    return out;
}

namespace {

float median_of(std::vector<float>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0f;
}

} // namespace

DisparityMap fill_holes(const DisparityMap& dm, int window, int passes,
                        int min_support) {
    if (window < 1 || window % 2 == 0)
        throw config_error("fill window must be odd");
    if (passes < 1 || passes > 2)
        throw config_error("fill passes must be 1 or 2");
    const int r = window / 2;

    DisparityMap cur = dm;
    std::vector<float> neighbors;
    for (int pass = 0; pass < passes; ++pass) {
        DisparityMap next = cur;
        for (int y = 0; y < dm.height; ++y) {
            for (int x = 0; x < dm.width; ++x) {
                if (cur.is_valid(x, y))
                    continue;
                neighbors.clear();
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx) {
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || nx >= dm.width || ny < 0 || ny >= dm.height)
                            continue;
                        if (cur.is_valid(nx, ny))
                            neighbors.push_back(cur.value(nx, ny));
                    }
                }
                if (static_cast<int>(neighbors.size()) >= min_support)
                    next.set(x, y, median_of(neighbors));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::uint8_t> sobel_edges(const ImageU8& image, double threshold) {
    if (threshold < 0)
        throw config_error("sobel threshold must be >= 0");
    const int w = image.width;
    const int h = image.height;
    std::vector<float> gray(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            gray[static_cast<std::size_t>(y) * w + x] =
                0.299f * image.at(x, y, 0) + 0.587f * image.at(x, y, 1) +
                0.114f * image.at(x, y, 2);

    const auto at = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return gray[static_cast<std::size_t>(y) * w + x];
    };

    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                             (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
            const float gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                             (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
            const double mag = std::hypot(gx / 4.0, gy / 4.0);
            if (mag > threshold)
                mask[static_cast<std::size_t>(y) * w + x] = 1;
        }
    }
    return mask;
}

BorderMaps compute_borders(const DisparityMap& dm, int lambda_steps,
                           const std::vector<std::uint8_t>& edges,
                           const HypothesisGrid& grid) {
    if (lambda_steps < 0)
        throw config_error("border threshold must be >= 0");
    assert(edges.size() == dm.values.size());
    BorderMaps b(dm.width, dm.height, grid.count);
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            const std::size_t i = b.idx(x, y);
            if (!dm.is_valid(x, y) || edges[i]) {
                b.lo[i] = 0;
                b.hi[i] = static_cast<std::uint16_t>(grid.count - 1);
                b.full_range_mask[i] = 1;
                continue;
            }
            const int k = grid.index_of(dm.value(x, y));
            b.lo[i] = static_cast<std::uint16_t>(std::max(0, k - lambda_steps));
            b.hi[i] = static_cast<std::uint16_t>(
                std::min(grid.count - 1, k + lambda_steps));
        }
    }
    return b;
}

} // namespace lfsgm
