#include "lfsgm/sgm.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "lfsgm/errors.hpp"
#include "lfsgm/parallel.hpp"

namespace lfsgm {

std::vector<std::pair<int, int>> SgmParams::direction_set(int count) {
    const std::vector<std::pair<int, int>> axis = {
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const std::vector<std::pair<int, int>> diagonal = {
        {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
    const std::vector<std::pair<int, int>> knight = {
        {2, 1}, {-2, -1}, {2, -1}, {-2, 1},
        {1, 2}, {-1, -2}, {1, -2}, {-1, 2}};

    std::vector<std::pair<int, int>> dirs = axis;
    if (count >= 8)
        dirs.insert(dirs.end(), diagonal.begin(), diagonal.end());
    if (count >= 16)
        dirs.insert(dirs.end(), knight.begin(), knight.end());
    if (count != 4 && count != 8 && count != 16)
        throw config_error("direction count must be 4, 8 or 16");
    return dirs;
}

void SgmParams::validate() const {
    if (p1 < 0 || p2 < p1)
        throw config_error("penalties must satisfy 0 <= P1 <= P2");
    if (directions.empty())
        throw config_error("direction set must be nonempty");
    std::set<std::pair<int, int>> seen;
    for (const auto& r : directions) {
        if (r == std::pair<int, int>{0, 0})
            throw config_error("zero direction vector");
        if (!seen.insert(r).second)
            throw config_error("duplicate direction vector");
    }
}

void aggregate_direction(const CostVolume& cv, std::pair<int, int> direction,
                         const SgmParams& params, std::span<double> out) {
    const int w = cv.width;
    const int h = cv.height;
    const auto [du, dv] = direction;
    assert(out.size() == cv.costs.size());
    assert(du != 0 || dv != 0);

    // Scan so that every predecessor p - r is visited before p.
    const int y_begin = dv >= 0 ? 0 : h - 1;
    const int y_end = dv >= 0 ? h : -1;
    const int y_step = dv >= 0 ? 1 : -1;
    const int x_begin = du >= 0 ? 0 : w - 1;
    const int x_end = du >= 0 ? w : -1;
    const int x_step = du >= 0 ? 1 : -1;

    for (int y = y_begin; y != y_end; y += y_step) {
        for (int x = x_begin; x != x_end; x += x_step) {
            const int lo = cv.lo_at(x, y);
            const int hi = cv.hi_at(x, y);
            const float* cost = cv.costs.data() + cv.idx(x, y, 0);
            double* path = out.data() + cv.idx(x, y, 0);

            const int qx = x - du;
            const int qy = y - dv;
            const bool has_pred = qx >= 0 && qx < w && qy >= 0 && qy < h;
            int qlo = 0, qhi = -1;
            if (has_pred) {
                qlo = cv.lo_at(qx, qy);
                qhi = cv.hi_at(qx, qy);
            }
            // A predecessor whose window misses this pixel's restarts the path.
            if (!has_pred || qhi < lo || qlo > hi) {
                for (int k = lo; k <= hi; ++k)
                    path[k] = cost[k];
                continue;
            }

            const double* prev = out.data() + cv.idx(qx, qy, 0);
            double prev_min = std::numeric_limits<double>::infinity();
            for (int k = qlo; k <= qhi; ++k)
                prev_min = std::min(prev_min, prev[k]);

            const double jump = prev_min + params.p2;
            for (int k = lo; k <= hi; ++k) {
                double best = jump;
                if (k >= qlo && k <= qhi)
                    best = std::min(best, prev[k]);
                if (k - 1 >= qlo && k - 1 <= qhi)
                    best = std::min(best, prev[k - 1] + params.p1);
                if (k + 1 >= qlo && k + 1 <= qhi)
                    best = std::min(best, prev[k + 1] + params.p1);
                path[k] = cost[k] + best;
            }
        }
    }
}

std::vector<double> aggregate_direction(const CostVolume& cv,
                                        std::pair<int, int> direction,
                                        const SgmParams& params) {
    std::vector<double> out(cv.costs.size(),
                            std::numeric_limits<double>::quiet_NaN());
    aggregate_direction(cv, direction, params, out);
    return out;
}

AggregatedVolume aggregate_all(const CostVolume& cv, const SgmParams& params,
                               int workers) {
    params.validate();
    AggregatedVolume av;
    av.width = cv.width;
    av.height = cv.height;
    av.num_hypotheses = cv.num_hypotheses;
    av.bounded = cv.bounded;
    av.lo = cv.lo;
    av.hi = cv.hi;
    av.costs.assign(cv.costs.size(), std::numeric_limits<double>::quiet_NaN());

    // Zero the in-window entries so directions can accumulate.
    for (int y = 0; y < av.height; ++y)
        for (int x = 0; x < av.width; ++x)
            for (int k = av.lo_at(x, y); k <= av.hi_at(x, y); ++k)
                av.costs[av.idx(x, y, k)] = 0.0;

    const int n_dirs = static_cast<int>(params.directions.size());
    const int lanes = std::max(1, std::min(workers, n_dirs));
    std::vector<std::vector<double>> scratch(
        lanes, std::vector<double>(cv.costs.size(),
                                   std::numeric_limits<double>::quiet_NaN()));

    // Waves of `lanes` directions run concurrently; the sum is applied in
    // direction-list order so results do not depend on the worker count.
    for (int wave = 0; wave < n_dirs; wave += lanes) {
        const int in_wave = std::min(lanes, n_dirs - wave);
        parallel_chunks(in_wave, lanes, [&](int i0, int i1) {
            for (int i = i0; i < i1; ++i)
                aggregate_direction(cv, params.directions[wave + i], params,
                                    scratch[i]);
        });
        for (int i = 0; i < in_wave; ++i) {
            const std::vector<double>& lane = scratch[i];
            for (int y = 0; y < av.height; ++y)
                for (int x = 0; x < av.width; ++x)
                    for (int k = av.lo_at(x, y); k <= av.hi_at(x, y); ++k)
                        av.costs[av.idx(x, y, k)] += lane[av.idx(x, y, k)];
        }
    }
    return av;
}

DisparityMap wta(const AggregatedVolume& av, const HypothesisGrid& grid) {
    assert(av.num_hypotheses == grid.count);
    DisparityMap dm(av.width, av.height);
    for (int y = 0; y < av.height; ++y) {
        for (int x = 0; x < av.width; ++x) {
            const int lo = av.lo_at(x, y);
            const int hi = av.hi_at(x, y);
            if (lo > hi)
                continue; // stays invalid
            int best = lo;
            double best_cost = av.at(x, y, lo);
            for (int k = lo + 1; k <= hi; ++k) {
                const double c = av.at(x, y, k);
                if (c < best_cost) {
                    best_cost = c;
                    best = k;
                }
            }
            dm.set(x, y, static_cast<float>(grid.disparity(best)));
        }
    }
    return dm;
}

} // namespace lfsgm
