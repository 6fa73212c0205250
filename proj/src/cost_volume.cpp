#include "lfsgm/cost_volume.hpp"

#include <atomic>

#include "lfsgm/errors.hpp"
#include "lfsgm/parallel.hpp"

namespace lfsgm {

CostVolume cross_view_cost(const CensusField& cf, const LightField& lf,
                           int view_s, int view_t, const HypothesisGrid& grid,
                           int workers) {
    if (!lf.in_grid(view_s, view_t))
        throw config_error("cross view lies outside the angular grid");
    if (lf.is_reference(view_s, view_t))
        throw config_error("cross view must differ from the reference view");
    assert(cf.has_view(lf.view_index(lf.ref_s, lf.ref_t)));
    assert(cf.has_view(lf.view_index(view_s, view_t)));

    const int w = lf.width;
    const int h = lf.height;
    const int n = grid.count;
    const int ref = lf.view_index(lf.ref_s, lf.ref_t);
    const int other = lf.view_index(view_s, view_t);
    const float max_cost = 3.0f * cf.bits;
    const double du = lf.ref_s - view_s; // projection slope per unit disparity
    const double dv = lf.ref_t - view_t;

    CostVolume cv(w, h, n);
    parallel_chunks(h, workers, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < w; ++x) {
                float* cell = cv.costs.data() + cv.idx(x, y, 0);
                for (int k = 0; k < n; ++k) {
                    const double d = grid.disparity(k);
                    const long px = std::lround(x + du * d);
                    const long py = std::lround(y + dv * d);
                    if (px < 0 || px >= w || py < 0 || py >= h) {
                        cell[k] = max_cost;
                    } else {
                        cell[k] = static_cast<float>(rgb_census_distance(
                            cf, ref, x, y, other, static_cast<int>(px),
                            static_cast<int>(py)));
                    }
                }
            }
        }
    });
    cv.sampled_count = static_cast<std::uint64_t>(w) * h * n;
    return cv;
}

namespace {

struct ViewSlope {
    const ImageU8* image = nullptr;
    int index = 0;
    double du = 0.0;
    double dv = 0.0;
};

std::vector<ViewSlope> non_reference_views(const LightField& lf) {
    std::vector<ViewSlope> out;
    out.reserve(lf.view_count() - 1);
    for (int t = 0; t < lf.dim_t; ++t) {
        for (int s = 0; s < lf.dim_s; ++s) {
            if (lf.is_reference(s, t))
                continue;
            out.push_back({&lf.view(s, t), lf.view_index(s, t),
                           static_cast<double>(lf.ref_s - s),
                           static_cast<double>(lf.ref_t - t)});
        }
    }
    return out;
}

template <class PerViewCost>
CostVolume allviews_cost(const LightField& lf, const HypothesisGrid& grid,
                         const BorderMaps* borders, int workers, float max_cost,
                         PerViewCost&& per_view) {
    const int w = lf.width;
    const int h = lf.height;
    const int n = grid.count;
    if (borders)
        assert(borders->width == w && borders->height == h &&
               borders->num_hypotheses == n);

    const std::vector<ViewSlope> others = non_reference_views(lf);
    CostVolume cv(w, h, n);
    if (borders)
        cv.adopt_bounds(*borders);

    std::atomic<std::uint64_t> sampled{0};
    parallel_chunks(h, workers, [&](int y0, int y1) {
        std::uint64_t local = 0;
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < w; ++x) {
                const int klo = cv.lo_at(x, y);
                const int khi = cv.hi_at(x, y);
                float* cell = cv.costs.data() + cv.idx(x, y, 0);
                for (int k = klo; k <= khi; ++k) {
                    const double d = grid.disparity(k);
                    double acc = 0.0;
                    int in_bounds = 0;
                    for (const ViewSlope& vs : others) {
                        const double u = x + vs.du * d;
                        const double v = y + vs.dv * d;
                        float c;
                        if (per_view(vs, x, y, u, v, c)) {
                            acc += c;
                            ++in_bounds;
                        }
                    }
                    cell[k] = in_bounds > 0
                                  ? static_cast<float>(acc / in_bounds)
                                  : max_cost;
                }
                local += static_cast<std::uint64_t>(khi - klo + 1);
            }
        }
        sampled += local;
    });
    cv.sampled_count = sampled.load();
    return cv;
}

} // namespace

CostVolume allviews_cost_l2(const LightField& lf, const HypothesisGrid& grid,
                            const BorderMaps* borders, int workers) {
    const ImageU8& ref = lf.reference_view();
    return allviews_cost(
        lf, grid, borders, workers, max_l2_cost(),
        [&ref](const ViewSlope& vs, int x, int y, double u, double v, float& out) {
            const auto sample = sample_view(*vs.image, u, v, SampleMode::bilinear);
            if (!sample)
                return false;
            const float dr = sample->r - ref.at(x, y, 0);
            const float dg = sample->g - ref.at(x, y, 1);
            const float db = sample->b - ref.at(x, y, 2);
            out = std::sqrt(dr * dr + dg * dg + db * db);
            return true;
        });
}

CostVolume allviews_cost_census(const CensusField& cf, const LightField& lf,
                                const HypothesisGrid& grid,
                                const BorderMaps* borders, int workers) {
    const int ref = lf.view_index(lf.ref_s, lf.ref_t);
    assert(cf.has_view(ref));
    const int w = lf.width;
    const int h = lf.height;
    return allviews_cost(
        lf, grid, borders, workers, 3.0f * cf.bits,
        [&cf, ref, w, h](const ViewSlope& vs, int x, int y, double u, double v,
                         float& out) {
            const long px = std::lround(u);
            const long py = std::lround(v);
            if (px < 0 || px >= w || py < 0 || py >= h)
                return false;
            out = static_cast<float>(
                rgb_census_distance(cf, ref, x, y, vs.index,
                                    static_cast<int>(px), static_cast<int>(py)));
            return true;
        });
}

} // namespace lfsgm
