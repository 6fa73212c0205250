#include "lfsgm/postproc.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include "lfsgm/errors.hpp"

namespace lfsgm {

DisparityMap subpixel_refine(const DisparityMap& dm, const AggregatedVolume& av,
                             const BorderMaps& borders,
                             const HypothesisGrid& grid) {
    assert(dm.width == av.width && dm.height == av.height);
    assert(dm.width == borders.width && dm.height == borders.height);

    DisparityMap out = dm;
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!dm.is_valid(x, y))
                continue;
            const int lo = borders.lo_at(x, y);
            const int hi = borders.hi_at(x, y);
            if (hi - lo < 4)
                continue; // fewer than 3 interior indices
            const int k = grid.index_of(dm.value(x, y));
            if (k < lo + 1 || k > hi - 1)
                continue;
            const double cm = av.at(x, y, k - 1);
            const double c0 = av.at(x, y, k);
            const double cp = av.at(x, y, k + 1);
            const double denom = 2.0 * (cm - 2.0 * c0 + cp);
            if (denom == 0.0)
                continue;
            const double offset = (cm - cp) / denom;
            out.set(x, y,
                    static_cast<float>(dm.value(x, y) + offset * grid.step()));
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

DisparityMap median_filter(const DisparityMap& dm, int window) {
    if (window < 1 || window % 2 == 0)
        throw config_error("median window must be odd");
    const int r = window / 2;

    DisparityMap out = dm;
    std::vector<float> vals;
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!dm.is_valid(x, y))
                continue;
            vals.clear();
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || nx >= dm.width || ny < 0 || ny >= dm.height)
                        continue;
                    if (dm.is_valid(nx, ny))
                        vals.push_back(dm.value(nx, ny));
                }
            }
            out.set(x, y, median_of(vals));
        }
    }
    return out;
}

} // namespace lfsgm
