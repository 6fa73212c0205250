#include "lfsgm/eval.hpp"

#include <cmath>
#include <cstdint>

#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace {

void check_pair(const DisparityMap& dm, const DisparityMap& gt, int margin) {
    if (dm.width != gt.width || dm.height != gt.height)
        throw config_error("estimate and ground truth sizes differ");
    if (margin < 0 || 2 * margin >= dm.width || 2 * margin >= dm.height)
        throw config_error("margin leaves no pixels to evaluate");
}

} // namespace

double badpix(const DisparityMap& dm, const DisparityMap& gt, double threshold,
              int margin) {
    check_pair(dm, gt, margin);
    std::uint64_t evaluated = 0;
    std::uint64_t bad = 0;
    for (int y = margin; y < gt.height - margin; ++y) {
        for (int x = margin; x < gt.width - margin; ++x) {
            if (!gt.is_valid(x, y))
                continue;
            ++evaluated;
            if (!dm.is_valid(x, y) ||
                std::abs(dm.value(x, y) - gt.value(x, y)) > threshold)
                ++bad;
        }
    }
    if (evaluated == 0)
        throw config_error("ground truth has no valid pixels to evaluate");
    return 100.0 * static_cast<double>(bad) / static_cast<double>(evaluated);
}

double mse(const DisparityMap& dm, const DisparityMap& gt, bool raw,
           int margin) {
    check_pair(dm, gt, margin);
    std::uint64_t evaluated = 0;
    double sum = 0.0;
    for (int y = margin; y < gt.height - margin; ++y) {
        for (int x = margin; x < gt.width - margin; ++x) {
            if (!gt.is_valid(x, y) || !dm.is_valid(x, y))
                continue;
            const double e = static_cast<double>(dm.value(x, y)) -
                             static_cast<double>(gt.value(x, y));
            sum += e * e;
            ++evaluated;
        }
    }
    if (evaluated == 0)
        throw config_error("no pixel is valid in both maps");
    const double mean = sum / static_cast<double>(evaluated);
    return raw ? mean : mean * 100.0;
}

double m_metric(double badpix_percent, double runtime_seconds) {
    if (!(runtime_seconds > 0.0))
        throw config_error("runtime must be positive");
    return (100.0 - badpix_percent) / runtime_seconds;
}

double sampled_fraction(const CostVolume& cv) {
    const auto total = static_cast<std::uint64_t>(cv.width) * cv.height *
                       cv.num_hypotheses;
    return static_cast<double>(cv.sampled_count) / static_cast<double>(total);
}

} // namespace lfsgm
