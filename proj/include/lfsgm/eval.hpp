#pragma once

#include "lfsgm/cost_volume.hpp"

namespace lfsgm {

/// Metrics of one estimate against ground truth.
struct EvalReport {
    double badpix_percent = 0.0; ///< threshold defaults to 0.07
    double mse = 0.0;            ///< scaled by 100 unless raw was requested
    double runtime_seconds = 0.0;
    double m_metric = 0.0;          ///< correct percent per second
    double sampled_fraction = 1.0;  ///< evaluated / full-volume samples
};

/// Percentage of evaluated pixels whose absolute error exceeds the threshold.
/// Evaluation runs over pixels valid in the ground truth and at least
/// `margin` pixels away from every image border; estimate pixels that are
/// invalid there count as bad. Throws config_error on a size mismatch or
/// when no pixel qualifies.
double badpix(const DisparityMap& dm, const DisparityMap& gt,
              double threshold = 0.07, int margin = 0);

/// Mean squared error over pixels valid in both maps (and outside the
/// margin), scaled by 100 unless `raw`. Throws like badpix.
double mse(const DisparityMap& dm, const DisparityMap& gt, bool raw = false,
           int margin = 0);

/// (100 - badpix_percent) / runtime_seconds. Throws config_error when the
/// runtime is not positive.
double m_metric(double badpix_percent, double runtime_seconds);

/// Fraction of the full W*H*N volume the cost computation actually sampled.
double sampled_fraction(const CostVolume& cv);

} // namespace lfsgm
