#pragma once

#include "lfsgm/sgm.hpp"

namespace lfsgm {

/// Fits a parabola through the aggregated costs at the winning index and its
/// two neighbors and moves each estimate to the parabola vertex. Pixels whose
/// winning index lacks an in-window neighbor on either side, or whose window
/// holds fewer than three interior indices, keep their integer estimate, as
/// do pixels where the three costs are collinear. The vertex offset of a
/// strict minimum lands in (-0.5, 0.5) hypothesis steps.
DisparityMap subpixel_refine(const DisparityMap& dm, const AggregatedVolume& av,
                             const BorderMaps& borders,
                             const HypothesisGrid& grid);

/// Median filter over valid pixels: each valid pixel takes the median of the
/// valid values in its (truncated) window, itself included; invalid pixels
/// stay invalid. Even neighbor counts average the two middle values.
DisparityMap median_filter(const DisparityMap& dm, int window = 3);

} // namespace lfsgm
