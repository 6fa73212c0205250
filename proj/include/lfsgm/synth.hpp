#pragma once

#include "lfsgm/light_field.hpp"

namespace lfsgm {

/// Synthetic scene parameters: a fronto-parallel textured plane at constant
/// disparity d_star, viewed from an S x T grid. The written disparity range
/// brackets d_star asymmetrically so that with the default 64 hypotheses the
/// plane lands exactly on a hypothesis.
struct SynthParams {
    int dim_s = 5;
    int dim_t = 5;
    double d_star = 0.0;
    double noise_sigma = 0.0; ///< Gaussian, per 8-bit channel sample
    unsigned seed = 7;
    double range_below = 3.2; ///< disp_min = d_star - range_below
    double range_above = 3.1; ///< disp_max = d_star + range_above
};

/// Builds the light field by shifting the texture per view, sampling it
/// toroidally (wraparound) so every pixel of every view lies on the plane.
/// Throws config_error when the texture is too small for the largest shift
/// or the parameters are degenerate.
LightField synth_lightfield(const ImageU8& texture, const SynthParams& params);

/// The matching ground truth: constant d_star, all pixels valid.
DisparityMap synth_ground_truth(const ImageU8& texture,
                                const SynthParams& params);

} // namespace lfsgm
