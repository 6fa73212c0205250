#pragma once

#include "lfsgm/light_field.hpp"

namespace lfsgm {

/// Colormapped rendering of a disparity map: [d_min, d_max] maps linearly
/// onto a viridis-style gradient (values outside clamp), invalid pixels come
/// out black. Throws config_error when d_min >= d_max.
ImageU8 colorize(const DisparityMap& dm, double d_min, double d_max);

} // namespace lfsgm
