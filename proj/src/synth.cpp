#include "lfsgm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace {

int wrap(long i, int n) {
    const long m = i % n;
    return static_cast<int>(m < 0 ? m + n : m);
}

/// Bilinear sample with toroidal wraparound; always in bounds.
double sample_toroidal(const ImageU8& tex, double u, double v, int c) {
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    const double au = u - fu;
    const double av = v - fv;
    const int x0 = wrap(static_cast<long>(fu), tex.width);
    const int x1 = wrap(static_cast<long>(fu) + 1, tex.width);
    const int y0 = wrap(static_cast<long>(fv), tex.height);
    const int y1 = wrap(static_cast<long>(fv) + 1, tex.height);
    return (1 - au) * (1 - av) * tex.at(x0, y0, c) +
           au * (1 - av) * tex.at(x1, y0, c) +
           (1 - au) * av * tex.at(x0, y1, c) +
           au * av * tex.at(x1, y1, c);
}

void check(const ImageU8& texture, const SynthParams& p) {
    if (texture.width < 2 || texture.height < 2 || texture.channels != 3)
        throw config_error("texture must be RGB and at least 2x2");
    if (p.dim_s < 1 || p.dim_t < 1 || (p.dim_s == 1 && p.dim_t == 1))
        throw config_error("need at least two views");
    if (p.noise_sigma < 0)
        throw config_error("noise sigma must be >= 0");
    if (!(p.range_below > 0) || !(p.range_above > 0))
        throw config_error("disparity range must bracket d_star");
    int ref_s = 0;
    int ref_t = 0;
    LightField::center_reference(p.dim_s, p.dim_t, ref_s, ref_t);
    const double shift_u =
        std::max(ref_s, p.dim_s - 1 - ref_s) * std::abs(p.d_star);
    const double shift_v =
        std::max(ref_t, p.dim_t - 1 - ref_t) * std::abs(p.d_star);
    if (shift_u >= texture.width || shift_v >= texture.height)
        throw config_error("texture too small for the requested shift");
}

} // namespace

LightField synth_lightfield(const ImageU8& texture, const SynthParams& p) {
    check(texture, p);

    LightField lf;
    lf.width = texture.width;
    lf.height = texture.height;
    lf.dim_s = p.dim_s;
    lf.dim_t = p.dim_t;
    LightField::center_reference(p.dim_s, p.dim_t, lf.ref_s, lf.ref_t);
    lf.disp_min = p.d_star - p.range_below;
    lf.disp_max = p.d_star + p.range_above;

    std::mt19937 rng(p.seed);
    std::normal_distribution<double> noise(0.0, p.noise_sigma);

    lf.views.reserve(static_cast<std::size_t>(p.dim_s) * p.dim_t);
    for (int t = 0; t < p.dim_t; ++t) {
        for (int s = 0; s < p.dim_s; ++s) {
            // A plane point at reference pixel (u, v) appears here at
            // (u + (ref_s - s) d*, v + (ref_t - t) d*); invert that.
            const double du = (lf.ref_s - s) * p.d_star;
            const double dv = (lf.ref_t - t) * p.d_star;
            ImageU8 view(lf.width, lf.height);
            for (int y = 0; y < lf.height; ++y) {
                for (int x = 0; x < lf.width; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        double v = sample_toroidal(texture, x - du, y - dv, c);
                        if (p.noise_sigma > 0)
                            v += noise(rng);
                        view.at(x, y, c) = static_cast<std::uint8_t>(
                            std::lround(std::clamp(v, 0.0, 255.0)));
                    }
                }
            }
            lf.views.push_back(std::move(view));
        }
    }
    lf.validate();
    return lf;
}

DisparityMap synth_ground_truth(const ImageU8& texture,
                                const SynthParams& p) {
    check(texture, p);
    return DisparityMap::constant(texture.width, texture.height,
                                  static_cast<float>(p.d_star));
}

} // namespace lfsgm
