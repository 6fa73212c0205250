#pragma once

#include <cassert>
#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

#include "lfsgm/image.hpp"

namespace lfsgm {

/// Projects a reference-view pixel into view (s, t) under disparity d:
///   u' = u + (ref_s - s) * d,  v' = v + (ref_t - t) * d.
/// No clamping; the caller checks bounds.
struct Projection {
    double u = 0.0;
    double v = 0.0;
};

inline Projection project(double u, double v, int s, int t, double d,
                          int ref_s, int ref_t) {
    return {u + (ref_s - s) * d, v + (ref_t - t) * d};
}

/// S x T grid of RGB views sharing one image size, with the scene's disparity
/// range (pixels per unit angular step) and the reference view coordinates.
/// A 3D light field (single row of views) is represented as dim_t == 1.
/// Immutable after construction; safe to share across workers.
struct LightField {
    int width = 0;
    int height = 0;
    int dim_s = 0; ///< horizontal view count S
    int dim_t = 0; ///< vertical view count T
    double disp_min = 0.0;
    double disp_max = 0.0;
    int ref_s = 0;
    int ref_t = 0;
    std::vector<ImageU8> views; ///< row-major: index = t * dim_s + s

    int view_count() const { return dim_s * dim_t; }
    bool in_grid(int s, int t) const {
        return s >= 0 && s < dim_s && t >= 0 && t < dim_t;
    }
    int view_index(int s, int t) const {
        assert(in_grid(s, t));
        return t * dim_s + s;
    }
    const ImageU8& view(int s, int t) const { return views[view_index(s, t)]; }
    const ImageU8& reference_view() const { return view(ref_s, ref_t); }
    bool is_reference(int s, int t) const { return s == ref_s && t == ref_t; }

    /// Grid-center reference for the given angular dimensions.
    static void center_reference(int dim_s, int dim_t, int& ref_s, int& ref_t) {
        ref_s = (dim_s - 1) / 2;
        ref_t = (dim_t - 1) / 2;
    }

    /// Throws config_error when the container violates its invariants
    /// (empty grid, mismatched view sizes, disp_min >= disp_max, ref outside).
    void validate() const;
};

/// N uniformly spaced disparity hypotheses over [d_min, d_max];
/// index 0 maps to d_min and index count-1 to d_max exactly.
struct HypothesisGrid {
    double d_min = 0.0;
    double d_max = 0.0;
    int count = 0;

    HypothesisGrid() = default;
    HypothesisGrid(double lo, double hi, int n);

    double step() const { return (d_max - d_min) / (count - 1); }
    double disparity(int k) const {
        assert(k >= 0 && k < count);
        if (k == count - 1)
            return d_max;
        return d_min + k * step();
    }
    /// Nearest hypothesis index, clamped into [0, count-1].
    int index_of(double d) const {
        const long k = std::lround((d - d_min) / step());
        if (k < 0)
            return 0;
        if (k >= count)
            return count - 1;
        return static_cast<int>(k);
    }
};

/// Fractional disparity per pixel plus an explicit validity mask. Invalid
/// pixels store NaN, which never compares equal to a valid disparity.
struct DisparityMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;
    std::vector<std::uint8_t> valid;

    DisparityMap() = default;
    DisparityMap(int w, int h)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * h,
                 std::numeric_limits<float>::quiet_NaN()),
          valid(static_cast<std::size_t>(w) * h, 0) {}

    static DisparityMap constant(int w, int h, float d) {
        DisparityMap m(w, h);
        std::fill(m.values.begin(), m.values.end(), d);
        std::fill(m.valid.begin(), m.valid.end(), std::uint8_t{1});
        return m;
    }

    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    bool is_valid(int x, int y) const { return valid[idx(x, y)] != 0; }
    float value(int x, int y) const { return values[idx(x, y)]; }
    void set(int x, int y, float d) {
        values[idx(x, y)] = d;
        valid[idx(x, y)] = 1;
    }
    void set_invalid(int x, int y) {
        values[idx(x, y)] = std::numeric_limits<float>::quiet_NaN();
        valid[idx(x, y)] = 0;
    }
    std::size_t valid_count() const;
};

enum class LfLayout {
    benchmark, ///< S x T grid, angular dims taken from the dataset config
    row        ///< single row of views (T = 1)
};

/// Loads a directory of numbered 8-bit PNG views (row-major angular order)
/// plus a plain-text key=value config carrying the disparity range and, for
/// grid layouts, the angular dimensions. Accepted config names include the
/// 4D-benchmark convention (parameters.cfg with disp_min/disp_max and
/// num_cams_x/num_cams_y). Throws io_error / config_error.
LightField load_lightfield(const std::filesystem::path& dir, LfLayout layout);

/// Writes views as input_Cam%03d.png plus parameters.cfg; load_lightfield
/// on the result reproduces the light field bit-exactly.
void save_lightfield(const LightField& lf, const std::filesystem::path& dir);

} // namespace lfsgm
