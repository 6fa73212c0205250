#include "lfsgm/light_field.hpp"

#include <cstdio>

#include "lfsgm/config_file.hpp"
#include "lfsgm/errors.hpp"

namespace lfsgm {

namespace fs = std::filesystem;

void LightField::validate() const {
    if (dim_s < 1 || dim_t < 1)
        throw config_error("light field needs at least one view per axis");
    if (static_cast<int>(views.size()) != dim_s * dim_t)
        throw config_error("light field view count does not match angular dims");
    if (!(disp_min < disp_max))
        throw config_error("disparity range requires disp_min < disp_max");
    if (!in_grid(ref_s, ref_t))
        throw config_error("reference view lies outside the angular grid");
    for (std::size_t i = 0; i < views.size(); ++i) {
        const ImageU8& v = views[i];
        if (v.width != width || v.height != height || v.channels != 3)
            throw config_error("view " + std::to_string(i) +
                               " has mismatched dimensions");
    }
}

HypothesisGrid::HypothesisGrid(double lo, double hi, int n)
    : d_min(lo), d_max(hi), count(n) {
    if (n < 2)
        throw config_error("hypothesis grid needs at least 2 hypotheses");
    if (!(lo < hi))
        throw config_error("hypothesis grid requires d_min < d_max");
}

std::size_t DisparityMap::valid_count() const {
    std::size_t n = 0;
    for (std::uint8_t v : valid)
        n += v;
    return n;
}

namespace {

const char* const kViewPatterns[] = {
    "input_Cam%03d.png", "view%03d.png", "%03d.png",
    "%d.png",            "view%d.png",   "im%d.png",
};

std::string format_index(const char* pattern, int index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, index);
    return buf;
}

const char* find_view_pattern(const fs::path& dir) {
    for (const char* pattern : kViewPatterns)
        if (fs::exists(dir / format_index(pattern, 0)))
            return pattern;
    return nullptr;
}

fs::path find_config(const fs::path& dir) {
    for (const char* name : {"parameters.cfg", "config.cfg", "lf.cfg"})
        if (fs::exists(dir / name))
            return dir / name;
    // Fall back to a unique *.cfg in the directory.
    fs::path found;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".cfg") {
            if (!found.empty())
                throw io_error("multiple .cfg files in " + dir.string() +
                               "; expected parameters.cfg");
            found = entry.path();
        }
    }
    if (found.empty())
        throw io_error("no config file (*.cfg) found in " + dir.string());
    return found;
}

} // namespace

LightField load_lightfield(const fs::path& dir, LfLayout layout) {
    if (!fs::is_directory(dir))
        throw io_error("not a directory: " + dir.string());

    const auto kv = read_key_value_file(find_config(dir));
    if (!kv_has(kv, {"disp_min", "dmin", "disp_minimum"}) ||
        !kv_has(kv, {"disp_max", "dmax", "disp_maximum"}))
        throw config_error("dataset config lacks disp_min/disp_max");

    LightField lf;
    lf.disp_min = kv_double(kv, {"disp_min", "dmin", "disp_minimum"}, 0.0);
    lf.disp_max = kv_double(kv, {"disp_max", "dmax", "disp_maximum"}, 0.0);

    const char* pattern = find_view_pattern(dir);
    if (!pattern)
        throw io_error("no view images found in " + dir.string() +
                       " (expected e.g. input_Cam000.png)");

    if (layout == LfLayout::benchmark) {
        lf.dim_s = kv_int(kv, {"num_cams_x", "num_cams_s"}, 0);
        lf.dim_t = kv_int(kv, {"num_cams_y", "num_cams_t"}, 0);
        if (lf.dim_s <= 0 || lf.dim_t <= 0)
            throw config_error(
                "benchmark layout needs num_cams_x/num_cams_y in the config");
    } else {
        lf.dim_t = 1;
        lf.dim_s = kv_int(kv, {"num_cams_x", "num_cams_s"}, 0);
        if (lf.dim_s <= 0) {
            int n = 0;
            while (fs::exists(dir / format_index(pattern, n)))
                ++n;
            lf.dim_s = n;
        }
        if (lf.dim_s < 2)
            throw config_error("row layout needs at least 2 views");
    }

    const int total = lf.dim_s * lf.dim_t;
    lf.views.reserve(total);
    for (int i = 0; i < total; ++i) {
        const fs::path p = dir / format_index(pattern, i);
        if (!fs::exists(p))
            throw io_error("missing view index " + std::to_string(i) + " (" +
                           p.filename().string() + ")");
        lf.views.push_back(read_png(p));
    }

    lf.width = lf.views.front().width;
    lf.height = lf.views.front().height;
    for (int i = 0; i < total; ++i) {
        if (lf.views[i].width != lf.width || lf.views[i].height != lf.height)
            throw io_error("view " + std::to_string(i) +
                           " has inconsistent dimensions (" +
                           std::to_string(lf.views[i].width) + "x" +
                           std::to_string(lf.views[i].height) + ", expected " +
                           std::to_string(lf.width) + "x" +
                           std::to_string(lf.height) + ")");
    }

    LightField::center_reference(lf.dim_s, lf.dim_t, lf.ref_s, lf.ref_t);
    lf.validate();
    return lf;
}

void save_lightfield(const LightField& lf, const fs::path& dir) {
    fs::create_directories(dir);
    for (int i = 0; i < lf.view_count(); ++i)
        write_png(dir / format_index("input_Cam%03d.png", i), lf.views[i]);

    std::FILE* fp = std::fopen((dir / "parameters.cfg").string().c_str(), "w");
    if (!fp)
        throw io_error("cannot write config in " + dir.string());
    std::fprintf(fp, "[intrinsics]\n");
    std::fprintf(fp, "image_resolution_x_px = %d\n", lf.width);
    std::fprintf(fp, "image_resolution_y_px = %d\n", lf.height);
    std::fprintf(fp, "[extrinsics]\n");
    std::fprintf(fp, "num_cams_x = %d\n", lf.dim_s);
    std::fprintf(fp, "num_cams_y = %d\n", lf.dim_t);
    std::fprintf(fp, "[meta]\n");
    std::fprintf(fp, "disp_min = %.17g\n", lf.disp_min);
    std::fprintf(fp, "disp_max = %.17g\n", lf.disp_max);
    std::fclose(fp);
}

} // namespace lfsgm
