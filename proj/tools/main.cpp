#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lfsgm/errors.hpp"
#include "lfsgm/eval.hpp"
#include "lfsgm/pfm.hpp"
#include "lfsgm/pipeline.hpp"
#include "lfsgm/synth.hpp"
#include "lfsgm/viz.hpp"

namespace fs = std::filesystem;
using namespace lfsgm;

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Ordered key=value report, printable and writable as text or JSON.
struct Report {
    std::vector<std::pair<std::string, std::string>> lines;
    nlohmann::json json = nlohmann::json::object();

    void add(const std::string& key, const std::string& value) {
        lines.emplace_back(key, value);
        json[key] = value;
    }
    void add(const std::string& key, double value) {
        lines.emplace_back(key, fmt(value));
        json[key] = value;
    }
    void add(const std::string& key, long long value) {
        lines.emplace_back(key, std::to_string(value));
        json[key] = value;
    }

    void print() const {
        for (const auto& [k, v] : lines)
            std::cout << k << "=" << v << "\n";
    }
    void save(const fs::path& path) const {
        std::ofstream out(path);
        if (!out)
            throw io_error("cannot write report " + path.string());
        for (const auto& [k, v] : lines)
            out << k << "=" << v << "\n";
    }
    void save_json(const fs::path& path) const {
        std::ofstream out(path);
        if (!out)
            throw io_error("cannot write report " + path.string());
        out << json.dump(2) << "\n";
    }
};

/// Debug dump of an integer per-pixel field as an all-valid PFM.
void dump_field(const std::vector<std::uint16_t>& field, int w, int h,
                const fs::path& path) {
    DisparityMap m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            m.set(x, y, field[static_cast<std::size_t>(y) * w + x]);
    write_pfm(m, path);
}

struct EstimateArgs {
    std::string input;
    std::string output;
    std::string png;
    std::string config;
    std::string debug_dir;
    std::string report;
    std::string json;
    std::string layout = "benchmark";
    std::string metric;
    std::string bounding;
    std::string subpixel;
    std::string pattern;
    PipelineConfig cfg; ///< flag targets; merged with the config file after parse
};

int cmd_estimate(const EstimateArgs& a, const CLI::App& sub) {
    PipelineConfig cfg;
    if (!a.config.empty())
        cfg.apply_file(a.config);
    const auto flag = [&sub](const char* name) {
        return sub.count(name) > 0;
    };
    if (flag("--hypotheses"))
        cfg.n_hypotheses = a.cfg.n_hypotheses;
    if (flag("--p1-init"))
        cfg.p1_init = a.cfg.p1_init;
    if (flag("--p2-init"))
        cfg.p2_init = a.cfg.p2_init;
    if (flag("--p1"))
        cfg.p1_final = a.cfg.p1_final;
    if (flag("--p2"))
        cfg.p2_final = a.cfg.p2_final;
    if (flag("--directions"))
        cfg.directions = a.cfg.directions;
    if (flag("--phi"))
        cfg.phi = a.cfg.phi;
    if (flag("--lambda"))
        cfg.lambda = a.cfg.lambda;
    if (flag("--median-window"))
        cfg.median_window = a.cfg.median_window;
    if (flag("--fill-passes"))
        cfg.fill_passes = a.cfg.fill_passes;
    if (flag("--fill-min-support"))
        cfg.fill_min_support = a.cfg.fill_min_support;
    if (flag("--sobel"))
        cfg.sobel_threshold = a.cfg.sobel_threshold;
    if (flag("--workers"))
        cfg.workers = a.cfg.workers;
    if (!a.metric.empty())
        cfg.metric = parse_metric(a.metric);
    if (!a.bounding.empty())
        cfg.bounding = a.bounding == "on";
    if (!a.subpixel.empty())
        cfg.subpixel = a.subpixel == "on";
    if (!a.pattern.empty())
        cfg.census_pattern = a.pattern;
    cfg.validate();

    const auto t0 = std::chrono::steady_clock::now();
    const LightField lf = load_lightfield(
        a.input, a.layout == "row" ? LfLayout::row : LfLayout::benchmark);
    const EstimateResult res = run_estimate(lf, cfg);

    write_pfm(res.disparity, a.output);
    if (!a.png.empty())
        write_png(a.png, colorize(res.disparity, lf.disp_min, lf.disp_max));
    if (!a.debug_dir.empty()) {
        fs::create_directories(a.debug_dir);
        const fs::path d = a.debug_dir;
        dump_field(res.borders.lo, lf.width, lf.height, d / "borders_lo.pfm");
        dump_field(res.borders.hi, lf.width, lf.height, d / "borders_hi.pfm");
        std::vector<std::uint16_t> mask(res.borders.full_range_mask.begin(),
                                        res.borders.full_range_mask.end());
        dump_field(mask, lf.width, lf.height, d / "full_range_mask.pfm");
        write_pfm(res.wta_map, d / "wta.pfm");
        if (res.has_initial) {
            write_pfm(res.initial, d / "initial.pfm");
            write_png(d / "initial.png",
                      colorize(res.initial, lf.disp_min, lf.disp_max));
        }
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    Report rep;
    rep.add("width", static_cast<long long>(lf.width));
    rep.add("height", static_cast<long long>(lf.height));
    rep.add("views", static_cast<long long>(lf.view_count()));
    rep.add("hypotheses", static_cast<long long>(cfg.n_hypotheses));
    rep.add("metric", cfg.metric == CostMetric::l2 ? "l2" : "census");
    rep.add("bounding", cfg.bounding ? "on" : "off");
    rep.add("workers", static_cast<long long>(cfg.workers));
    rep.add("compute_seconds", res.compute_seconds);
    rep.add("total_seconds", total);
    rep.add("sampled_fraction", res.sampled_fraction);
    rep.add("valid_fraction",
            static_cast<double>(res.disparity.valid_count()) /
                (static_cast<double>(lf.width) * lf.height));
    rep.print();
    if (!a.report.empty())
        rep.save(a.report);
    if (!a.json.empty())
        rep.save_json(a.json);
    return 0;
}

struct EvalArgs {
    std::string estimate;
    std::string gt;
    std::string report;
    std::string json;
    double threshold = 0.07;
    int margin = 0;
    double runtime = 0.0;
    double sampled = -1.0;
    bool raw_mse = false;
};

int cmd_eval(const EvalArgs& a) {
    const DisparityMap dm = read_pfm(a.estimate);
    const DisparityMap gt = read_pfm(a.gt);

    Report rep;
    rep.add("badpix_percent", badpix(dm, gt, a.threshold, a.margin));
    rep.add("mse", mse(dm, gt, a.raw_mse, a.margin));
    rep.add("threshold", a.threshold);
    rep.add("margin", static_cast<long long>(a.margin));
    if (a.runtime > 0.0) {
        rep.add("runtime_seconds", a.runtime);
        rep.add("m_metric", m_metric(badpix(dm, gt, a.threshold, a.margin),
                                     a.runtime));
    }
    if (a.sampled >= 0.0)
        rep.add("sampled_fraction", a.sampled);
    rep.print();
    if (!a.report.empty())
        rep.save(a.report);
    if (!a.json.empty())
        rep.save_json(a.json);
    return 0;
}

struct SynthArgs {
    std::string texture;
    std::string output;
    SynthParams params;
};

int cmd_synth(const SynthArgs& a) {
    const ImageU8 tex = read_png(a.texture);
    const LightField lf = synth_lightfield(tex, a.params);
    save_lightfield(lf, a.output);
    write_pfm(synth_ground_truth(tex, a.params), fs::path(a.output) / "gt.pfm");

    Report rep;
    rep.add("output", a.output);
    rep.add("views", static_cast<long long>(lf.view_count()));
    rep.add("width", static_cast<long long>(lf.width));
    rep.add("height", static_cast<long long>(lf.height));
    rep.add("d_star", a.params.d_star);
    rep.add("disp_min", lf.disp_min);
    rep.add("disp_max", lf.disp_max);
    rep.print();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Light field disparity estimation with bounded "
                 "semi-global matching"};
    app.require_subcommand(1);

    EstimateArgs ea;
    auto* est = app.add_subcommand(
        "estimate", "Compute a disparity map for a light field directory");
    est->add_option("-i,--input", ea.input, "light field directory")
        ->required();
    est->add_option("-o,--output", ea.output, "output disparity PFM")
        ->required();
    est->add_option("--png", ea.png, "also write a colormapped PNG");
    est->add_option("--config", ea.config, "key=value config file")
        ->check(CLI::ExistingFile);
    est->add_option("--layout", ea.layout, "benchmark (S x T grid) or row")
        ->check(CLI::IsMember({"benchmark", "row"}));
    est->add_option("--hypotheses", ea.cfg.n_hypotheses,
                    "disparity hypothesis count");
    est->add_option("--p1-init", ea.cfg.p1_init, "initial-stage P1");
    est->add_option("--p2-init", ea.cfg.p2_init, "initial-stage P2");
    est->add_option("--p1", ea.cfg.p1_final, "final-stage P1");
    est->add_option("--p2", ea.cfg.p2_final, "final-stage P2");
    est->add_option("--directions", ea.cfg.directions,
                    "aggregation directions (4, 8 or 16)");
    est->add_option("--phi", ea.cfg.phi, "fusion threshold, index steps");
    est->add_option("--lambda", ea.cfg.lambda,
                    "search border half-width, index steps");
    est->add_option("--median-window", ea.cfg.median_window,
                    "median / hole-fill window");
    est->add_option("--fill-passes", ea.cfg.fill_passes, "hole-fill passes");
    est->add_option("--fill-min-support", ea.cfg.fill_min_support,
                    "valid neighbors required to fill a hole");
    est->add_option("--sobel", ea.cfg.sobel_threshold,
                    "edge-exclusion gradient threshold");
    est->add_option("--metric", ea.metric, "final cost metric: l2 or census")
        ->check(CLI::IsMember({"l2", "census"}));
    est->add_option("--bounding", ea.bounding, "bounded search: on or off")
        ->check(CLI::IsMember({"on", "off"}));
    est->add_option("--subpixel", ea.subpixel,
                    "parabolic refinement: on or off")
        ->check(CLI::IsMember({"on", "off"}));
    est->add_option("--census-pattern", ea.pattern,
                    "census offsets \"(du,dv),...\"");
    est->add_option("--workers", ea.cfg.workers, "worker threads");
    est->add_option("--report", ea.report, "write key=value report here");
    est->add_option("--json", ea.json, "write JSON report here");
    est->add_option("--debug-dir", ea.debug_dir,
                    "dump initial map and borders here");

    EvalArgs va;
    auto* ev = app.add_subcommand(
        "eval", "Score a disparity PFM against a ground truth PFM");
    ev->add_option("-e,--estimate", va.estimate, "estimated disparity PFM")
        ->required();
    ev->add_option("-g,--gt", va.gt, "ground truth PFM")
        ->required();
    ev->add_option("--threshold", va.threshold, "BadPix threshold");
    ev->add_option("--margin", va.margin, "exclude this border margin, px");
    ev->add_option("--runtime", va.runtime,
                   "runtime in seconds, enables the M metric");
    ev->add_option("--sampled-fraction", va.sampled,
                   "echo a sampled fraction into the report");
    ev->add_flag("--raw-mse", va.raw_mse, "report MSE without the x100 scale");
    ev->add_option("--report", va.report, "write key=value report here");
    ev->add_option("--json", va.json, "write JSON report here");

    SynthArgs sa;
    auto* sy = app.add_subcommand(
        "synth", "Generate a constant-disparity synthetic light field");
    sy->add_option("-t,--texture", sa.texture, "RGB texture PNG")
        ->required();
    sy->add_option("-o,--output", sa.output, "scene directory to create")
        ->required();
    sy->add_option("--dstar", sa.params.d_star, "plane disparity");
    sy->add_option("--dim-s", sa.params.dim_s, "horizontal view count");
    sy->add_option("--dim-t", sa.params.dim_t, "vertical view count");
    sy->add_option("--sigma", sa.params.noise_sigma, "Gaussian noise sigma");
    sy->add_option("--seed", sa.params.seed, "noise seed");
    sy->add_option("--range-below", sa.params.range_below,
                   "disp_min = dstar - this");
    sy->add_option("--range-above", sa.params.range_above,
                   "disp_max = dstar + this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 3;
    }

    try {
        if (est->parsed())
            return cmd_estimate(ea, *est);
        if (ev->parsed())
            return cmd_eval(va);
        return cmd_synth(sa);
    } catch (const io_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
