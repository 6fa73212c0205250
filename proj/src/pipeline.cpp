#include "lfsgm/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <vector>

#include "lfsgm/config_file.hpp"
#include "lfsgm/errors.hpp"
#include "lfsgm/eval.hpp"

namespace lfsgm {

CostMetric parse_metric(const std::string& name) {
    if (name == "l2")
        return CostMetric::l2;
    if (name == "census")
        return CostMetric::census;
    throw config_error("unknown metric '" + name + "' (expected l2 or census)");
}

namespace {

bool parse_bool(const std::string& raw) {
    std::string v = raw;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "on" || v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "off" || v == "false" || v == "0" || v == "no")
        return false;
    throw config_error("expected on/off, got '" + raw + "'");
}

} // namespace

void PipelineConfig::apply_file(const std::filesystem::path& path) {
    const auto kv = read_key_value_file(path);
    n_hypotheses = kv_int(kv, {"n_hypotheses", "hypotheses", "n_d"},
                          n_hypotheses);
    p1_init = kv_double(kv, {"p1_init"}, p1_init);
    p2_init = kv_double(kv, {"p2_init"}, p2_init);
    p1_final = kv_double(kv, {"p1_final", "p1"}, p1_final);
    p2_final = kv_double(kv, {"p2_final", "p2"}, p2_final);
    directions = kv_int(kv, {"directions"}, directions);
    phi = kv_double(kv, {"phi"}, phi);
    lambda = kv_int(kv, {"lambda"}, lambda);
    median_window = kv_int(kv, {"median_window"}, median_window);
    fill_passes = kv_int(kv, {"fill_passes"}, fill_passes);
    fill_min_support = kv_int(kv, {"fill_min_support"}, fill_min_support);
    sobel_threshold = kv_double(kv, {"sobel_threshold"}, sobel_threshold);
    workers = kv_int(kv, {"workers"}, workers);
    if (auto it = kv.find("census_pattern"); it != kv.end())
        census_pattern = it->second;
    if (auto it = kv.find("metric"); it != kv.end())
        metric = parse_metric(it->second);
    if (auto it = kv.find("bounding"); it != kv.end())
        bounding = parse_bool(it->second);
    if (auto it = kv.find("subpixel"); it != kv.end())
        subpixel = parse_bool(it->second);
}

void PipelineConfig::validate() const {
    if (n_hypotheses < 2)
        throw config_error("need at least 2 hypotheses");
    if (p1_init < 0 || p1_init > p2_init)
        throw config_error("initial penalties need 0 <= P1 <= P2");
    if (p1_final < 0 || p1_final > p2_final)
        throw config_error("final penalties need 0 <= P1 <= P2");
    SgmParams::direction_set(directions); // throws on unsupported counts
    if (phi < 0)
        throw config_error("phi must be >= 0");
    if (lambda < 0)
        throw config_error("lambda must be >= 0");
    if (median_window < 1 || median_window % 2 == 0)
        throw config_error("median window must be odd");
    if (fill_passes < 1 || fill_passes > 2)
        throw config_error("fill passes must be 1 or 2");
    if (fill_min_support < 1)
        throw config_error("fill min support must be >= 1");
    if (sobel_threshold < 0)
        throw config_error("sobel threshold must be >= 0");
    if (workers < 1)
        throw config_error("workers must be >= 1");
    pattern(); // throws on a malformed census pattern
}

CensusPattern PipelineConfig::pattern() const {
    CensusPattern p = census_pattern.empty()
                          ? CensusPattern::sparse7x7()
                          : CensusPattern::parse(census_pattern);
    p.validate();
    return p;
}

EstimateResult run_estimate(const LightField& lf, const PipelineConfig& cfg) {
    lf.validate();
    cfg.validate();
    const HypothesisGrid grid(lf.disp_min, lf.disp_max, cfg.n_hypotheses);
    const CensusPattern pat = cfg.pattern();
    const auto dirs = SgmParams::direction_set(cfg.directions);

    const auto t0 = std::chrono::steady_clock::now();

    EstimateResult res;
    CensusField cf;
    const bool census_all = cfg.metric == CostMetric::census;

    if (cfg.bounding) {
        if (census_all) {
            cf = census_transform(lf, pat, cfg.workers);
        } else {
            std::vector<int> idx{lf.view_index(lf.ref_s, lf.ref_t)};
            for (const auto& [s, t] : cross_view_set(lf))
                idx.push_back(lf.view_index(s, t));
            cf = census_transform(lf, pat, idx, cfg.workers);
        }
        const SgmParams init_params{cfg.p1_init, cfg.p2_init, dirs};
        const auto maps =
            intermediate_maps(lf, cf, init_params, grid, cfg.workers);
        DisparityMap fused = fuse(maps, cfg.phi, grid);
        fused = fill_holes(fused, cfg.median_window, cfg.fill_passes,
                           cfg.fill_min_support);
        const auto edges = sobel_edges(lf.reference_view(), cfg.sobel_threshold);
        res.borders = compute_borders(fused, cfg.lambda, edges, grid);
        res.initial = std::move(fused);
        res.has_initial = true;
    } else {
        res.borders = BorderMaps::full(lf.width, lf.height, cfg.n_hypotheses);
        if (census_all)
            cf = census_transform(lf, pat, cfg.workers);
    }

    const BorderMaps* bounds = cfg.bounding ? &res.borders : nullptr;
    const CostVolume final_cost =
        cfg.metric == CostMetric::l2
            ? allviews_cost_l2(lf, grid, bounds, cfg.workers)
            : allviews_cost_census(cf, lf, grid, bounds, cfg.workers);

    const SgmParams final_params{cfg.p1_final, cfg.p2_final, dirs};
    const AggregatedVolume av = aggregate_all(final_cost, final_params,
                                              cfg.workers);
    res.wta_map = wta(av, grid);
    DisparityMap dm = cfg.subpixel
                          ? subpixel_refine(res.wta_map, av, res.borders, grid)
                          : res.wta_map;
    res.disparity = median_filter(dm, cfg.median_window);

    res.sampled_fraction = sampled_fraction(final_cost);
    res.compute_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

} // namespace lfsgm
