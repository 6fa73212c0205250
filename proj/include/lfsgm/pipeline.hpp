#pragma once

#include <filesystem>
#include <string>

#include "lfsgm/census.hpp"
#include "lfsgm/init_disparity.hpp"
#include "lfsgm/postproc.hpp"

namespace lfsgm {

enum class CostMetric { l2, census };

CostMetric parse_metric(const std::string& name); ///< "l2" | "census"

/// Every tunable of the two-stage pipeline. Defaults are the working set:
/// initial-stage penalties 21/45, final-stage 17/35, 16 directions, 64
/// hypotheses, phi 3 and lambda 2 index steps, 3x3 median windows, 2 fill
/// passes, Sobel threshold 96, L2 final metric, bounding on, one worker.
struct PipelineConfig {
    int n_hypotheses = 64;
    double p1_init = 21.0;
    double p2_init = 45.0;
    double p1_final = 17.0;
    double p2_final = 35.0;
    int directions = 16;
    std::string census_pattern; ///< empty = sparse 7x7 default
    double phi = 3.0;           ///< fusion threshold, index steps
    int lambda = 2;             ///< border half-width, index steps
    int median_window = 3;      ///< also the hole-fill window
    int fill_passes = 2;
    int fill_min_support = 3;
    double sobel_threshold = 96.0;
    CostMetric metric = CostMetric::l2;
    bool bounding = true;
    bool subpixel = true;
    int workers = 1;

    /// Overrides fields from a key=value file; unknown keys are ignored.
    void apply_file(const std::filesystem::path& path);

    void validate() const; ///< throws config_error

    CensusPattern pattern() const; ///< parsed census_pattern or the default
};

/// Everything cmd_estimate needs to report and dump.
struct EstimateResult {
    DisparityMap disparity;
    DisparityMap wta_map; ///< final-stage decisions before refinement
    DisparityMap initial; ///< fused+filled map (empty when bounding off)
    BorderMaps borders;
    bool has_initial = false;
    double compute_seconds = 0.0;
    double sampled_fraction = 1.0; ///< of the final-stage cost volume
};

/// The full two-stage pipeline: census, per-cross-view SGM, fusion, hole
/// filling, borders (all skipped when bounding is off), then the all-views
/// cost under the chosen metric, bounded SGM, WTA, sub-pixel refinement and
/// median filtering. Deterministic for any worker count.
EstimateResult run_estimate(const LightField& lf, const PipelineConfig& cfg);

} // namespace lfsgm
