#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lfsgm/sgm.hpp"

namespace lfsgm {

/// The cross-lying views {(ref_s, 0), (ref_s, T-1), (0, ref_t), (S-1, ref_t)}
/// with the reference view and duplicates removed; for a 3D field (T == 1)
/// this degenerates to the two horizontal extremes. Throws config_error on a
/// 1x1 angular grid.
std::vector<std::pair<int, int>> cross_view_set(const LightField& lf);

/// One disparity map per cross-lying view: census matching cost against that
/// view, path aggregation with the initial-stage penalties, winner-takes-all.
/// Every map is in reference-view coordinates. The census field must cover
/// the reference and all cross-lying views.
std::vector<DisparityMap> intermediate_maps(const LightField& lf,
                                            const CensusField& cf,
                                            const SgmParams& params,
                                            const HypothesisGrid& grid,
                                            int workers = 1);

/// Running fusion under a confidence threshold of phi_steps hypothesis
/// indices: starting from the first map, each further map either averages
/// into the running value (absolute difference < phi) or permanently
/// invalidates the pixel.
DisparityMap fuse(std::span<const DisparityMap> maps, double phi_steps,
                  const HypothesisGrid& grid);

/// Fills invalid pixels holding at least `min_support` valid neighbors in the
/// window with the median of those neighbors; valid pixels pass through.
/// Passes apply sequentially, each reading the previous pass's result.
DisparityMap fill_holes(const DisparityMap& dm, int window = 3, int passes = 2,
                        int min_support = 3);

/// Grayscale (0.299 R + 0.587 G + 0.114 B) 3x3 Sobel edge mask: gradient
/// magnitude (normalized by 4) above the threshold. Border pixels use
/// edge-replicated neighborhoods.
std::vector<std::uint8_t> sobel_edges(const ImageU8& image, double threshold);

/// Hypothesis-index search windows: valid non-edge pixels get
/// [index - lambda, index + lambda] clamped to the grid; invalid and edge
/// pixels get the whole range and the full-range mask.
BorderMaps compute_borders(const DisparityMap& dm, int lambda_steps,
                           const std::vector<std::uint8_t>& edges,
                           const HypothesisGrid& grid);

} // namespace lfsgm
