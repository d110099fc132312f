#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scenetrack/conv_block.hpp"
#include "scenetrack/cost_volume.hpp"
#include "scenetrack/grid.hpp"

namespace scenetrack {

// Per-current-cell probability distribution over previous-frame source
// cells.  Storage mirrors CostVolume but is indexed by the current cell r
// and the reverse displacement delta, i.e. prob[(y*W+x)*M + slot(dx,dy)]
// is p(r' = r - delta | r).  valid(r, delta) <=> r - delta in bounds.
struct CorrespondenceField {
    int width = 0;
    int height = 0;
    DisplacementWindow window;
    std::vector<double> prob;
    std::vector<std::uint8_t> valid;

    CorrespondenceField() = default;
    CorrespondenceField(int w, int h, DisplacementWindow win) : width(w), height(h), window(win) {
        const std::size_t n = static_cast<std::size_t>(w) * h * win.slot_count();
        prob.assign(n, 0.0);
        valid.assign(n, 0);
    }

    std::size_t index(int x, int y, int dx, int dy) const {
        return (static_cast<std::size_t>(y) * width + x) * window.slot_count() +
               window.slot(dx, dy);
    }
    double prob_at(int x, int y, int dx, int dy) const { return prob[index(x, y, dx, dy)]; }
    bool valid_at(int x, int y, int dx, int dy) const { return valid[index(x, y, dx, dy)] != 0; }

    // Number of in-bounds previous cells for current cell r.
    int support_size(int x, int y) const;
};

// Two shared-weight conv blocks applied to every cost-volume slice.
struct CorrespondenceNetParams {
    std::array<ConvBlockParams, 2> stage1;  // 1 -> hidden (relu), hidden -> 1
    std::array<ConvBlockParams, 2> stage2;

    void validate() const;
};

// Stage factories.  The pass-through configuration scales the slice value
// by `gain` through both convolutions (centered identity into channel 0,
// relu kept inactive by a positive shift which the second block removes);
// it holds exactly for inputs in (-shift, +inf) per cell.
std::array<ConvBlockParams, 2> passthrough_stage(int hidden = 8, double gain = 1.0,
                                                 double shift = 8.0);
std::array<ConvBlockParams, 2> zero_stage(int hidden = 8);

// Shipped defaults.  Stage gains set the softmax temperatures: the first
// spreads raw window correlations (order 1e-2 for unit-scale features) far
// enough apart to matter, the second re-sharpens the row-stochastic phi'
// (values in [0, 1], so without gain the posterior would stay near
// uniform regardless of how peaked phi' is).
CorrespondenceNetParams passthrough_correspondence_params(int hidden = 8,
                                                          double stage1_gain = 400.0,
                                                          double stage2_gain = 14.0);
CorrespondenceNetParams zero_correspondence_params(int hidden = 8);

// Each per-r' slice is scattered to a W x H grid (zeros outside the valid
// displacement window), passed through the two conv blocks, and gathered
// back into displacement-indexed storage.
MatchingCosts process_matching_costs(const CostVolume& cv,
                                     const std::array<ConvBlockParams, 2>& stage1);

// Row softmax over the valid displacement window of each previous cell r'.
MatchingCosts initial_correspondence(const MatchingCosts& phi);

// Second conv stage (slice-wise, shared weights), then softmax over the
// previous-frame cells of every current cell r.
CorrespondenceField refine_correspondence(const MatchingCosts& phi_prime,
                                          const std::array<ConvBlockParams, 2>& stage2);

// Negated Shannon entropy per current cell: xi(r) = sum p log p, natural
// log, 0 log 0 := 0.  Ranges over [-log M(r), 0].
Grid2D reliability_map(const CorrespondenceField& p);

}  // namespace scenetrack
