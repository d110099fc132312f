#pragma once

#include <cstdint>
#include <vector>

#include "scenetrack/grid.hpp"

namespace scenetrack {

// Square displacement window: per-axis offsets in [-d_max, d_max].
struct DisplacementWindow {
    int d_max = 9;

    int side() const { return 2 * d_max + 1; }
    int slot_count() const { return side() * side(); }
    int slot(int dx, int dy) const { return (dy + d_max) * side() + (dx + d_max); }

    void validate() const {
        if (d_max < 0) throw std::invalid_argument("DisplacementWindow: d_max must be >= 0");
    }
};

// Displacement-limited matching costs between a previous and a current
// frame.  Storage is one contiguous slot slab per previous cell r':
// costs[(y'*W + x')*M + slot(dx,dy)] holds the cost of matching r' to
// r = r' + (dx,dy).  valid marks in-bounds current cells; invalid slots
// hold 0.
struct CostVolume {
    int width = 0;
    int height = 0;
    DisplacementWindow window;
    std::vector<double> costs;
    std::vector<std::uint8_t> valid;

    CostVolume() = default;
    CostVolume(int w, int h, DisplacementWindow win) : width(w), height(h), window(win) {
        window.validate();
        const std::size_t n = static_cast<std::size_t>(w) * h * win.slot_count();
        costs.assign(n, 0.0);
        valid.assign(n, 0);
    }

    std::size_t index(int x, int y, int dx, int dy) const {
        return (static_cast<std::size_t>(y) * width + x) * window.slot_count() +
               window.slot(dx, dy);
    }
    double cost_at(int x, int y, int dx, int dy) const { return costs[index(x, y, dx, dy)]; }
    bool valid_at(int x, int y, int dx, int dy) const { return valid[index(x, y, dx, dy)] != 0; }
};

// Processed matching costs share the cost-volume storage layout.
using MatchingCosts = CostVolume;

// Correlation between the 3x3 feature windows centered at r_prev in x_prev
// and r_curr in x_curr, zero-padded at borders, divided by 9*D.
double window_correlation(const Grid3D& x_prev, const Grid3D& x_curr, Cell r_prev, Cell r_curr);

// Partial cost volume: every previous cell r' against every in-bounds
// displaced current cell r' + delta with |delta|_inf <= d_max.
CostVolume build_cost_volume(const Grid3D& x_prev, const Grid3D& x_curr,
                             DisplacementWindow window);

// Most literal quadruple-loop construction with the identical contract.
// Intended for small grids; used to cross-check build_cost_volume.
CostVolume cost_volume_oracle(const Grid3D& x_prev, const Grid3D& x_curr,
                              DisplacementWindow window);

}  // namespace scenetrack
