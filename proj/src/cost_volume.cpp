#include "scenetrack/cost_volume.hpp"

#include <algorithm>
#include <stdexcept>

namespace scenetrack {

namespace {

void check_shapes(const Grid3D& a, const Grid3D& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw std::invalid_argument("cost volume: feature shape mismatch");
}

}  // namespace

double window_correlation(const Grid3D& x_prev, const Grid3D& x_curr, Cell r_prev, Cell r_curr) {
    check_shapes(x_prev, x_curr);
    const int w = x_prev.width, h = x_prev.height, d = x_prev.channels;
    double acc = 0.0;
    for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
            const int px = r_prev.x + ox, py = r_prev.y + oy;
            const int cx = r_curr.x + ox, cy = r_curr.y + oy;
            if (!in_bounds(px, py, w, h) || !in_bounds(cx, cy, w, h)) continue;
            const double* pv = &x_prev.values[(static_cast<std::size_t>(py) * w + px) * d];
            const double* cv = &x_curr.values[(static_cast<std::size_t>(cy) * w + cx) * d];
            for (int c = 0; c < d; ++c) acc += pv[c] * cv[c];
        }
    }
    return acc / (9.0 * d);
}

CostVolume build_cost_volume(const Grid3D& x_prev, const Grid3D& x_curr,
                             DisplacementWindow window) {
    check_shapes(x_prev, x_curr);
    const int w = x_prev.width, h = x_prev.height, d = x_prev.channels;
    CostVolume out(w, h, window);

    // Accumulate per displacement: for fixed delta the window sums reduce to
    // a 3x3 box filter over the per-cell channel dot products.
    const int dm = window.d_max;
    std::vector<double> dots(static_cast<std::size_t>(w) * h);
    const double norm = 1.0 / (9.0 * d);
    const int slots = window.slot_count();

    for (int dy = -dm; dy <= dm; ++dy) {
        for (int dx = -dm; dx <= dm; ++dx) {
            // dots(r') = <x_prev(r'), x_curr(r'+delta)> wherever both in bounds.
            std::fill(dots.begin(), dots.end(), 0.0);
            const int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
            const int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    const double* pv = &x_prev.values[(static_cast<std::size_t>(y) * w + x) * d];
                    const double* cv =
                        &x_curr.values[(static_cast<std::size_t>(y + dy) * w + (x + dx)) * d];
                    double acc = 0.0;
                    for (int c = 0; c < d; ++c) acc += pv[c] * cv[c];
                    dots[static_cast<std::size_t>(y) * w + x] = acc;
                }
            }
            // 3x3 box sum over r' gives the window correlation for this delta.
            const int slot = window.slot(dx, dy);
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    double acc = 0.0;
                    for (int oy = -1; oy <= 1; ++oy) {
                        const int sy = y + oy;
                        if (sy < 0 || sy >= h) continue;
                        for (int ox = -1; ox <= 1; ++ox) {
                            const int sx = x + ox;
                            if (sx < 0 || sx >= w) continue;
                            // The displaced window must also stay in bounds.
                            if (!in_bounds(sx + dx, sy + dy, w, h)) continue;
                            acc += dots[static_cast<std::size_t>(sy) * w + sx];
                        }
                    }
                    const std::size_t i =
                        (static_cast<std::size_t>(y) * w + x) * slots + slot;
                    out.costs[i] = acc * norm;
                    out.valid[i] = 1;
                }
            }
        }
    }
    return out;
}

CostVolume cost_volume_oracle(const Grid3D& x_prev, const Grid3D& x_curr,
                              DisplacementWindow window) {
    check_shapes(x_prev, x_curr);
    const int w = x_prev.width, h = x_prev.height;
    CostVolume out(w, h, window);
    const int dm = window.d_max;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int dy = -dm; dy <= dm; ++dy) {
                for (int dx = -dm; dx <= dm; ++dx) {
                    const int cx = x + dx, cy = y + dy;
                    if (!in_bounds(cx, cy, w, h)) continue;
                    const std::size_t i = out.index(x, y, dx, dy);
                    out.costs[i] = window_correlation(x_prev, x_curr, {x, y}, {cx, cy});
                    out.valid[i] = 1;
                }
            }
        }
    }
    return out;
}

}  // namespace scenetrack
