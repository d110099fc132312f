#pragma once

#include <algorithm>
#include <stdexcept>

#include "scenetrack/grid.hpp"

namespace scenetrack {

// Axis-aligned target box in image pixels, center + size.
struct TargetBox {
    double cx = 0.0;
    double cy = 0.0;
    double width = 0.0;
    double height = 0.0;

    void validate() const {
        if (!(width > 0.0) || !(height > 0.0))
            throw std::invalid_argument("TargetBox: width and height must be > 0");
    }
};

inline double box_iou(const TargetBox& a, const TargetBox& b) {
    const double ax0 = a.cx - a.width / 2, ax1 = a.cx + a.width / 2;
    const double ay0 = a.cy - a.height / 2, ay1 = a.cy + a.height / 2;
    const double bx0 = b.cx - b.width / 2, bx1 = b.cx + b.width / 2;
    const double by0 = b.cy - b.height / 2, by1 = b.cy + b.height / 2;
    const double iw = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
    const double ih = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
    const double inter = iw * ih;
    const double uni = a.width * a.height + b.width * b.height - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

// Grid cell -> image-space box: center at the cell center, size carried over.
inline TargetBox grid_to_image_box(Cell cell, const TargetBox& prev_box, double stride) {
    TargetBox b = prev_box;
    b.cx = (cell.x + 0.5) * stride;
    b.cy = (cell.y + 0.5) * stride;
    return b;
}

// Continuous grid coordinates of a pixel position (inverse of the cell-center
// mapping above).
inline double pixel_to_grid(double px, double stride) { return px / stride - 0.5; }

inline Cell box_center_cell(const TargetBox& b, double stride, int w, int h) {
    const int x = std::clamp(static_cast<int>(std::floor(b.cx / stride)), 0, w - 1);
    const int y = std::clamp(static_cast<int>(std::floor(b.cy / stride)), 0, h - 1);
    return {x, y};
}

}  // namespace scenetrack
