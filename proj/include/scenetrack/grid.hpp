#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scenetrack {

// Dense single-channel grid, row-major (y major, x minor).
struct Grid2D {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Grid2D() = default;
    Grid2D(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("Grid2D: dimensions must be >= 1");
        values.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double& at(int x, int y) {
        assert(x >= 0 && x < width && y >= 0 && y < height);
        return values[static_cast<std::size_t>(y) * width + x];
    }
    double at(int x, int y) const {
        assert(x >= 0 && x < width && y >= 0 && y < height);
        return values[static_cast<std::size_t>(y) * width + x];
    }

    std::size_t cell_count() const { return values.size(); }

    double max_value() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::max(m, v);
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// Dense multi-channel grid, row-major with channel innermost:
// index = (y*W + x)*C + c.  Matches the on-disk frame layout.
struct Grid3D {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> values;

    Grid3D() = default;
    Grid3D(int w, int h, int c, double fill = 0.0) : width(w), height(h), channels(c) {
        if (w < 1 || h < 1 || c < 1)
            throw std::invalid_argument("Grid3D: dimensions must be >= 1");
        values.assign(static_cast<std::size_t>(w) * h * c, fill);
    }

    double& at(int x, int y, int c) {
        assert(x >= 0 && x < width && y >= 0 && y < height && c >= 0 && c < channels);
        return values[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c) const {
        assert(x >= 0 && x < width && y >= 0 && y < height && c >= 0 && c < channels);
        return values[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// Grid cell coordinate.  Row-major ordering (y major) defines tie-breaks
// wherever an argmax over cells is taken.
struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

inline bool in_bounds(int x, int y, int w, int h) {
    return x >= 0 && x < w && y >= 0 && y < h;
}

}  // namespace scenetrack
