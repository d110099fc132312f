#include "scenetrack/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace scenetrack {

std::vector<double> stable_softmax(const std::vector<double>& values,
                                   const std::vector<std::uint8_t>& mask) {
    if (!mask.empty() && mask.size() != values.size())
        throw std::invalid_argument("stable_softmax: mask size mismatch");

    double max_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask.empty() || mask[i]) max_v = std::max(max_v, values[i]);
    }
    if (!std::isfinite(max_v)) throw std::invalid_argument("empty support");

    std::vector<double> out(values.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask.empty() || mask[i]) {
            const double e = std::exp(values[i] - max_v);
            out[i] = e;
            sum += e;
        }
    }
    const double inv = 1.0 / sum;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (mask.empty() || mask[i]) out[i] *= inv;
    return out;
}

std::vector<double> stable_softmax(const std::vector<double>& values) {
    return stable_softmax(values, {});
}

Grid2D gaussian_label_map(double center_x, double center_y, const LabelConfig& cfg,
                          int width, int height) {
    cfg.validate();
    Grid2D out(width, height);
    const double inv_two_sigma2 = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
    for (int y = 0; y < height; ++y) {
        const double dy = y - center_y;
        for (int x = 0; x < width; ++x) {
            const double dx = x - center_x;
            out.at(x, y) = cfg.peak * std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
        }
    }
    return out;
}

namespace {

// Raised cosine over the largest attainable per-axis distance; 1 at the
// center, 0 at that distance, clamped beyond.
inline double axis_profile(double d, double half_width) {
    if (half_width <= 0.0) return 1.0;
    const double t = std::min(std::abs(d) / half_width, 1.0);
    return 0.5 * (1.0 + std::cos(std::numbers::pi * t));
}

}  // namespace

Grid2D hann_window(int width, int height, double center_x, double center_y, double eps) {
    Grid2D out(width, height);
    const double rx = std::max(center_x, (width - 1) - center_x);
    const double ry = std::max(center_y, (height - 1) - center_y);
    for (int y = 0; y < height; ++y) {
        const double wy = axis_profile(y - center_y, ry);
        for (int x = 0; x < width; ++x) {
            const double wx = axis_profile(x - center_x, rx);
            out.at(x, y) = std::max(wx * wy, eps);
        }
    }
    return out;
}

void add_score_peaks(Grid2D& scores, const std::vector<ScorePeak>& peaks, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("add_score_peaks: sigma must be > 0");
    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
    for (const ScorePeak& p : peaks) {
        for (int y = 0; y < scores.height; ++y) {
            const double dy = y - p.y;
            for (int x = 0; x < scores.width; ++x) {
                const double dx = x - p.x;
                scores.at(x, y) += p.amp * std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
            }
        }
    }
}

}  // namespace scenetrack
