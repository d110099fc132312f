#pragma once

#include <cstdint>
#include <vector>

#include "scenetrack/grid.hpp"

namespace scenetrack {

// Gaussian label map configuration.
struct LabelConfig {
    double sigma = 0.9;  // cells
    double peak = 1.0;

    void validate() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("LabelConfig: sigma must be > 0");
    }
};

// Numerically stable masked softmax (max-subtraction).  Masked entries map
// to exactly 0; unmasked outputs are positive and sum to 1.
// Throws std::invalid_argument("empty support") when every entry is masked.
std::vector<double> stable_softmax(const std::vector<double>& values,
                                   const std::vector<std::uint8_t>& mask);
std::vector<double> stable_softmax(const std::vector<double>& values);

// peak * exp(-|r - center|^2 / (2 sigma^2)) sampled at every cell center.
// `center` is in continuous grid coordinates.
Grid2D gaussian_label_map(double center_x, double center_y, const LabelConfig& cfg,
                          int width, int height);

// Separable raised-cosine motion prior with floor `eps`, maximum 1 at
// `center`.  The per-axis half-width is the largest attainable distance from
// the center inside the grid, so the farthest corner always lands on the
// floor.
Grid2D hann_window(int width, int height, double center_x, double center_y,
                   double eps = 0.05);

// Additive Gaussian bump in a score map, grid coordinates.
struct ScorePeak {
    double x = 0.0;
    double y = 0.0;
    double amp = 0.0;
};

void add_score_peaks(Grid2D& scores, const std::vector<ScorePeak>& peaks, double sigma);

}  // namespace scenetrack
