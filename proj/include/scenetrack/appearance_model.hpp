#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scenetrack/box.hpp"
#include "scenetrack/conv_block.hpp"
#include "scenetrack/grid.hpp"
#include "scenetrack/grid_ops.hpp"

namespace scenetrack {

// Linear target-vs-background filter: one 3x3xD kernel, ridge-regularized.
struct FilterWeights {
    ConvBlockParams conv;  // D -> 1, no activation, no norm
    double lambda = 0.0;

    void validate() const;
};

struct TrainingSample {
    Grid3D features;
    Grid2D label;
};

// First-frame sample plus n_aug augmented copies: integer shifts uniform in
// [-3,3]^2, horizontal flip with probability 1/2, additive Gaussian feature
// noise with sigma = 0.05 of the original feature RMS.  Labels follow the
// same transform.  Deterministic for a fixed generator state.
std::vector<TrainingSample> build_training_set(const Grid3D& x0, const TargetBox& b0,
                                               const LabelConfig& label_cfg, double stride,
                                               int n_aug, std::mt19937_64& rng);

// Minimizes (1/n) sum_j |conv(x_j, w) - c_j|^2 + lambda^2 |w|^2 by conjugate
// gradient on the normal equations.  The quadratic objective is checked to
// be non-increasing across iterations.  Throws std::invalid_argument
// ("singular system") when the system has no usable curvature (e.g. all-zero
// features with lambda = 0).
FilterWeights learn_filter(const std::vector<TrainingSample>& samples, double lambda,
                           int cg_iters);

// Residual objective evaluated at w; exposed so callers can check optimality.
double filter_objective(const std::vector<TrainingSample>& samples,
                        const FilterWeights& w);

// s = conv(x, w), single channel, no activation.
Grid2D apply_filter(const FilterWeights& w, const Grid3D& x);

}  // namespace scenetrack
