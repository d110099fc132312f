#pragma once

#include <utility>

#include "scenetrack/conv_block.hpp"
#include "scenetrack/grid.hpp"
#include "scenetrack/state_propagation.hpp"

namespace scenetrack {

// Two conv blocks mapping the concatenated [s; h_hat; xi] channels to a
// confidence map, plus the appearance-gating threshold mu.
struct PredictorParams {
    ConvBlockParams conv1;  // S+2 -> 16, relu
    ConvBlockParams conv2;  // 16 -> 1, sigmoid
    double mu = 0.05;

    void validate() const;
};

struct FusedScores {
    Grid2D raw;     // pre-mask confidence, values in [0, 1]
    Grid2D masked;  // raw where s > mu, 0 elsewhere
};

// Untrained default: confidence is a monotone reshaping of the appearance
// score alone, sigmoid(a*s + c) with c chosen so the s = mu boundary maps
// to mu.  Hidden units 1.. have live output taps but zero input weights and
// biases, so they stay silent here while giving the state and reliability
// channels first-order influence once their input weights move.
PredictorParams appearance_replicating_predictor_params(int state_dim = kStateDim,
                                                        double a = 6.0,
                                                        double spare_tap = 0.5);

// Concatenate [s; h_hat; xi], run both conv blocks, then gate by the
// appearance score: masked(r) = raw(r) if s(r) > mu else 0.
FusedScores fuse_scores(const StateField& h_hat, const Grid2D& xi, const Grid2D& s,
                        const PredictorParams& params);

// Argmax cell and its value; ties break to the smallest row-major index
// (y major, then x).
std::pair<Cell, double> localize_target(const Grid2D& scores);

}  // namespace scenetrack
