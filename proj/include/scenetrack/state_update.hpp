#pragma once

#include "scenetrack/conv_block.hpp"
#include "scenetrack/fusion_predictor.hpp"
#include "scenetrack/grid.hpp"
#include "scenetrack/state_propagation.hpp"

namespace scenetrack {

// Convolutional GRU over the state field.  All three convolutions take the
// 4-channel score input concatenated with the S-channel state (gates see
// h_hat, the candidate sees r (.) h_hat).
struct GruParams {
    ConvBlockParams z_gate;  // 4+S -> S, sigmoid
    ConvBlockParams r_gate;  // 4+S -> S, sigmoid
    ConvBlockParams h_cand;  // 4+S -> S, tanh

    void validate() const;
};

// z bias -1 (slow forgetting), r bias 0, candidate refreshed from the
// fused-score channel plus a carry tap on state channel 0.
GruParams default_gru_params(int state_dim = kStateDim);

using GruInput = Grid3D;

// [masked confidence; appearance score; max confidence; max score], the
// last two broadcast as constant channels.
GruInput build_gru_input(const FusedScores& fused, const Grid2D& s);

// z = sigm(conv[f; h_hat]), r = sigm(conv[f; h_hat]),
// cand = tanh(conv[f; r (.) h_hat]), h = (1-z) (.) h_hat + z (.) cand.
StateField conv_gru_step(const StateField& h_hat, const GruInput& f, const GruParams& params);

}  // namespace scenetrack
