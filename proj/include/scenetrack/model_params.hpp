#pragma once

#include <cstddef>
#include <vector>

#include "scenetrack/correspondence.hpp"
#include "scenetrack/fusion_predictor.hpp"
#include "scenetrack/state_propagation.hpp"
#include "scenetrack/state_update.hpp"

namespace scenetrack {

// 1x1 conv S -> 1 with sigmoid, scoring whether a state vector belongs to
// the target; used by the training losses only.
struct AuxHeadParams {
    std::vector<double> weight;
    double bias = 0.0;

    void validate() const;
};

AuxHeadParams default_aux_head_params(int state_dim = kStateDim);

// sigmoid(w . h(r) + b) per cell.
Grid2D aux_head_apply(const AuxHeadParams& head, const StateField& h);

// Every trainable parameter bundle.  The appearance filter is deliberately
// absent: it is learned per sequence and frozen during training.
struct ModelParams {
    CorrespondenceNetParams correspondence;
    PredictorParams predictor;
    GruParams gru;
    InitializerParams initializer;
    AuxHeadParams aux_head;

    void validate() const;
};

ModelParams default_model_params(int state_dim = kStateDim);

// Flattening gives the trainer one contiguous view of all tensors.  Order
// is fixed: correspondence stage1/stage2 blocks, predictor convs, GRU z/r/
// candidate, initializer conv, aux head; within each conv block kernel,
// bias, then affine scale and shift when present.  Thresholds (mu) and the
// label shape are configuration, not trainables.
std::size_t trainable_parameter_count(const ModelParams& params);
std::vector<double> flatten_params(const ModelParams& params);
void unflatten_params(const std::vector<double>& theta, ModelParams& params);

}  // namespace scenetrack
