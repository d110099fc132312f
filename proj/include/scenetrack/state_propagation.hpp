#pragma once

#include "scenetrack/box.hpp"
#include "scenetrack/conv_block.hpp"
#include "scenetrack/correspondence.hpp"
#include "scenetrack/cost_volume.hpp"
#include "scenetrack/grid.hpp"
#include "scenetrack/grid_ops.hpp"

namespace scenetrack {

// Per-cell scene memory, one S-channel vector per grid cell.
using StateField = Grid3D;

inline constexpr int kStateDim = 8;

// Single conv block (1 -> S, tanh) applied to a Gaussian annotation map.
struct InitializerParams {
    ConvBlockParams conv;
    LabelConfig label;

    void validate() const;
};

// Center tap feeding the annotation peak into state channel 0; the
// remaining channels start at zero and are free for training.
InitializerParams default_initializer_params(int state_dim = kStateDim, double gain = 2.0);

// Gaussian map at the annotated box center, passed through the conv block.
// Throws std::invalid_argument("annotation out of crop") when the center
// falls outside the grid.
StateField init_states(const TargetBox& b0, const InitializerParams& params, int width,
                       int height, double stride);

// Expectation of the previous state field under the correspondence
// distribution: h_hat(r) = sum_{r'} h_prev(r') p(r'|r), per channel.
// Each output channel is checked against the [min, max] of its sources.
StateField propagate_states(const StateField& h_prev, const CorrespondenceField& p);

struct PropagationResult {
    StateField h_hat;
    Grid2D xi;
};

// Full chain: cost volume -> first conv stage -> softmax over current
// locations -> second conv stage -> softmax over previous locations ->
// (state expectation, reliability).
PropagationResult propagation_pipeline(const Grid3D& x_curr, const Grid3D& x_prev,
                                       const StateField& h_prev,
                                       const CorrespondenceNetParams& nets,
                                       DisplacementWindow window);

// Same chain starting from a prebuilt cost volume; the volume depends only
// on the two frames, so callers evaluating several parameter settings on
// fixed frames can build it once.
PropagationResult propagation_pipeline_from_costs(const CostVolume& cv,
                                                  const StateField& h_prev,
                                                  const CorrespondenceNetParams& nets);

}  // namespace scenetrack
