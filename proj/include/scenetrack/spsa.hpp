#pragma once

#include <cstdint>
#include <vector>

#include "scenetrack/losses.hpp"
#include "scenetrack/synth_gen.hpp"
#include "scenetrack/tracker.hpp"

namespace scenetrack {

// Simultaneous-perturbation stochastic approximation over the flattened
// parameter vector.  Gains follow the standard decaying schedules
// a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
struct SpsaConfig {
    int steps = 2000;
    double a = 0.02;
    double c = 0.05;
    double big_a = 200.0;  // stability offset A
    double alpha = 0.602;
    double gamma = 0.101;
    double grad_clip = 50.0;     // cap on |L+ - L-| / (2 c_k)
    double augment_prob = 0.3;   // distractor peak augmentation
    std::uint64_t seed = 7;

    void validate() const;
};

struct SpsaResult {
    std::vector<double> loss_trace;  // (L+ + L-)/2 per step
    int steps_run = 0;
};

// One sequence per step, two rollouts at theta +- c_k Delta with shared
// augmentation draws, Rademacher Delta.  The appearance filters are learned
// once per corpus sequence up front and reused; they are not trained.
// Throws std::runtime_error on a non-finite loss.
SpsaResult spsa_train(ModelParams& params, const std::vector<SyntheticSequence>& corpus,
                      const TrackerConfig& cfg, const LossWeights& weights,
                      const SpsaConfig& spsa);

// Mean sequence loss over a corpus at fixed parameters, no augmentation.
double corpus_mean_loss(const ModelParams& params,
                        const std::vector<SyntheticSequence>& corpus,
                        const TrackerConfig& cfg, const LossWeights& weights);

}  // namespace scenetrack
