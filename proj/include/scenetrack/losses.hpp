#pragma once

#include <random>
#include <utility>
#include <vector>

#include "scenetrack/grid_ops.hpp"
#include "scenetrack/model_params.hpp"
#include "scenetrack/tracker.hpp"

namespace scenetrack {

struct LossWeights {
    double alpha = 0.1;  // raw-confidence term
    double beta = 0.1;   // state head terms

    void validate() const;
};

// Squared Frobenius distance between the score map and the Gaussian label
// centered at the ground-truth grid position.
double prediction_loss(const Grid2D& score, double gt_x, double gt_y,
                       const LabelConfig& cfg);

// Mean binary cross entropy of per-cell probabilities against the target
// mask (cells within `radius` of the ground-truth center are positive).
// Probabilities are clipped to [1e-7, 1 - 1e-7].
double bce_target_loss(const Grid2D& probs, double gt_x, double gt_y, double radius = 1.0);

// Aux head applied to the updated and the propagated state fields; returns
// (L_state, L_state_prop).
std::pair<double, double> state_aux_losses(const StateField& h, const StateField& h_hat,
                                           double gt_x, double gt_y,
                                           const AuxHeadParams& head);

// Mean over frames t >= 1 of
//   pred(final confidence) + alpha * pred(raw confidence)
//   + beta * (L_state + L_state_prop).
double sequence_loss(const std::vector<FrameCapture>& run, const std::vector<double>& gt_x,
                     const std::vector<double>& gt_y, const LossWeights& weights,
                     const AuxHeadParams& head, const LabelConfig& label_cfg);

// With probability `prob`, one or two peaks at cells >= min_dist from the
// ground-truth center, amplitudes uniform in [amp_lo, amp_hi]; otherwise
// empty.  Sampling is split from application so the same draw can be
// replayed against several parameter settings.
std::vector<ScorePeak> sample_distractor_peaks(std::mt19937_64& rng, double prob,
                                               double gt_x, double gt_y, int width,
                                               int height, double min_dist = 3.0,
                                               double amp_lo = 0.3, double amp_hi = 1.0);

// Convenience composition of sampling and rendering.
Grid2D distractor_peak_augment(const Grid2D& s, std::mt19937_64& rng, double prob,
                               double gt_x, double gt_y, double sigma);

}  // namespace scenetrack
