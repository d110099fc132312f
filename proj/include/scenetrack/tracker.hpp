#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenetrack/appearance_model.hpp"
#include "scenetrack/box.hpp"
#include "scenetrack/model_params.hpp"

namespace scenetrack {

enum class AblationMode : std::uint8_t {
    Full,
    AppearanceOnly,   // argmax of the windowed appearance score, nothing else
    NoPropagation,    // h_hat = h (identity), reliability 0
    NoReliability,    // full pipeline, xi zeroed before fusion
    NoAppearance,     // s zeroed before fusion, mask and drift snap disabled
};

std::string to_string(AblationMode m);
AblationMode ablation_from_string(const std::string& s);

struct TrackerConfig {
    int width = 18;
    int height = 18;
    double stride = 16.0;
    double lost_threshold = 0.05;
    int drift_offset_max = 1;  // cells
    double window_floor = 0.05;
    DisplacementWindow window;          // d_max = 9
    LabelConfig label;                  // filter training labels
    double filter_lambda = 0.1;
    int filter_cg_iters = 40;
    int filter_augmentations = 10;
    std::uint64_t filter_seed = 1;
    AblationMode ablation = AblationMode::Full;

    void validate() const;
};

struct TrackerState {
    StateField h;
    Grid3D x_prev;
    FilterWeights filter;
    TargetBox box;
    int frame_index = 0;
    bool lost = false;
};

struct FrameDiag {
    double max_s = 0.0;      // peak of the windowed appearance score
    double max_fused = 0.0;  // peak of the windowed, masked confidence
    double mean_xi = 0.0;
    bool lost = false;
    Cell peak{0, 0};  // cell backing the reported box
};

// Per-frame grids the training losses need.
struct FrameCapture {
    Grid2D fused_masked;  // final confidence (windowed, masked)
    Grid2D fused_raw;     // pre-mask confidence
    StateField h;         // state after the update (carried when lost)
    StateField h_hat;     // propagated state
};

struct SequenceHooks {
    // Outer index: frame; peaks are added to the windowed appearance score.
    const std::vector<std::vector<ScorePeak>>* score_peaks = nullptr;
    std::vector<FrameCapture>* capture = nullptr;  // resized to frame count
    // Skips filter learning; the filter depends only on the first frame, so
    // callers replaying one sequence under many parameter settings can
    // learn it once.
    const FilterWeights* filter = nullptr;
};

// Learns the appearance filter from the augmented first frame (or adopts
// the precomputed one) and builds the initial state field.
TrackerState init_tracker(const Grid3D& x0, const TargetBox& b0, const TrackerConfig& cfg,
                          const ModelParams& params,
                          const FilterWeights* precomputed_filter = nullptr);

struct TrackFrameResult {
    TargetBox box;
    FrameDiag diag;
};

// One step of the tracking loop: appearance score, window prior, state
// propagation, fusion, localization with drift snap and lost gating, state
// update, box report.
TrackFrameResult track_frame(TrackerState& state, const Grid3D& x, const TrackerConfig& cfg,
                             const ModelParams& params,
                             const std::vector<ScorePeak>* extra_peaks = nullptr,
                             FrameCapture* capture = nullptr);

struct TrackResult {
    std::vector<TargetBox> boxes;  // aligned with frames; boxes[0] = b0
    std::vector<FrameDiag> diags;
};

TrackResult track_sequence(const std::vector<Grid3D>& frames, const TargetBox& b0,
                           const TrackerConfig& cfg, const ModelParams& params,
                           const SequenceHooks* hooks = nullptr);

}  // namespace scenetrack
