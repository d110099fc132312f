#pragma once

#include <cstdint>
#include <vector>

#include "scenetrack/box.hpp"
#include "scenetrack/grid.hpp"

namespace scenetrack {

enum class MotionModel : std::uint8_t { LinearNoise, Crossing };

struct SceneConfig {
    int width = 18;
    int height = 18;
    int channels = 8;
    int frames = 50;
    int distractors = 2;
    MotionModel motion = MotionModel::Crossing;

    double blob_sigma = 1.1;         // cells
    double feature_scale = 1.0;      // target signature norm
    double distractor_scale = 1.05;  // distractor norm relative to target
    double cos_sim_min = 0.97;       // signature similarity to the target
    double cos_sim_max = 0.995;
    double bg_sigma = 0.05;

    double speed_min = 0.25;  // cells per frame
    double speed_max = 0.6;
    double jitter_sigma = 0.05;  // target velocity noise
    double border_margin = 2.0;  // cells, motion bounces here
    double min_start_separation = 5.0;

    double stride = 16.0;
    double box_size = 32.0;  // pixels

    void validate() const;
};

struct ObjectTrack {
    std::vector<double> cx;  // grid coordinates per frame
    std::vector<double> cy;
    std::vector<double> signature;  // feature vector, length = channels
};

struct SyntheticSequence {
    std::vector<Grid3D> frames;
    std::vector<TargetBox> gt_boxes;
    ObjectTrack target;
    std::vector<ObjectTrack> distractors;
    std::uint64_t seed = 0;
};

// Gaussian feature blobs on a noisy background.  Distractor signatures are
// rotations of the target signature with cosine similarity in the
// configured band.  Under the crossing model the first distractor's path
// runs through the target's realized position at a mid-sequence frame
// (center distance <= 0.5 cells there).  Frame values are quantized through
// float so the on-disk format round-trips bit-exactly.  Bit-deterministic
// for a fixed seed.
SyntheticSequence generate_sequence(const SceneConfig& cfg, std::uint64_t seed);

}  // namespace scenetrack
