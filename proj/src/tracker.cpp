#include "scenetrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scenetrack/fusion_predictor.hpp"
#include "scenetrack/state_update.hpp"

namespace scenetrack {

std::string to_string(AblationMode m) {
    switch (m) {
        case AblationMode::Full: return "full";
        case AblationMode::AppearanceOnly: return "appearance-only";
        case AblationMode::NoPropagation: return "no-propagation";
        case AblationMode::NoReliability: return "no-reliability";
        case AblationMode::NoAppearance: return "no-appearance";
    }
    return "full";
}

AblationMode ablation_from_string(const std::string& s) {
    if (s == "full") return AblationMode::Full;
    if (s == "appearance-only") return AblationMode::AppearanceOnly;
    if (s == "no-propagation") return AblationMode::NoPropagation;
    if (s == "no-reliability") return AblationMode::NoReliability;
    if (s == "no-appearance") return AblationMode::NoAppearance;
    throw std::invalid_argument("unknown ablation mode: " + s);
}

void TrackerConfig::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("TrackerConfig: bad grid size");
    if (!(stride > 0.0)) throw std::invalid_argument("TrackerConfig: stride must be > 0");
    if (!(lost_threshold >= 0.0 && lost_threshold < 1.0))
        throw std::invalid_argument("TrackerConfig: lost_threshold must lie in [0, 1)");
    if (drift_offset_max < 0)
        throw std::invalid_argument("TrackerConfig: drift_offset_max must be >= 0");
    if (filter_cg_iters < 1 || filter_augmentations < 0)
        throw std::invalid_argument("TrackerConfig: bad filter settings");
    window.validate();
    label.validate();
}

TrackerState init_tracker(const Grid3D& x0, const TargetBox& b0, const TrackerConfig& cfg,
                          const ModelParams& params,
                          const FilterWeights* precomputed_filter) {
    cfg.validate();
    b0.validate();
    if (x0.width != cfg.width || x0.height != cfg.height)
        throw std::invalid_argument("init_tracker: frame shape mismatch");

    TrackerState state;
    if (precomputed_filter) {
        state.filter = *precomputed_filter;
    } else {
        std::mt19937_64 rng(cfg.filter_seed);
        const auto samples = build_training_set(x0, b0, cfg.label, cfg.stride,
                                                cfg.filter_augmentations, rng);
        state.filter = learn_filter(samples, cfg.filter_lambda, cfg.filter_cg_iters);
    }
    state.h = init_states(b0, params.initializer, cfg.width, cfg.height, cfg.stride);
    state.x_prev = x0;
    state.box = b0;
    state.frame_index = 0;
    state.lost = false;
    return state;
}

namespace {

double grid_mean(const Grid2D& g) {
    double s = 0.0;
    for (double v : g.values) s += v;
    return s / static_cast<double>(g.values.size());
}

TrackFrameResult track_appearance_only(TrackerState& state, const Grid3D& x,
                                       const TrackerConfig& cfg,
                                       const std::vector<ScorePeak>* extra_peaks,
                                       FrameCapture* capture) {
    Grid2D s = apply_filter(state.filter, x);
    const Cell prev = box_center_cell(state.box, cfg.stride, cfg.width, cfg.height);
    const Grid2D wnd =
        hann_window(cfg.width, cfg.height, prev.x, prev.y, cfg.window_floor);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= wnd.values[i];
    if (extra_peaks) add_score_peaks(s, *extra_peaks, cfg.label.sigma);

    const auto [peak_cell, peak] = localize_target(s);
    TrackFrameResult res;
    res.diag.max_s = peak;
    res.diag.max_fused = peak;
    res.diag.mean_xi = 0.0;
    if (peak <= cfg.lost_threshold) {
        state.lost = true;
    } else {
        state.lost = false;
        state.box = grid_to_image_box(peak_cell, state.box, cfg.stride);
    }
    res.diag.lost = state.lost;
    res.diag.peak = state.lost ? prev : peak_cell;
    res.box = state.box;

    if (capture) {
        capture->fused_masked = s;
        capture->fused_raw = s;
        capture->h = state.h;
        capture->h_hat = state.h;
    }
    state.x_prev = x;
    ++state.frame_index;
    return res;
}

}  // namespace

TrackFrameResult track_frame(TrackerState& state, const Grid3D& x, const TrackerConfig& cfg,
                             const ModelParams& params,
                             const std::vector<ScorePeak>* extra_peaks,
                             FrameCapture* capture) {
    if (x.width != cfg.width || x.height != cfg.height ||
        x.channels != state.x_prev.channels)
        throw std::invalid_argument("track_frame: frame shape mismatch");
    if (cfg.ablation == AblationMode::AppearanceOnly)
        return track_appearance_only(state, x, cfg, extra_peaks, capture);

    Grid2D s = apply_filter(state.filter, x);
    const Cell prev = box_center_cell(state.box, cfg.stride, cfg.width, cfg.height);
    const Grid2D wnd =
        hann_window(cfg.width, cfg.height, prev.x, prev.y, cfg.window_floor);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= wnd.values[i];
    if (extra_peaks) add_score_peaks(s, *extra_peaks, cfg.label.sigma);
    if (cfg.ablation == AblationMode::NoAppearance)
        std::fill(s.values.begin(), s.values.end(), 0.0);

    StateField h_hat;
    Grid2D xi;
    if (cfg.ablation == AblationMode::NoPropagation) {
        h_hat = state.h;
        xi = Grid2D(cfg.width, cfg.height, 0.0);
    } else {
        PropagationResult prop =
            propagation_pipeline(x, state.x_prev, state.h, params.correspondence, cfg.window);
        h_hat = std::move(prop.h_hat);
        xi = std::move(prop.xi);
        if (cfg.ablation == AblationMode::NoReliability)
            std::fill(xi.values.begin(), xi.values.end(), 0.0);
    }

    FusedScores fused = fuse_scores(h_hat, xi, s, params.predictor);
    if (cfg.ablation == AblationMode::NoAppearance) fused.masked = fused.raw;
    for (std::size_t i = 0; i < fused.masked.values.size(); ++i)
        fused.masked.values[i] *= wnd.values[i];

    auto [target_cell, peak] = localize_target(fused.masked);
    if (cfg.ablation != AblationMode::NoAppearance) {
        const auto [s_cell, s_peak] = localize_target(s);
        if (std::abs(s_cell.x - target_cell.x) <= cfg.drift_offset_max &&
            std::abs(s_cell.y - target_cell.y) <= cfg.drift_offset_max &&
            fused.masked.at(s_cell.x, s_cell.y) > cfg.lost_threshold)
            target_cell = s_cell;
    }

    TrackFrameResult res;
    res.diag.max_s = s.max_value();
    res.diag.max_fused = peak;
    res.diag.mean_xi = grid_mean(xi);

    if (peak <= cfg.lost_threshold) {
        state.lost = true;  // freeze the state field and the box
    } else {
        state.lost = false;
        const GruInput f = build_gru_input(fused, s);
        state.h = conv_gru_step(h_hat, f, params.gru);
        state.box = grid_to_image_box(target_cell, state.box, cfg.stride);
    }
    res.diag.lost = state.lost;
    res.diag.peak = state.lost ? prev : target_cell;
    res.box = state.box;

    if (capture) {
        capture->fused_masked = std::move(fused.masked);
        capture->fused_raw = std::move(fused.raw);
        capture->h = state.h;
        capture->h_hat = std::move(h_hat);
    }
    state.x_prev = x;
    ++state.frame_index;
    return res;
}

TrackResult track_sequence(const std::vector<Grid3D>& frames, const TargetBox& b0,
                           const TrackerConfig& cfg, const ModelParams& params,
                           const SequenceHooks* hooks) {
    if (frames.empty()) throw std::invalid_argument("track_sequence: no frames");
    if (hooks && hooks->score_peaks && hooks->score_peaks->size() != frames.size())
        throw std::invalid_argument("track_sequence: score peak hook length mismatch");

    TrackerState state =
        init_tracker(frames[0], b0, cfg, params, hooks ? hooks->filter : nullptr);
    TrackResult out;
    out.boxes.reserve(frames.size());
    out.diags.resize(frames.size());
    out.boxes.push_back(b0);
    if (hooks && hooks->capture) {
        hooks->capture->assign(frames.size(), {});
        (*hooks->capture)[0].h = state.h;
        (*hooks->capture)[0].h_hat = state.h;
    }

    for (std::size_t t = 1; t < frames.size(); ++t) {
        const std::vector<ScorePeak>* peaks =
            hooks && hooks->score_peaks ? &(*hooks->score_peaks)[t] : nullptr;
        FrameCapture* cap = hooks && hooks->capture ? &(*hooks->capture)[t] : nullptr;
        TrackFrameResult r = track_frame(state, frames[t], cfg, params, peaks, cap);
        out.boxes.push_back(r.box);
        out.diags[t] = r.diag;
    }
    return out;
}

}  // namespace scenetrack
