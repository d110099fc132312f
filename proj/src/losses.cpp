#include "scenetrack/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace scenetrack {

void LossWeights::validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0))
        throw std::invalid_argument("LossWeights: weights must be >= 0");
}

double prediction_loss(const Grid2D& score, double gt_x, double gt_y,
                       const LabelConfig& cfg) {
    const Grid2D z = gaussian_label_map(gt_x, gt_y, cfg, score.width, score.height);
    double acc = 0.0;
    for (std::size_t i = 0; i < score.values.size(); ++i) {
        const double e = score.values[i] - z.values[i];
        acc += e * e;
    }
    return acc;
}

double bce_target_loss(const Grid2D& probs, double gt_x, double gt_y, double radius) {
    constexpr double kClip = 1e-7;
    const double r2 = radius * radius;
    double acc = 0.0;
    for (int y = 0; y < probs.height; ++y) {
        const double dy = y - gt_y;
        for (int x = 0; x < probs.width; ++x) {
            const double dx = x - gt_x;
            const bool positive = dx * dx + dy * dy <= r2;
            const double p =
                std::min(1.0 - kClip, std::max(kClip, probs.at(x, y)));
            acc -= positive ? std::log(p) : std::log(1.0 - p);
        }
    }
    return acc / static_cast<double>(probs.cell_count());
}

std::pair<double, double> state_aux_losses(const StateField& h, const StateField& h_hat,
                                           double gt_x, double gt_y,
                                           const AuxHeadParams& head) {
    const Grid2D ph = aux_head_apply(head, h);
    const Grid2D php = aux_head_apply(head, h_hat);
    return {bce_target_loss(ph, gt_x, gt_y), bce_target_loss(php, gt_x, gt_y)};
}

double sequence_loss(const std::vector<FrameCapture>& run, const std::vector<double>& gt_x,
                     const std::vector<double>& gt_y, const LossWeights& weights,
                     const AuxHeadParams& head, const LabelConfig& label_cfg) {
    weights.validate();
    if (run.size() < 2) throw std::invalid_argument("sequence_loss: need >= 2 frames");
    if (gt_x.size() != run.size() || gt_y.size() != run.size())
        throw std::invalid_argument("sequence_loss: ground-truth length mismatch");

    double acc = 0.0;
    for (std::size_t t = 1; t < run.size(); ++t) {
        const FrameCapture& f = run[t];
        double term = prediction_loss(f.fused_masked, gt_x[t], gt_y[t], label_cfg);
        term += weights.alpha * prediction_loss(f.fused_raw, gt_x[t], gt_y[t], label_cfg);
        const auto [l_state, l_prop] = state_aux_losses(f.h, f.h_hat, gt_x[t], gt_y[t], head);
        term += weights.beta * (l_state + l_prop);
        acc += term;
    }
    return acc / static_cast<double>(run.size() - 1);
}

std::vector<ScorePeak> sample_distractor_peaks(std::mt19937_64& rng, double prob,
                                               double gt_x, double gt_y, int width,
                                               int height, double min_dist, double amp_lo,
                                               double amp_hi) {
    if (!(prob >= 0.0 && prob <= 1.0))
        throw std::invalid_argument("sample_distractor_peaks: prob must lie in [0, 1]");
    std::vector<ScorePeak> peaks;
    if (!std::bernoulli_distribution(prob)(rng)) return peaks;

    std::uniform_int_distribution<int> count_dist(1, 2);
    std::uniform_int_distribution<int> xs(0, width - 1), ys(0, height - 1);
    std::uniform_real_distribution<double> amp(amp_lo, amp_hi);
    const int count = count_dist(rng);
    const double d2 = min_dist * min_dist;
    for (int i = 0; i < count; ++i) {
        int px = 0, py = 0;
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            px = xs(rng);
            py = ys(rng);
            const double dx = px - gt_x, dy = py - gt_y;
            found = dx * dx + dy * dy >= d2;
        }
        if (!found) continue;  // grid too small to place a far peak
        peaks.push_back({static_cast<double>(px), static_cast<double>(py), amp(rng)});
    }
    return peaks;
}

Grid2D distractor_peak_augment(const Grid2D& s, std::mt19937_64& rng, double prob,
                               double gt_x, double gt_y, double sigma) {
    Grid2D out = s;
    const auto peaks =
        sample_distractor_peaks(rng, prob, gt_x, gt_y, s.width, s.height);
    add_score_peaks(out, peaks, sigma);
    return out;
}

}  // namespace scenetrack
