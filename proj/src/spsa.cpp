#include "scenetrack/spsa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scenetrack {

void SpsaConfig::validate() const {
    if (steps < 0) throw std::invalid_argument("SpsaConfig: steps must be >= 0");
    if (!(a > 0.0) || !(c > 0.0) || !(big_a >= 0.0))
        throw std::invalid_argument("SpsaConfig: gains must be positive");
    if (!(alpha > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("SpsaConfig: decay exponents must be positive");
    if (!(grad_clip > 0.0)) throw std::invalid_argument("SpsaConfig: grad_clip must be > 0");
    if (!(augment_prob >= 0.0 && augment_prob <= 1.0))
        throw std::invalid_argument("SpsaConfig: augment_prob must lie in [0, 1]");
}

namespace {

double rollout_loss(const ModelParams& params, const SyntheticSequence& seq,
                    const TrackerConfig& cfg, const LossWeights& weights,
                    const FilterWeights* filter,
                    const std::vector<std::vector<ScorePeak>>* peaks) {
    std::vector<FrameCapture> capture;
    SequenceHooks hooks;
    hooks.score_peaks = peaks;
    hooks.capture = &capture;
    hooks.filter = filter;
    track_sequence(seq.frames, seq.gt_boxes[0], cfg, params, &hooks);
    return sequence_loss(capture, seq.target.cx, seq.target.cy, weights, params.aux_head,
                         cfg.label);
}

FilterWeights sequence_filter(const SyntheticSequence& seq, const TrackerConfig& cfg) {
    std::mt19937_64 rng(cfg.filter_seed);
    const auto samples = build_training_set(seq.frames[0], seq.gt_boxes[0], cfg.label,
                                            cfg.stride, cfg.filter_augmentations, rng);
    return learn_filter(samples, cfg.filter_lambda, cfg.filter_cg_iters);
}

}  // namespace

SpsaResult spsa_train(ModelParams& params, const std::vector<SyntheticSequence>& corpus,
                      const TrackerConfig& cfg, const LossWeights& weights,
                      const SpsaConfig& spsa) {
    spsa.validate();
    cfg.validate();
    weights.validate();
    params.validate();
    if (corpus.empty()) throw std::invalid_argument("spsa_train: empty corpus");

    SpsaResult result;
    if (spsa.steps == 0) return result;

    std::vector<FilterWeights> filters;
    filters.reserve(corpus.size());
    for (const auto& seq : corpus) filters.push_back(sequence_filter(seq, cfg));

    std::mt19937_64 rng(spsa.seed);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
    std::bernoulli_distribution coin(0.5);

    std::vector<double> theta = flatten_params(params);
    const std::size_t dim = theta.size();
    std::vector<double> delta(dim);
    std::vector<double> shifted(dim);
    ModelParams probe = params;

    result.loss_trace.reserve(spsa.steps);
    for (int k = 0; k < spsa.steps; ++k) {
        const double ak = spsa.a / std::pow(k + 1 + spsa.big_a, spsa.alpha);
        const double ck = spsa.c / std::pow(k + 1, spsa.gamma);

        const std::size_t si = pick(rng);
        const SyntheticSequence& seq = corpus[si];
        for (double& d : delta) d = coin(rng) ? 1.0 : -1.0;

        std::vector<std::vector<ScorePeak>> peaks(seq.frames.size());
        for (std::size_t t = 1; t < seq.frames.size(); ++t)
            peaks[t] = sample_distractor_peaks(rng, spsa.augment_prob, seq.target.cx[t],
                                               seq.target.cy[t], cfg.width, cfg.height);

        for (std::size_t i = 0; i < dim; ++i) shifted[i] = theta[i] + ck * delta[i];
        unflatten_params(shifted, probe);
        const double loss_plus =
            rollout_loss(probe, seq, cfg, weights, &filters[si], &peaks);

        for (std::size_t i = 0; i < dim; ++i) shifted[i] = theta[i] - ck * delta[i];
        unflatten_params(shifted, probe);
        const double loss_minus =
            rollout_loss(probe, seq, cfg, weights, &filters[si], &peaks);

        if (!std::isfinite(loss_plus) || !std::isfinite(loss_minus))
            throw std::runtime_error("spsa_train: non-finite loss at step " +
                                     std::to_string(k));

        double g = (loss_plus - loss_minus) / (2.0 * ck);
        g = std::clamp(g, -spsa.grad_clip, spsa.grad_clip);
        for (std::size_t i = 0; i < dim; ++i) theta[i] -= ak * g * delta[i];

        result.loss_trace.push_back(0.5 * (loss_plus + loss_minus));
        ++result.steps_run;
    }
    unflatten_params(theta, params);
    return result;
}

double corpus_mean_loss(const ModelParams& params,
                        const std::vector<SyntheticSequence>& corpus,
                        const TrackerConfig& cfg, const LossWeights& weights) {
    if (corpus.empty()) throw std::invalid_argument("corpus_mean_loss: empty corpus");
    double acc = 0.0;
    for (const auto& seq : corpus)
        acc += rollout_loss(params, seq, cfg, weights, nullptr, nullptr);
    return acc / static_cast<double>(corpus.size());
}

}  // namespace scenetrack
