#include "scenetrack/fusion_predictor.hpp"

#include <cmath>
#include <stdexcept>

namespace scenetrack {

void PredictorParams::validate() const {
    conv1.validate();
    conv2.validate();
    if (conv1.out_channels != conv2.in_channels)
        throw std::invalid_argument("PredictorParams: conv channel chain mismatch");
    if (conv1.activation != Activation::Relu || conv2.activation != Activation::Sigmoid)
        throw std::invalid_argument("PredictorParams: activations must be relu then sigmoid");
    if (!(mu >= 0.0 && mu < 1.0))
        throw std::invalid_argument("PredictorParams: mu must lie in [0, 1)");
}

PredictorParams appearance_replicating_predictor_params(int state_dim, double a,
                                                        double spare_tap) {
    PredictorParams p;
    p.conv1 = ConvBlockParams::zeros(state_dim + 2, 16, Activation::Relu, NormKind::None);
    p.conv2 = ConvBlockParams::zeros(16, 1, Activation::Sigmoid, NormKind::None);
    p.conv1.k(0, 0, 1, 1) = a;
    p.conv2.k(0, 0, 1, 1) = 1.0;
    for (int j = 1; j < 16; ++j) p.conv2.k(0, j, 1, 1) = spare_tap;
    p.conv2.bias[0] = std::log(p.mu / (1.0 - p.mu)) - a * p.mu;
    return p;
}

FusedScores fuse_scores(const StateField& h_hat, const Grid2D& xi, const Grid2D& s,
                        const PredictorParams& params) {
    params.validate();
    const int w = s.width, h = s.height;
    if (h_hat.width != w || h_hat.height != h || xi.width != w || xi.height != h)
        throw std::invalid_argument("fuse_scores: shape mismatch");
    if (params.conv1.in_channels != h_hat.channels + 2)
        throw std::invalid_argument("fuse_scores: predictor channel count mismatch");

    Grid3D cat(w, h, h_hat.channels + 2);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double* dst = &cat.values[(static_cast<std::size_t>(y) * w + x) *
                                      cat.channels];
            dst[0] = s.at(x, y);
            const double* hv =
                &h_hat.values[(static_cast<std::size_t>(y) * w + x) * h_hat.channels];
            for (int c = 0; c < h_hat.channels; ++c) dst[1 + c] = hv[c];
            dst[1 + h_hat.channels] = xi.at(x, y);
        }
    }

    const Grid3D hidden = conv2d_same(cat, params.conv1);
    FusedScores out;
    out.raw = Grid2D(w, h);
    out.masked = Grid2D(w, h);
    conv2d_same_to1(hidden.values.data(), w, h, hidden.channels, params.conv2,
                    out.raw.values.data());
    for (std::size_t i = 0; i < out.raw.values.size(); ++i)
        out.masked.values[i] = s.values[i] > params.mu ? out.raw.values[i] : 0.0;
    return out;
}

std::pair<Cell, double> localize_target(const Grid2D& scores) {
    Cell best{0, 0};
    double best_v = scores.at(0, 0);
    for (int y = 0; y < scores.height; ++y)
        for (int x = 0; x < scores.width; ++x)
            if (scores.at(x, y) > best_v) {
                best_v = scores.at(x, y);
                best = {x, y};
            }
    return {best, best_v};
}

}  // namespace scenetrack
