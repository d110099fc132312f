#include "scenetrack/state_update.hpp"

#include <stdexcept>

namespace scenetrack {

void GruParams::validate() const {
    z_gate.validate();
    r_gate.validate();
    h_cand.validate();
    if (z_gate.in_channels != r_gate.in_channels || z_gate.in_channels != h_cand.in_channels ||
        z_gate.out_channels != r_gate.out_channels ||
        z_gate.out_channels != h_cand.out_channels)
        throw std::invalid_argument("GruParams: mismatched conv shapes");
    if (z_gate.in_channels != 4 + z_gate.out_channels)
        throw std::invalid_argument("GruParams: input channels must be 4 + state dim");
    if (z_gate.activation != Activation::Sigmoid || r_gate.activation != Activation::Sigmoid)
        throw std::invalid_argument("GruParams: gates must use sigmoid");
    if (h_cand.activation != Activation::Tanh)
        throw std::invalid_argument("GruParams: candidate must use tanh");
}

GruParams default_gru_params(int state_dim) {
    GruParams p;
    p.z_gate = ConvBlockParams::zeros(4 + state_dim, state_dim, Activation::Sigmoid,
                                      NormKind::None);
    p.r_gate = ConvBlockParams::zeros(4 + state_dim, state_dim, Activation::Sigmoid,
                                      NormKind::None);
    p.h_cand = ConvBlockParams::zeros(4 + state_dim, state_dim, Activation::Tanh,
                                      NormKind::None);
    for (int c = 0; c < state_dim; ++c) p.z_gate.bias[c] = -1.0;
    p.h_cand.k(0, 0, 1, 1) = 2.0;  // fused confidence -> state channel 0
    p.h_cand.k(0, 4, 1, 1) = 1.0;  // gated carry of state channel 0
    return p;
}

GruInput build_gru_input(const FusedScores& fused, const Grid2D& s) {
    const int w = s.width, h = s.height;
    if (fused.masked.width != w || fused.masked.height != h)
        throw std::invalid_argument("build_gru_input: shape mismatch");
    const double max_fused = fused.masked.max_value();
    const double max_s = s.max_value();

    GruInput f(w, h, 4);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double* dst = &f.values[(static_cast<std::size_t>(y) * w + x) * 4];
            dst[0] = fused.masked.at(x, y);
            dst[1] = s.at(x, y);
            dst[2] = max_fused;
            dst[3] = max_s;
        }
    }
    return f;
}

namespace {

Grid3D concat_channels(const Grid3D& a, const Grid3D& b) {
    Grid3D out(a.width, a.height, a.channels + b.channels);
    const std::size_t cells = static_cast<std::size_t>(a.width) * a.height;
    for (std::size_t i = 0; i < cells; ++i) {
        double* dst = &out.values[i * out.channels];
        const double* pa = &a.values[i * a.channels];
        const double* pb = &b.values[i * b.channels];
        for (int c = 0; c < a.channels; ++c) dst[c] = pa[c];
        for (int c = 0; c < b.channels; ++c) dst[a.channels + c] = pb[c];
    }
    return out;
}

}  // namespace

StateField conv_gru_step(const StateField& h_hat, const GruInput& f, const GruParams& params) {
    params.validate();
    if (f.width != h_hat.width || f.height != h_hat.height || f.channels != 4)
        throw std::invalid_argument("conv_gru_step: input shape mismatch");
    if (params.z_gate.in_channels != 4 + h_hat.channels)
        throw std::invalid_argument("conv_gru_step: state dim mismatch");

    const Grid3D fh = concat_channels(f, h_hat);
    const Grid3D z = conv2d_same(fh, params.z_gate);
    const Grid3D r = conv2d_same(fh, params.r_gate);

    Grid3D gated = h_hat;
    for (std::size_t i = 0; i < gated.values.size(); ++i) gated.values[i] *= r.values[i];
    const Grid3D cand = conv2d_same(concat_channels(f, gated), params.h_cand);

    StateField h = h_hat;
    for (std::size_t i = 0; i < h.values.size(); ++i)
        h.values[i] = (1.0 - z.values[i]) * h_hat.values[i] + z.values[i] * cand.values[i];
    return h;
}

}  // namespace scenetrack
