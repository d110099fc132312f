#include "scenetrack/state_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace scenetrack {

void InitializerParams::validate() const {
    conv.validate();
    label.validate();
    if (conv.in_channels != 1)
        throw std::invalid_argument("InitializerParams: conv must take one channel");
    if (conv.activation != Activation::Tanh)
        throw std::invalid_argument("InitializerParams: conv must use tanh");
}

InitializerParams default_initializer_params(int state_dim, double gain) {
    InitializerParams p;
    p.conv = ConvBlockParams::zeros(1, state_dim, Activation::Tanh, NormKind::None);
    p.conv.k(0, 0, 1, 1) = gain;
    return p;
}

StateField init_states(const TargetBox& b0, const InitializerParams& params, int width,
                       int height, double stride) {
    params.validate();
    b0.validate();
    const int cx = static_cast<int>(std::floor(b0.cx / stride));
    const int cy = static_cast<int>(std::floor(b0.cy / stride));
    if (!in_bounds(cx, cy, width, height))
        throw std::invalid_argument("annotation out of crop");

    const Grid2D label = gaussian_label_map(pixel_to_grid(b0.cx, stride),
                                            pixel_to_grid(b0.cy, stride), params.label,
                                            width, height);
    Grid3D in(width, height, 1);
    std::memcpy(in.values.data(), label.values.data(), label.values.size() * sizeof(double));
    return conv2d_same(in, params.conv);
}

StateField propagate_states(const StateField& h_prev, const CorrespondenceField& p) {
    if (h_prev.width != p.width || h_prev.height != p.height)
        throw std::invalid_argument("propagate_states: shape mismatch");

    const int w = p.width, h = p.height, dm = p.window.d_max;
    const int slots = p.window.slot_count();
    const int ch = h_prev.channels;
    StateField out(w, h, ch);

    std::vector<double> acc(ch), lo(ch), hi(ch);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t base = (static_cast<std::size_t>(y) * w + x) * slots;
            const int dx0 = std::max(-dm, x - (w - 1)), dx1 = std::min(dm, x);
            const int dy0 = std::max(-dm, y - (h - 1)), dy1 = std::min(dm, y);

            std::fill(acc.begin(), acc.end(), 0.0);
            std::fill(lo.begin(), lo.end(), std::numeric_limits<double>::infinity());
            std::fill(hi.begin(), hi.end(), -std::numeric_limits<double>::infinity());
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * p.window.side() + dm;
                const double* src_row =
                    &h_prev.values[(static_cast<std::size_t>(y - dy) * w) * ch];
                for (int dx = dx0; dx <= dx1; ++dx) {
                    const double pv = p.prob[base + row + dx];
                    const double* src = src_row + static_cast<std::size_t>(x - dx) * ch;
                    for (int c = 0; c < ch; ++c) {
                        acc[c] += pv * src[c];
                        lo[c] = std::min(lo[c], src[c]);
                        hi[c] = std::max(hi[c], src[c]);
                    }
                }
            }
            double* dst = &out.values[(static_cast<std::size_t>(y) * w + x) * ch];
            for (int c = 0; c < ch; ++c) {
                if (acc[c] < lo[c] - 1e-9 || acc[c] > hi[c] + 1e-9)
                    throw std::logic_error("propagate_states: convexity bound violated");
                dst[c] = acc[c];
            }
        }
    }
    return out;
}

PropagationResult propagation_pipeline(const Grid3D& x_curr, const Grid3D& x_prev,
                                       const StateField& h_prev,
                                       const CorrespondenceNetParams& nets,
                                       DisplacementWindow window) {
    if (x_curr.width != x_prev.width || x_curr.height != x_prev.height ||
        x_curr.channels != x_prev.channels)
        throw std::invalid_argument("propagation_pipeline: frame shape mismatch");
    if (h_prev.width != x_curr.width || h_prev.height != x_curr.height)
        throw std::invalid_argument("propagation_pipeline: state shape mismatch");
    const CostVolume cv = build_cost_volume(x_prev, x_curr, window);
    return propagation_pipeline_from_costs(cv, h_prev, nets);
}

PropagationResult propagation_pipeline_from_costs(const CostVolume& cv,
                                                  const StateField& h_prev,
                                                  const CorrespondenceNetParams& nets) {
    const MatchingCosts phi = process_matching_costs(cv, nets.stage1);
    const MatchingCosts phi_prime = initial_correspondence(phi);
    const CorrespondenceField p = refine_correspondence(phi_prime, nets.stage2);
    return {propagate_states(h_prev, p), reliability_map(p)};
}

}  // namespace scenetrack
