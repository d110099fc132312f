#include "scenetrack/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scenetrack/grid_ops.hpp"

namespace scenetrack {

int CorrespondenceField::support_size(int x, int y) const {
    const int dm = window.d_max;
    const int nx = std::min(x, dm) + std::min(width - 1 - x, dm) + 1;
    const int ny = std::min(y, dm) + std::min(height - 1 - y, dm) + 1;
    return nx * ny;
}

void CorrespondenceNetParams::validate() const {
    for (const auto* stage : {&stage1, &stage2}) {
        (*stage)[0].validate();
        (*stage)[1].validate();
        if ((*stage)[0].in_channels != 1 || (*stage)[1].out_channels != 1 ||
            (*stage)[0].out_channels != (*stage)[1].in_channels)
            throw std::invalid_argument("CorrespondenceNetParams: stage must map 1 -> k -> 1");
    }
}

std::array<ConvBlockParams, 2> passthrough_stage(int hidden, double gain, double shift) {
    auto b1 = ConvBlockParams::zeros(1, hidden, Activation::Relu, NormKind::Affine);
    b1.k(0, 0, 1, 1) = gain;
    b1.bias[0] = shift * gain;
    auto b2 = ConvBlockParams::zeros(hidden, 1, Activation::None, NormKind::Affine);
    b2.k(0, 0, 1, 1) = 1.0;
    b2.shift[0] = -shift * gain;
    return {b1, b2};
}

std::array<ConvBlockParams, 2> zero_stage(int hidden) {
    return {ConvBlockParams::zeros(1, hidden, Activation::Relu, NormKind::Affine),
            ConvBlockParams::zeros(hidden, 1, Activation::None, NormKind::Affine)};
}

CorrespondenceNetParams passthrough_correspondence_params(int hidden) {
    CorrespondenceNetParams p;
    p.stage1 = passthrough_stage(hidden);
    p.stage2 = passthrough_stage(hidden);
    return p;
}

CorrespondenceNetParams zero_correspondence_params(int hidden) {
    CorrespondenceNetParams p;
    p.stage1 = zero_stage(hidden);
    p.stage2 = zero_stage(hidden);
    return p;
}

namespace {

// Shared slice machinery: scatter each per-r' slab to a dense W x H grid,
// run both conv blocks, gather the processed values back.  Buffers are
// reused across slices; this loop dominates the tracker's frame cost.
MatchingCosts apply_stage_slicewise(const MatchingCosts& in,
                                    const std::array<ConvBlockParams, 2>& stage) {
    if (stage[0].in_channels != 1 || stage[1].out_channels != 1 ||
        stage[0].out_channels != stage[1].in_channels)
        throw std::invalid_argument("slice stage must map 1 -> k -> 1");

    const int w = in.width, h = in.height, dm = in.window.d_max;
    const int slots = in.window.slot_count();
    MatchingCosts out(w, h, in.window);
    out.valid = in.valid;

    const std::size_t cells = static_cast<std::size_t>(w) * h;
    std::vector<double> slice(cells);
    std::vector<double> hidden(cells * stage[0].out_channels);
    std::vector<double> processed(cells);

    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < w; ++px) {
            const std::size_t base = (static_cast<std::size_t>(py) * w + px) * slots;
            std::fill(slice.begin(), slice.end(), 0.0);
            const int dx0 = std::max(-dm, -px), dx1 = std::min(dm, w - 1 - px);
            const int dy0 = std::max(-dm, -py), dy1 = std::min(dm, h - 1 - py);
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * in.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx)
                    slice[static_cast<std::size_t>(py + dy) * w + (px + dx)] =
                        in.costs[base + row + dx];
            }

            conv2d_same_1ch(slice.data(), w, h, stage[0], hidden.data());
            conv2d_same_to1(hidden.data(), w, h, stage[0].out_channels, stage[1],
                            processed.data());

            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * in.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx)
                    out.costs[base + row + dx] =
                        processed[static_cast<std::size_t>(py + dy) * w + (px + dx)];
            }
        }
    }
    return out;
}

}  // namespace

MatchingCosts process_matching_costs(const CostVolume& cv,
                                     const std::array<ConvBlockParams, 2>& stage1) {
    return apply_stage_slicewise(cv, stage1);
}

MatchingCosts initial_correspondence(const MatchingCosts& phi) {
    const int w = phi.width, h = phi.height, dm = phi.window.d_max;
    const int slots = phi.window.slot_count();
    MatchingCosts out(w, h, phi.window);
    out.valid = phi.valid;

    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < w; ++px) {
            const std::size_t base = (static_cast<std::size_t>(py) * w + px) * slots;
            const int dx0 = std::max(-dm, -px), dx1 = std::min(dm, w - 1 - px);
            const int dy0 = std::max(-dm, -py), dy1 = std::min(dm, h - 1 - py);

            double max_v = -std::numeric_limits<double>::infinity();
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * phi.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx)
                    max_v = std::max(max_v, phi.costs[base + row + dx]);
            }
            double sum = 0.0;
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * phi.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx) {
                    const double e = std::exp(phi.costs[base + row + dx] - max_v);
                    out.costs[base + row + dx] = e;
                    sum += e;
                }
            }
            const double inv = 1.0 / sum;
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * phi.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx) out.costs[base + row + dx] *= inv;
            }
        }
    }
    return out;
}

CorrespondenceField refine_correspondence(const MatchingCosts& phi_prime,
                                          const std::array<ConvBlockParams, 2>& stage2) {
    const MatchingCosts psi = apply_stage_slicewise(phi_prime, stage2);

    const int w = psi.width, h = psi.height, dm = psi.window.d_max;
    const int slots = psi.window.slot_count();
    CorrespondenceField p(w, h, psi.window);

    // Regroup by current cell: the value stored under (r', delta) belongs to
    // the row of r = r' + delta with reverse displacement delta.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t base = (static_cast<std::size_t>(y) * w + x) * slots;
            const int dx0 = std::max(-dm, x - (w - 1)), dx1 = std::min(dm, x);
            const int dy0 = std::max(-dm, y - (h - 1)), dy1 = std::min(dm, y);

            double max_v = -std::numeric_limits<double>::infinity();
            for (int dy = dy0; dy <= dy1; ++dy) {
                for (int dx = dx0; dx <= dx1; ++dx) {
                    const double v = psi.costs[psi.index(x - dx, y - dy, dx, dy)];
                    max_v = std::max(max_v, v);
                }
            }
            double sum = 0.0;
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * p.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx) {
                    const double e =
                        std::exp(psi.costs[psi.index(x - dx, y - dy, dx, dy)] - max_v);
                    p.prob[base + row + dx] = e;
                    p.valid[base + row + dx] = 1;
                    sum += e;
                }
            }
            const double inv = 1.0 / sum;
            for (int dy = dy0; dy <= dy1; ++dy) {
                const int row = (dy + dm) * p.window.side() + dm;
                for (int dx = dx0; dx <= dx1; ++dx) p.prob[base + row + dx] *= inv;
            }
        }
    }
    return p;
}

Grid2D reliability_map(const CorrespondenceField& p) {
    Grid2D xi(p.width, p.height);
    const int slots = p.window.slot_count();
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const std::size_t base = (static_cast<std::size_t>(y) * p.width + x) * slots;
            double acc = 0.0;
            for (int s = 0; s < slots; ++s) {
                if (!p.valid[base + s]) continue;
                const double v = p.prob[base + s];
                if (v > 0.0) acc += v * std::log(v);
            }
            xi.at(x, y) = acc;
        }
    }
    return xi;
}

}  // namespace scenetrack
