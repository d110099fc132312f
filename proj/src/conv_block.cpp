#include "scenetrack/conv_block.hpp"

#include <cmath>
#include <stdexcept>

namespace scenetrack {

std::string to_string(Activation a) {
    switch (a) {
        case Activation::None: return "none";
        case Activation::Relu: return "relu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
    }
    return "none";
}

std::string to_string(NormKind n) {
    return n == NormKind::Affine ? "affine" : "none";
}

Activation activation_from_string(const std::string& s) {
    if (s == "none") return Activation::None;
    if (s == "relu") return Activation::Relu;
    if (s == "sigmoid") return Activation::Sigmoid;
    if (s == "tanh") return Activation::Tanh;
    throw std::invalid_argument("unknown activation tag: " + s);
}

NormKind norm_from_string(const std::string& s) {
    if (s == "none") return NormKind::None;
    if (s == "affine") return NormKind::Affine;
    throw std::invalid_argument("unknown norm tag: " + s);
}

ConvBlockParams ConvBlockParams::zeros(int in_ch, int out_ch, Activation act, NormKind norm_kind) {
    ConvBlockParams p;
    p.in_channels = in_ch;
    p.out_channels = out_ch;
    p.kernel.assign(static_cast<std::size_t>(9) * in_ch * out_ch, 0.0);
    p.bias.assign(out_ch, 0.0);
    p.activation = act;
    p.norm = norm_kind;
    if (norm_kind == NormKind::Affine) {
        p.scale.assign(out_ch, 1.0);
        p.shift.assign(out_ch, 0.0);
    }
    return p;
}

std::size_t ConvBlockParams::parameter_count() const {
    std::size_t n = kernel.size() + bias.size();
    if (norm == NormKind::Affine) n += scale.size() + shift.size();
    return n;
}

void ConvBlockParams::validate() const {
    if (in_channels < 1 || out_channels < 1)
        throw std::invalid_argument("ConvBlockParams: channel counts must be >= 1");
    if (kernel.size() != static_cast<std::size_t>(9) * in_channels * out_channels)
        throw std::invalid_argument("ConvBlockParams: kernel size mismatch");
    if (bias.size() != static_cast<std::size_t>(out_channels))
        throw std::invalid_argument("ConvBlockParams: bias size mismatch");
    if (norm == NormKind::Affine &&
        (scale.size() != static_cast<std::size_t>(out_channels) ||
         shift.size() != static_cast<std::size_t>(out_channels)))
        throw std::invalid_argument("ConvBlockParams: affine norm size mismatch");
    for (double v : kernel)
        if (!std::isfinite(v)) throw std::invalid_argument("ConvBlockParams: non-finite kernel");
    for (double v : bias)
        if (!std::isfinite(v)) throw std::invalid_argument("ConvBlockParams: non-finite bias");
}

double apply_activation(Activation a, double v) {
    switch (a) {
        case Activation::None: return v;
        case Activation::Relu: return v > 0.0 ? v : 0.0;
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
        case Activation::Tanh: return std::tanh(v);
    }
    return v;
}

namespace {

inline double finish(double acc, const ConvBlockParams& p, int oc) {
    double v = acc + p.bias[oc];
    if (p.norm == NormKind::Affine) v = p.scale[oc] * v + p.shift[oc];
    return apply_activation(p.activation, v);
}

}  // namespace

Grid3D conv2d_same(const Grid3D& input, const ConvBlockParams& params) {
    if (input.channels != params.in_channels)
        throw std::invalid_argument("conv2d_same: input channel mismatch");

    const int w = input.width, h = input.height;
    const int cin = params.in_channels, cout = params.out_channels;
    Grid3D out(w, h, cout);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int oc = 0; oc < cout; ++oc) {
                double acc = 0.0;
                for (int ky = 0; ky < 3; ++ky) {
                    const int sy = y + ky - 1;
                    if (sy < 0 || sy >= h) continue;
                    for (int kx = 0; kx < 3; ++kx) {
                        const int sx = x + kx - 1;
                        if (sx < 0 || sx >= w) continue;
                        const double* in_px = &input.values[(static_cast<std::size_t>(sy) * w + sx) * cin];
                        const double* kk = &params.kernel[((static_cast<std::size_t>(oc) * cin) * 3 + ky) * 3 + kx];
                        for (int ic = 0; ic < cin; ++ic)
                            acc += in_px[ic] * kk[static_cast<std::size_t>(ic) * 9];
                    }
                }
                out.values[(static_cast<std::size_t>(y) * w + x) * cout + oc] = finish(acc, params, oc);
            }
        }
    }
    return out;
}

// Hot path for the correspondence module: single input channel, kernel
// re-read per tap, accumulators kept per output channel so the compiler can
// vectorize the oc loop.
void conv2d_same_1ch(const double* input, int w, int h, const ConvBlockParams& params,
                     double* output) {
    const int cout = params.out_channels;
    std::vector<double> acc(static_cast<std::size_t>(cout));
    for (int y = 0; y < h; ++y) {
        const int ky0 = y > 0 ? 0 : 1;
        const int ky1 = y < h - 1 ? 3 : 2;
        for (int x = 0; x < w; ++x) {
            const int kx0 = x > 0 ? 0 : 1;
            const int kx1 = x < w - 1 ? 3 : 2;
            for (int oc = 0; oc < cout; ++oc) acc[oc] = 0.0;
            for (int ky = ky0; ky < ky1; ++ky) {
                const double* row = input + static_cast<std::size_t>(y + ky - 1) * w + x - 1;
                for (int kx = kx0; kx < kx1; ++kx) {
                    const double v = row[kx];
                    const double* kk = params.kernel.data() + (static_cast<std::size_t>(ky) * 3 + kx);
                    for (int oc = 0; oc < cout; ++oc)
                        acc[oc] += v * kk[static_cast<std::size_t>(oc) * 9];
                }
            }
            double* out_px = output + (static_cast<std::size_t>(y) * w + x) * cout;
            for (int oc = 0; oc < cout; ++oc) out_px[oc] = finish(acc[oc], params, oc);
        }
    }
}

void conv2d_same_to1(const double* input, int w, int h, int channels,
                     const ConvBlockParams& params, double* output) {
    for (int y = 0; y < h; ++y) {
        const int ky0 = y > 0 ? 0 : 1;
        const int ky1 = y < h - 1 ? 3 : 2;
        for (int x = 0; x < w; ++x) {
            const int kx0 = x > 0 ? 0 : 1;
            const int kx1 = x < w - 1 ? 3 : 2;
            double acc = 0.0;
            for (int ky = ky0; ky < ky1; ++ky) {
                for (int kx = kx0; kx < kx1; ++kx) {
                    const double* in_px =
                        input + (static_cast<std::size_t>(y + ky - 1) * w + (x + kx - 1)) * channels;
                    const double* kk =
                        params.kernel.data() + (static_cast<std::size_t>(ky) * 3 + kx);
                    for (int ic = 0; ic < channels; ++ic)
                        acc += in_px[ic] * kk[static_cast<std::size_t>(ic) * 9];
                }
            }
            output[static_cast<std::size_t>(y) * w + x] = finish(acc, params, 0);
        }
    }
}

void randomize_kernel(ConvBlockParams& p, double stddev, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, stddev);
    for (double& v : p.kernel) v = dist(rng);
}

}  // namespace scenetrack
