#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scenetrack/grid.hpp"

namespace scenetrack {

enum class Activation : std::uint8_t { None, Relu, Sigmoid, Tanh };
enum class NormKind : std::uint8_t { None, Affine };

std::string to_string(Activation a);
std::string to_string(NormKind n);
Activation activation_from_string(const std::string& s);
NormKind norm_from_string(const std::string& s);

// One 3x3 same-padding convolution block: conv + bias, optional per-channel
// affine (inference-mode batch norm with folded statistics), then activation.
//
// Kernel layout: flat [out_ch][in_ch][ky][kx], ky/kx in {0,1,2} mapping to
// spatial offsets {-1,0,+1}.
struct ConvBlockParams {
    int in_channels = 0;
    int out_channels = 0;
    std::vector<double> kernel;  // 3*3*in*out
    std::vector<double> bias;    // out
    Activation activation = Activation::None;
    NormKind norm = NormKind::None;
    std::vector<double> scale;  // out, used when norm == Affine
    std::vector<double> shift;  // out

    static ConvBlockParams zeros(int in_ch, int out_ch, Activation act,
                                 NormKind norm_kind = NormKind::None);

    double& k(int oc, int ic, int ky, int kx) {
        return kernel[((static_cast<std::size_t>(oc) * in_channels + ic) * 3 + ky) * 3 + kx];
    }
    double k(int oc, int ic, int ky, int kx) const {
        return kernel[((static_cast<std::size_t>(oc) * in_channels + ic) * 3 + ky) * 3 + kx];
    }

    std::size_t parameter_count() const;
    void validate() const;  // throws std::invalid_argument on bad shapes
};

// 3x3 convolution with zero padding and unchanged spatial size.
// Throws std::invalid_argument if input.channels != params.in_channels.
Grid3D conv2d_same(const Grid3D& input, const ConvBlockParams& params);

// Single-channel fast path used by the cost-volume slice processing;
// identical arithmetic to conv2d_same for in_channels == 1.
void conv2d_same_1ch(const double* input, int w, int h, const ConvBlockParams& params,
                     double* output);
// Companion fast path collapsing to one output channel.
void conv2d_same_to1(const double* input, int w, int h, int channels,
                     const ConvBlockParams& params, double* output);

double apply_activation(Activation a, double v);

// He-style random init, used for untrained-but-nondegenerate defaults.
void randomize_kernel(ConvBlockParams& p, double stddev, std::mt19937_64& rng);

}  // namespace scenetrack
