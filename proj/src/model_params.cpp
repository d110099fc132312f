#include "scenetrack/model_params.hpp"

#include <cmath>
#include <stdexcept>

namespace scenetrack {

void AuxHeadParams::validate() const {
    if (weight.empty()) throw std::invalid_argument("AuxHeadParams: empty weight");
    for (double v : weight)
        if (!std::isfinite(v)) throw std::invalid_argument("AuxHeadParams: non-finite weight");
    if (!std::isfinite(bias)) throw std::invalid_argument("AuxHeadParams: non-finite bias");
}

AuxHeadParams default_aux_head_params(int state_dim) {
    AuxHeadParams h;
    h.weight.assign(static_cast<std::size_t>(state_dim), 0.0);
    h.weight[0] = 4.0;
    h.bias = -2.0;
    return h;
}

Grid2D aux_head_apply(const AuxHeadParams& head, const StateField& h) {
    if (static_cast<int>(head.weight.size()) != h.channels)
        throw std::invalid_argument("aux_head_apply: state dim mismatch");
    Grid2D out(h.width, h.height);
    const std::size_t cells = static_cast<std::size_t>(h.width) * h.height;
    for (std::size_t i = 0; i < cells; ++i) {
        double acc = head.bias;
        const double* hv = &h.values[i * h.channels];
        for (int c = 0; c < h.channels; ++c) acc += head.weight[c] * hv[c];
        out.values[i] = 1.0 / (1.0 + std::exp(-acc));
    }
    return out;
}

void ModelParams::validate() const {
    correspondence.validate();
    predictor.validate();
    gru.validate();
    initializer.validate();
    aux_head.validate();
    const int s = gru.z_gate.out_channels;
    if (initializer.conv.out_channels != s ||
        predictor.conv1.in_channels != s + 2 ||
        static_cast<int>(aux_head.weight.size()) != s)
        throw std::invalid_argument("ModelParams: state dimension disagreement");
}

ModelParams default_model_params(int state_dim) {
    ModelParams p;
    p.correspondence = passthrough_correspondence_params();
    p.predictor = appearance_replicating_predictor_params(state_dim);
    p.gru = default_gru_params(state_dim);
    p.initializer = default_initializer_params(state_dim);
    p.aux_head = default_aux_head_params(state_dim);
    return p;
}

namespace {

template <typename Fn>
void visit_blocks(ModelParams& p, Fn&& fn) {
    for (auto* stage : {&p.correspondence.stage1, &p.correspondence.stage2}) {
        fn((*stage)[0]);
        fn((*stage)[1]);
    }
    fn(p.predictor.conv1);
    fn(p.predictor.conv2);
    fn(p.gru.z_gate);
    fn(p.gru.r_gate);
    fn(p.gru.h_cand);
    fn(p.initializer.conv);
}

}  // namespace

std::size_t trainable_parameter_count(const ModelParams& params) {
    std::size_t n = 0;
    visit_blocks(const_cast<ModelParams&>(params),
                 [&](ConvBlockParams& b) { n += b.parameter_count(); });
    return n + params.aux_head.weight.size() + 1;
}

std::vector<double> flatten_params(const ModelParams& params) {
    std::vector<double> theta;
    theta.reserve(trainable_parameter_count(params));
    visit_blocks(const_cast<ModelParams&>(params), [&](ConvBlockParams& b) {
        theta.insert(theta.end(), b.kernel.begin(), b.kernel.end());
        theta.insert(theta.end(), b.bias.begin(), b.bias.end());
        if (b.norm == NormKind::Affine) {
            theta.insert(theta.end(), b.scale.begin(), b.scale.end());
            theta.insert(theta.end(), b.shift.begin(), b.shift.end());
        }
    });
    theta.insert(theta.end(), params.aux_head.weight.begin(), params.aux_head.weight.end());
    theta.push_back(params.aux_head.bias);
    return theta;
}

void unflatten_params(const std::vector<double>& theta, ModelParams& params) {
    if (theta.size() != trainable_parameter_count(params))
        throw std::invalid_argument("unflatten_params: size mismatch");
    std::size_t at = 0;
    auto take = [&](std::vector<double>& dst) {
        std::copy(theta.begin() + at, theta.begin() + at + dst.size(), dst.begin());
        at += dst.size();
    };
    visit_blocks(params, [&](ConvBlockParams& b) {
        take(b.kernel);
        take(b.bias);
        if (b.norm == NormKind::Affine) {
            take(b.scale);
            take(b.shift);
        }
    });
    take(params.aux_head.weight);
    params.aux_head.bias = theta[at++];
}

}  // namespace scenetrack
