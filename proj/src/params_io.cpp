#include "scenetrack/params_io.hpp"

#include <json.hpp>

namespace scenetrack {

namespace {

nlohmann::json block_to_json(const ConvBlockParams& b) {
    nlohmann::json j;
    j["in"] = b.in_channels;
    j["out"] = b.out_channels;
    j["activation"] = to_string(b.activation);
    j["norm"] = to_string(b.norm);
    j["kernel"] = b.kernel;
    j["bias"] = b.bias;
    if (b.norm == NormKind::Affine) {
        j["scale"] = b.scale;
        j["shift"] = b.shift;
    }
    return j;
}

ConvBlockParams block_from_json(const nlohmann::json& j) {
    ConvBlockParams b;
    b.in_channels = j.at("in").get<int>();
    b.out_channels = j.at("out").get<int>();
    b.activation = activation_from_string(j.at("activation").get<std::string>());
    b.norm = norm_from_string(j.at("norm").get<std::string>());
    b.kernel = j.at("kernel").get<std::vector<double>>();
    b.bias = j.at("bias").get<std::vector<double>>();
    if (b.norm == NormKind::Affine) {
        b.scale = j.at("scale").get<std::vector<double>>();
        b.shift = j.at("shift").get<std::vector<double>>();
    }
    b.validate();
    return b;
}

}  // namespace

void save_model_params(const std::string& path, const ModelParams& params) {
    params.validate();
    nlohmann::json j;
    j["format"] = "scenetrack-params";
    j["version"] = 1;
    j["state_dim"] = params.gru.z_gate.out_channels;
    j["correspondence"] = {
        {"stage1",
         {block_to_json(params.correspondence.stage1[0]),
          block_to_json(params.correspondence.stage1[1])}},
        {"stage2",
         {block_to_json(params.correspondence.stage2[0]),
          block_to_json(params.correspondence.stage2[1])}},
    };
    j["predictor"] = {{"conv1", block_to_json(params.predictor.conv1)},
                      {"conv2", block_to_json(params.predictor.conv2)},
                      {"mu", params.predictor.mu}};
    j["gru"] = {{"z_gate", block_to_json(params.gru.z_gate)},
                {"r_gate", block_to_json(params.gru.r_gate)},
                {"h_cand", block_to_json(params.gru.h_cand)}};
    j["initializer"] = {{"conv", block_to_json(params.initializer.conv)},
                        {"label",
                         {{"sigma", params.initializer.label.sigma},
                          {"peak", params.initializer.label.peak}}}};
    j["aux_head"] = {{"weight", params.aux_head.weight}, {"bias", params.aux_head.bias}};
    atomic_write_file(path, j.dump(2) + "\n");
}

ModelParams load_model_params(const std::string& path) {
    const std::string s = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad params json: " + path + " (" + e.what() + ")");
    }
    try {
        if (j.at("format") != "scenetrack-params")
            throw IoError("not a params file: " + path);
        if (j.at("version").get<int>() != 1)
            throw IoError("unsupported params version: " + path);

        ModelParams p;
        const auto& corr = j.at("correspondence");
        p.correspondence.stage1 = {block_from_json(corr.at("stage1").at(0)),
                                   block_from_json(corr.at("stage1").at(1))};
        p.correspondence.stage2 = {block_from_json(corr.at("stage2").at(0)),
                                   block_from_json(corr.at("stage2").at(1))};
        p.predictor.conv1 = block_from_json(j.at("predictor").at("conv1"));
        p.predictor.conv2 = block_from_json(j.at("predictor").at("conv2"));
        p.predictor.mu = j.at("predictor").at("mu").get<double>();
        p.gru.z_gate = block_from_json(j.at("gru").at("z_gate"));
        p.gru.r_gate = block_from_json(j.at("gru").at("r_gate"));
        p.gru.h_cand = block_from_json(j.at("gru").at("h_cand"));
        p.initializer.conv = block_from_json(j.at("initializer").at("conv"));
        p.initializer.label.sigma = j.at("initializer").at("label").at("sigma").get<double>();
        p.initializer.label.peak = j.at("initializer").at("label").at("peak").get<double>();
        p.aux_head.weight = j.at("aux_head").at("weight").get<std::vector<double>>();
        p.aux_head.bias = j.at("aux_head").at("bias").get<double>();
        p.validate();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad params fields: " + path + " (" + e.what() + ")");
    } catch (const std::invalid_argument& e) {
        throw IoError("params shape check failed: " + path + " (" + e.what() + ")");
    }
}

}  // namespace scenetrack
