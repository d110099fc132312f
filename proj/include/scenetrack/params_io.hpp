#pragma once

#include <string>

#include "scenetrack/io_util.hpp"
#include "scenetrack/model_params.hpp"

namespace scenetrack {

// Versioned JSON document holding every parameter tensor with shape
// metadata.  Doubles are emitted with round-trip precision, so
// load(save(p)) reproduces p bit-exactly.  Load failures (parse errors,
// shape mismatches) raise IoError.
void save_model_params(const std::string& path, const ModelParams& params);
ModelParams load_model_params(const std::string& path);

}  // namespace scenetrack
