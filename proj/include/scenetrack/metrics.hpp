#pragma once

#include <vector>

#include "scenetrack/box.hpp"

namespace scenetrack {

struct MetricsReport {
    std::vector<double> thresholds;
    std::vector<double> op;  // fraction of frames with IoU >= threshold
    double auc = 0.0;        // mean of op over the threshold grid
    std::vector<double> ious;
};

// 51 uniform thresholds on [0, 1].
std::vector<double> default_overlap_thresholds();

MetricsReport compute_metrics(const std::vector<TargetBox>& pred,
                              const std::vector<TargetBox>& gt,
                              const std::vector<double>& thresholds);

}  // namespace scenetrack
