#include "scenetrack/metrics.hpp"

#include <stdexcept>

namespace scenetrack {

std::vector<double> default_overlap_thresholds() {
    std::vector<double> t(51);
    for (int i = 0; i <= 50; ++i) t[i] = static_cast<double>(i) / 50.0;
    return t;
}

MetricsReport compute_metrics(const std::vector<TargetBox>& pred,
                              const std::vector<TargetBox>& gt,
                              const std::vector<double>& thresholds) {
    if (pred.size() != gt.size())
        throw std::invalid_argument("compute_metrics: length mismatch");
    if (pred.empty()) throw std::invalid_argument("compute_metrics: empty input");
    if (thresholds.empty()) throw std::invalid_argument("compute_metrics: no thresholds");

    MetricsReport r;
    r.thresholds = thresholds;
    r.ious.reserve(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i)
        r.ious.push_back(box_iou(pred[i], gt[i]));

    r.op.resize(thresholds.size());
    const double inv_n = 1.0 / static_cast<double>(r.ious.size());
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        int hits = 0;
        for (double iou : r.ious)
            if (iou >= thresholds[k]) ++hits;
        r.op[k] = hits * inv_n;
    }
    double acc = 0.0;
    for (double v : r.op) acc += v;
    r.auc = acc / static_cast<double>(r.op.size());
    return r;
}

}  // namespace scenetrack
