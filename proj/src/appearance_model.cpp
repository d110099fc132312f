#include "scenetrack/appearance_model.hpp"

#include <cmath>
#include <stdexcept>

namespace scenetrack {

void FilterWeights::validate() const {
    conv.validate();
    if (conv.out_channels != 1 || conv.activation != Activation::None ||
        conv.norm != NormKind::None)
        throw std::invalid_argument("FilterWeights: must be a bare D -> 1 convolution");
    if (!(lambda >= 0.0)) throw std::invalid_argument("FilterWeights: lambda must be >= 0");
}

std::vector<TrainingSample> build_training_set(const Grid3D& x0, const TargetBox& b0,
                                               const LabelConfig& label_cfg, double stride,
                                               int n_aug, std::mt19937_64& rng) {
    if (n_aug < 0) throw std::invalid_argument("build_training_set: n_aug must be >= 0");
    b0.validate();
    const int w = x0.width, h = x0.height, d = x0.channels;
    const double gx = pixel_to_grid(b0.cx, stride);
    const double gy = pixel_to_grid(b0.cy, stride);

    double sq = 0.0;
    for (double v : x0.values) sq += v * v;
    const double noise_sigma = 0.05 * std::sqrt(sq / static_cast<double>(x0.values.size()));

    std::vector<TrainingSample> out;
    out.reserve(static_cast<std::size_t>(n_aug) + 1);
    out.push_back({x0, gaussian_label_map(gx, gy, label_cfg, w, h)});

    std::uniform_int_distribution<int> shift_dist(-3, 3);
    std::bernoulli_distribution flip_dist(0.5);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (int i = 0; i < n_aug; ++i) {
        const int sx = shift_dist(rng);
        const int sy = shift_dist(rng);
        const bool flip = flip_dist(rng);

        Grid3D feat(w, h, d);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                int ux = x - sx;
                const int uy = y - sy;
                if (flip && ux >= 0 && ux < w) ux = w - 1 - ux;
                if (!in_bounds(ux, uy, w, h)) continue;
                for (int c = 0; c < d; ++c) feat.at(x, y, c) = x0.at(ux, uy, c);
            }
        }
        if (noise_sigma > 0.0)
            for (double& v : feat.values) v += noise(rng);

        const double ax = (flip ? (w - 1) - gx : gx) + sx;
        const double ay = gy + sy;
        out.push_back({std::move(feat), gaussian_label_map(ax, ay, label_cfg, w, h)});
    }
    return out;
}

namespace {

// s(x,y) = sum_{c,ky,kx} v[(c*3+ky)*3+kx] * feat(x+kx-1, y+ky-1, c)
void filter_forward(const Grid3D& feat, const std::vector<double>& v, Grid2D& s) {
    const int w = feat.width, h = feat.height, d = feat.channels;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < 3; ++ky) {
                const int sy = y + ky - 1;
                if (sy < 0 || sy >= h) continue;
                for (int kx = 0; kx < 3; ++kx) {
                    const int sx = x + kx - 1;
                    if (sx < 0 || sx >= w) continue;
                    const double* px =
                        &feat.values[(static_cast<std::size_t>(sy) * w + sx) * d];
                    for (int c = 0; c < d; ++c)
                        acc += v[(static_cast<std::size_t>(c) * 3 + ky) * 3 + kx] * px[c];
                }
            }
            s.at(x, y) = acc;
        }
    }
}

// Adjoint of filter_forward: accumulates scale * X^T g into out.
void filter_adjoint_accum(const Grid3D& feat, const Grid2D& g, double scale,
                          std::vector<double>& out) {
    const int w = feat.width, h = feat.height, d = feat.channels;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gv = g.at(x, y) * scale;
            if (gv == 0.0) continue;
            for (int ky = 0; ky < 3; ++ky) {
                const int sy = y + ky - 1;
                if (sy < 0 || sy >= h) continue;
                for (int kx = 0; kx < 3; ++kx) {
                    const int sx = x + kx - 1;
                    if (sx < 0 || sx >= w) continue;
                    const double* px =
                        &feat.values[(static_cast<std::size_t>(sy) * w + sx) * d];
                    for (int c = 0; c < d; ++c)
                        out[(static_cast<std::size_t>(c) * 3 + ky) * 3 + kx] += gv * px[c];
                }
            }
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double objective_at(const std::vector<TrainingSample>& samples, const std::vector<double>& v,
                    double lambda) {
    const double n = static_cast<double>(samples.size());
    double obj = lambda * lambda * dot(v, v);
    Grid2D s(samples[0].features.width, samples[0].features.height);
    for (const auto& sample : samples) {
        filter_forward(sample.features, v, s);
        double res = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double e = s.values[i] - sample.label.values[i];
            res += e * e;
        }
        obj += res / n;
    }
    return obj;
}

}  // namespace

FilterWeights learn_filter(const std::vector<TrainingSample>& samples, double lambda,
                           int cg_iters) {
    if (samples.empty()) throw std::invalid_argument("learn_filter: no samples");
    if (cg_iters < 1) throw std::invalid_argument("learn_filter: cg_iters must be >= 1");
    if (!(lambda >= 0.0)) throw std::invalid_argument("learn_filter: lambda must be >= 0");
    const int w = samples[0].features.width, h = samples[0].features.height;
    const int d = samples[0].features.channels;
    for (const auto& s : samples)
        if (s.features.width != w || s.features.height != h || s.features.channels != d ||
            s.label.width != w || s.label.height != h)
            throw std::invalid_argument("learn_filter: inconsistent sample shapes");

    double energy = 0.0;
    for (const auto& s : samples)
        for (double v : s.features.values) energy += v * v;
    if (energy == 0.0 && lambda == 0.0) throw std::invalid_argument("singular system");

    const std::size_t unknowns = static_cast<std::size_t>(9) * d;
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    Grid2D fwd(w, h);

    auto matvec = [&](const std::vector<double>& v) {
        std::vector<double> out(unknowns, 0.0);
        for (const auto& s : samples) {
            filter_forward(s.features, v, fwd);
            filter_adjoint_accum(s.features, fwd, inv_n, out);
        }
        const double l2 = lambda * lambda;
        for (std::size_t i = 0; i < unknowns; ++i) out[i] += l2 * v[i];
        return out;
    };

    std::vector<double> b(unknowns, 0.0);
    for (const auto& s : samples) filter_adjoint_accum(s.features, s.label, inv_n, b);

    std::vector<double> x(unknowns, 0.0), r = b, p = b;
    double rs = dot(r, r);
    double prev_obj = objective_at(samples, x, lambda);
    const double b_norm = std::sqrt(dot(b, b));

    for (int it = 0; it < cg_iters && rs > 0.0; ++it) {
        const std::vector<double> ap = matvec(p);
        const double pap = dot(p, ap);
        if (!(pap > 1e-300)) {
            if (std::sqrt(rs) > 1e-12 * (1.0 + b_norm))
                throw std::invalid_argument("singular system");
            break;
        }
        const double alpha = rs / pap;
        for (std::size_t i = 0; i < unknowns; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double obj = objective_at(samples, x, lambda);
        if (obj > prev_obj + 1e-9 * (1.0 + std::abs(prev_obj)))
            throw std::logic_error("learn_filter: objective increased during CG");
        prev_obj = obj;

        const double rs_new = dot(r, r);
        if (std::sqrt(rs_new) <= 1e-13 * (1.0 + b_norm)) break;
        const double beta = rs_new / rs;
        for (std::size_t i = 0; i < unknowns; ++i) p[i] = r[i] + beta * p[i];
        rs = rs_new;
    }

    FilterWeights fw;
    fw.conv = ConvBlockParams::zeros(d, 1, Activation::None, NormKind::None);
    fw.conv.kernel = std::move(x);
    fw.lambda = lambda;
    return fw;
}

double filter_objective(const std::vector<TrainingSample>& samples, const FilterWeights& w) {
    return objective_at(samples, w.conv.kernel, w.lambda);
}

Grid2D apply_filter(const FilterWeights& w, const Grid3D& x) {
    if (x.channels != w.conv.in_channels)
        throw std::invalid_argument("apply_filter: channel mismatch");
    Grid2D s(x.width, x.height);
    conv2d_same_to1(x.values.data(), x.width, x.height, x.channels, w.conv,
                    s.values.data());
    return s;
}

}  // namespace scenetrack
