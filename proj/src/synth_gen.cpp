#include "scenetrack/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace scenetrack {

void SceneConfig::validate() const {
    if (width < 4 || height < 4 || channels < 2 || frames < 1)
        throw std::invalid_argument("SceneConfig: grid or frame count too small");
    if (distractors < 0) throw std::invalid_argument("SceneConfig: distractors must be >= 0");
    if (!(blob_sigma > 0.0) || !(feature_scale > 0.0) || !(stride > 0.0) ||
        !(box_size > 0.0))
        throw std::invalid_argument("SceneConfig: scales must be > 0");
    if (!(cos_sim_min >= 0.9 && cos_sim_max <= 1.0 && cos_sim_min <= cos_sim_max))
        throw std::invalid_argument("SceneConfig: cosine band must sit inside [0.9, 1]");
    if (!(speed_min > 0.0 && speed_min <= speed_max))
        throw std::invalid_argument("SceneConfig: bad speed range");
    if (!(border_margin >= 0.0 && 2.0 * border_margin < width - 1 &&
          2.0 * border_margin < height - 1))
        throw std::invalid_argument("SceneConfig: margin leaves no room");
}

namespace {

struct Walker {
    double x, y, vx, vy;
};

void bounce(double& pos, double& vel, double lo, double hi) {
    if (pos < lo) {
        pos = lo + (lo - pos);
        vel = -vel;
        if (pos > hi) pos = hi;  // overshoot after reflection on tiny ranges
    } else if (pos > hi) {
        pos = hi - (pos - hi);
        vel = -vel;
        if (pos < lo) pos = lo;
    }
}

std::vector<double> unit_normal_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& e : v) {
            e = n(rng);
            norm2 += e * e;
        }
    } while (norm2 < 1e-12);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& e : v) e *= inv;
    return v;
}

// Unit vector at the given cosine to `u`, in the plane spanned by u and a
// random orthogonal direction.
std::vector<double> rotated_signature(const std::vector<double>& u, double cosine,
                                      std::mt19937_64& rng) {
    const int d = static_cast<int>(u.size());
    std::vector<double> w = unit_normal_vector(d, rng);
    double proj = 0.0;
    for (int i = 0; i < d; ++i) proj += w[i] * u[i];
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
        w[i] -= proj * u[i];
        norm2 += w[i] * w[i];
    }
    if (norm2 < 1e-12) return rotated_signature(u, cosine, rng);
    const double sine = std::sqrt(std::max(0.0, 1.0 - cosine * cosine));
    const double inv = sine / std::sqrt(norm2);
    std::vector<double> v(d);
    for (int i = 0; i < d; ++i) v[i] = cosine * u[i] + inv * w[i];
    return v;
}

}  // namespace

SyntheticSequence generate_sequence(const SceneConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::mt19937_64 rng(seed);
    const int w = cfg.width, h = cfg.height, d = cfg.channels, t_total = cfg.frames;
    const double lo_x = cfg.border_margin, hi_x = (w - 1) - cfg.border_margin;
    const double lo_y = cfg.border_margin, hi_y = (h - 1) - cfg.border_margin;

    std::uniform_real_distribution<double> ux(lo_x, hi_x), uy(lo_y, hi_y);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> speed(cfg.speed_min, cfg.speed_max);
    std::normal_distribution<double> jitter(0.0, cfg.jitter_sigma);

    SyntheticSequence seq;
    seq.seed = seed;

    // Target track: bouncing linear walk with velocity jitter.
    std::vector<double> u_sig = unit_normal_vector(d, rng);
    seq.target.signature.resize(d);
    for (int i = 0; i < d; ++i) seq.target.signature[i] = cfg.feature_scale * u_sig[i];
    {
        Walker m{ux(rng), uy(rng), 0.0, 0.0};
        const double th = angle(rng), sp = speed(rng);
        m.vx = sp * std::cos(th);
        m.vy = sp * std::sin(th);
        seq.target.cx.reserve(t_total);
        seq.target.cy.reserve(t_total);
        for (int t = 0; t < t_total; ++t) {
            seq.target.cx.push_back(m.x);
            seq.target.cy.push_back(m.y);
            m.vx += jitter(rng);
            m.vy += jitter(rng);
            m.x += m.vx;
            m.y += m.vy;
            bounce(m.x, m.vx, lo_x, hi_x);
            bounce(m.y, m.vy, lo_y, hi_y);
        }
    }

    std::uniform_real_distribution<double> cosine(cfg.cos_sim_min, cfg.cos_sim_max);
    for (int k = 0; k < cfg.distractors; ++k) {
        ObjectTrack tr;
        const std::vector<double> v = rotated_signature(u_sig, cosine(rng), rng);
        tr.signature.resize(d);
        for (int i = 0; i < d; ++i)
            tr.signature[i] = cfg.feature_scale * cfg.distractor_scale * v[i];
        tr.cx.assign(t_total, 0.0);
        tr.cy.assign(t_total, 0.0);

        const bool crossing = cfg.motion == MotionModel::Crossing && k == 0 && t_total >= 3;
        if (crossing) {
            // Pin the path to the target's realized position at a
            // mid-sequence frame, then roll the walk out both ways.
            std::uniform_int_distribution<int> when(t_total / 3,
                                                    std::max(t_total / 3, 2 * t_total / 3));
            const int tc = when(rng);
            std::uniform_real_distribution<double> off(-0.35, 0.35);
            const double px = std::clamp(seq.target.cx[tc] + off(rng), lo_x, hi_x);
            const double py = std::clamp(seq.target.cy[tc] + off(rng), lo_y, hi_y);

            double th = 0.0, sp = 0.0, sep0 = -1.0;
            double start_x = 0.0, start_y = 0.0;
            for (int attempt = 0; attempt < 24; ++attempt) {
                th = angle(rng);
                sp = speed(rng);
                Walker back{px, py, -sp * std::cos(th), -sp * std::sin(th)};
                for (int t = tc; t > 0; --t) {
                    back.x += back.vx;
                    back.y += back.vy;
                    bounce(back.x, back.vx, lo_x, hi_x);
                    bounce(back.y, back.vy, lo_y, hi_y);
                }
                const double ddx = back.x - seq.target.cx[0];
                const double ddy = back.y - seq.target.cy[0];
                sep0 = std::sqrt(ddx * ddx + ddy * ddy);
                start_x = back.x;
                start_y = back.y;
                if (sep0 >= cfg.min_start_separation) break;
            }
            (void)start_x;
            (void)start_y;

            Walker m{px, py, -sp * std::cos(th), -sp * std::sin(th)};
            tr.cx[tc] = px;
            tr.cy[tc] = py;
            for (int t = tc - 1; t >= 0; --t) {
                m.x += m.vx;
                m.y += m.vy;
                bounce(m.x, m.vx, lo_x, hi_x);
                bounce(m.y, m.vy, lo_y, hi_y);
                tr.cx[t] = m.x;
                tr.cy[t] = m.y;
            }
            m = Walker{px, py, sp * std::cos(th), sp * std::sin(th)};
            for (int t = tc + 1; t < t_total; ++t) {
                m.x += m.vx;
                m.y += m.vy;
                bounce(m.x, m.vx, lo_x, hi_x);
                bounce(m.y, m.vy, lo_y, hi_y);
                tr.cx[t] = m.x;
                tr.cy[t] = m.y;
            }
        } else {
            Walker m{0.0, 0.0, 0.0, 0.0};
            for (int attempt = 0; attempt < 50; ++attempt) {
                m.x = ux(rng);
                m.y = uy(rng);
                const double ddx = m.x - seq.target.cx[0];
                const double ddy = m.y - seq.target.cy[0];
                if (std::sqrt(ddx * ddx + ddy * ddy) >= cfg.min_start_separation) break;
            }
            const double th = angle(rng), sp = speed(rng);
            m.vx = sp * std::cos(th);
            m.vy = sp * std::sin(th);
            for (int t = 0; t < t_total; ++t) {
                tr.cx[t] = m.x;
                tr.cy[t] = m.y;
                m.x += m.vx;
                m.y += m.vy;
                bounce(m.x, m.vx, lo_x, hi_x);
                bounce(m.y, m.vy, lo_y, hi_y);
            }
        }
        seq.distractors.push_back(std::move(tr));
    }

    // Render blobs plus background noise, then quantize through float so
    // encode/decode of the 32-bit payload is lossless.
    std::normal_distribution<double> noise(0.0, cfg.bg_sigma);
    const double inv_two_sigma2 = 1.0 / (2.0 * cfg.blob_sigma * cfg.blob_sigma);
    seq.frames.reserve(t_total);
    seq.gt_boxes.reserve(t_total);
    for (int t = 0; t < t_total; ++t) {
        Grid3D frame(w, h, d);
        auto splat = [&](const ObjectTrack& tr) {
            const double cx = tr.cx[t], cy = tr.cy[t];
            for (int y = 0; y < h; ++y) {
                const double dy = y - cy;
                for (int x = 0; x < w; ++x) {
                    const double dx = x - cx;
                    const double g = std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
                    double* px = &frame.values[(static_cast<std::size_t>(y) * w + x) * d];
                    for (int c = 0; c < d; ++c) px[c] += g * tr.signature[c];
                }
            }
        };
        splat(seq.target);
        for (const ObjectTrack& tr : seq.distractors) splat(tr);
        if (cfg.bg_sigma > 0.0)
            for (double& v : frame.values) v += noise(rng);
        for (double& v : frame.values) v = static_cast<double>(static_cast<float>(v));
        seq.frames.push_back(std::move(frame));

        TargetBox b;
        b.cx = (seq.target.cx[t] + 0.5) * cfg.stride;
        b.cy = (seq.target.cy[t] + 0.5) * cfg.stride;
        b.width = cfg.box_size;
        b.height = cfg.box_size;
        seq.gt_boxes.push_back(b);
    }
    return seq;
}

}  // namespace scenetrack
