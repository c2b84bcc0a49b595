#include "loopsoup/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

BridgePath1D sample_bridge_1d(int depth, Rng& rng) {
    if (depth < 0) throw std::invalid_argument("sample_bridge_1d: depth must be >= 0");
    const std::size_t count = (std::size_t{1} << depth) + 1;
    BridgePath1D b;
    b.t.resize(count);
    b.v.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i)
        b.t[i] = static_cast<double>(i) / static_cast<double>(count - 1);
    // Levy midpoint refinement: conditional midpoint variance is span/4
    for (int level = 0; level < depth; ++level) {
        const std::size_t stride = std::size_t{1} << (depth - level);
        const double sd = std::sqrt(static_cast<double>(stride) / static_cast<double>(count - 1)) / 2.0;
        for (std::size_t i = 0; i + stride <= count - 1; i += stride) {
            const std::size_t mid = i + stride / 2;
            b.v[mid] = 0.5 * (b.v[i] + b.v[i + stride]) + sd * rng.normal();
        }
    }
    return b;
}

BridgePath2D sample_bridge_2d(int depth, Rng& rng) {
    const BridgePath1D re = sample_bridge_1d(depth, rng);
    const BridgePath1D im = sample_bridge_1d(depth, rng);
    BridgePath2D b;
    b.t = re.t;
    b.v.resize(re.v.size());
    for (std::size_t i = 0; i < re.v.size(); ++i) b.v[i] = Complex(re.v[i], im.v[i]);
    return b;
}

BridgePath1D sample_bridge_on_grid(const std::vector<double>& times, Rng& rng) {
    if (times.size() < 2 || times.front() != 0.0 || times.back() != 1.0)
        throw std::invalid_argument("sample_bridge_on_grid: grid must run from 0 to 1");
    BridgePath1D b;
    b.t = times;
    b.v.assign(times.size(), 0.0);
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        const double prev = times[i - 1], cur = times[i];
        if (cur <= prev) throw std::invalid_argument("sample_bridge_on_grid: grid not increasing");
        const double mean = b.v[i - 1] * (1.0 - cur) / (1.0 - prev);
        const double var = (cur - prev) * (1.0 - cur) / (1.0 - prev);
        b.v[i] = mean + std::sqrt(var) * rng.normal();
    }
    return b;
}

BridgePath1D surgery_compose(const BridgePath1D& b1, const BridgePath1D& b2, double n, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("surgery_compose: s must lie in (0,1)");
    const double cross = std::sqrt(s * (1.0 - s)) * n;
    const double sq_s = std::sqrt(s);
    const double sq_r = std::sqrt(1.0 - s);
    BridgePath1D out;
    out.t.reserve(b1.t.size() + b2.t.size() - 1);
    out.v.reserve(out.t.capacity());
    for (std::size_t i = 0; i < b1.t.size(); ++i) {
        out.t.push_back(s * b1.t[i]);
        out.v.push_back(sq_s * b1.v[i] + b1.t[i] * cross);
    }
    for (std::size_t i = 1; i < b2.t.size(); ++i) {
        out.t.push_back(s + (1.0 - s) * b2.t[i]);
        out.v.push_back(sq_r * b2.v[i] + (1.0 - b2.t[i]) * cross);
    }
    return out;
}

BridgePath1D bridge_with_endpoints(const BridgePath1D& b, double n, double z1, double z2) {
    if (n <= 0.0) throw std::invalid_argument("bridge_with_endpoints: n must be positive");
    const double sq = std::sqrt(n);
    BridgePath1D out;
    out.t.resize(b.t.size());
    out.v.resize(b.v.size());
    for (std::size_t i = 0; i < b.t.size(); ++i) {
        out.t[i] = n * b.t[i];
        out.v[i] = sq * b.v[i] + (1.0 - b.t[i]) * z1 + b.t[i] * z2;
    }
    return out;
}

BridgePath2D bridge_with_endpoints(const BridgePath2D& b, double n, Complex z1, Complex z2) {
    if (n <= 0.0) throw std::invalid_argument("bridge_with_endpoints: n must be positive");
    const double sq = std::sqrt(n);
    BridgePath2D out;
    out.t.resize(b.t.size());
    out.v.resize(b.v.size());
    for (std::size_t i = 0; i < b.t.size(); ++i) {
        out.t[i] = n * b.t[i];
        out.v[i] = sq * b.v[i] + (1.0 - b.t[i]) * z1 + b.t[i] * z2;
    }
    return out;
}

Complex ContinuousLoop::eval(double time) const {
    if (time <= times.front()) return points.front();
    if (time >= times.back()) return points.back();
    const auto it = std::upper_bound(times.begin(), times.end(), time);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (time - times[lo]) / (times[hi] - times[lo]);
    return points[lo] * (1.0 - w) + points[hi] * w;
}

ContinuousLoop loop_from_bridge(const BridgePath2D& bridge, double duration, Complex root) {
    if (duration <= 0.0) throw std::invalid_argument("loop_from_bridge: duration must be positive");
    const double sq = std::sqrt(duration);
    ContinuousLoop loop;
    loop.root = root;
    loop.duration = duration;
    loop.times.resize(bridge.t.size());
    loop.points.resize(bridge.v.size());
    for (std::size_t i = 0; i < bridge.t.size(); ++i) {
        loop.times[i] = duration * bridge.t[i];
        loop.points[i] = root + sq * bridge.v[i];
    }
    loop.points.front() = root;
    loop.points.back() = root;
    return loop;
}

ContinuousLoop lattice_loop_to_curve(const LatticeLoop& loop) {
    validate_loop(loop);
    ContinuousLoop curve;
    curve.root = Complex(static_cast<double>(loop.root.x), static_cast<double>(loop.root.y));
    curve.duration = static_cast<double>(loop.steps.size());
    const auto pos = loop.positions();
    curve.times.resize(pos.size());
    curve.points.resize(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        curve.times[i] = static_cast<double>(i);
        curve.points[i] = Complex(static_cast<double>(pos[i].x), static_cast<double>(pos[i].y));
    }
    return curve;
}

double brownian_loop_rate(int n) {
    if (n < 1) throw std::invalid_argument("brownian_loop_rate: n must be >= 1");
    return 1.0 / (kTwoPi * (n + 0.625) * (n - 0.375));
}

double brownian_loop_rate_tail(int n) {
    if (n < 1) throw std::invalid_argument("brownian_loop_rate_tail: n must be >= 1");
    return 1.0 / (kTwoPi * (n - 0.375));
}

double sample_loop_duration(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_loop_duration: n must be >= 1");
    const double a = n - 0.375, b = n + 0.625;
    const double u = rng.uniform_co();
    return a * b / (b - u);
}

double loop_duration_cdf(int n, double s) {
    const double a = n - 0.375, b = n + 0.625;
    if (s <= a) return 0.0;
    if (s >= b) return 1.0;
    return b - a * b / s;
}

ContinuousLoop scale_brownian_loop(const ContinuousLoop& loop, int scale) {
    if (scale < 1) throw std::invalid_argument("scale_brownian_loop: scale must be >= 1");
    const double inv = 1.0 / scale;
    const double inv_t = inv * inv;
    ContinuousLoop out;
    out.root = loop.root * inv;
    out.duration = loop.duration * inv_t;
    out.times.resize(loop.times.size());
    out.points.resize(loop.points.size());
    for (std::size_t i = 0; i < loop.times.size(); ++i) {
        out.times[i] = loop.times[i] * inv_t;
        out.points[i] = loop.points[i] * inv;
    }
    return out;
}

ContinuousLoop scale_walk_loop(const ContinuousLoop& loop, int scale) {
    if (scale < 1) throw std::invalid_argument("scale_walk_loop: scale must be >= 1");
    const double inv = 1.0 / scale;
    const double inv_t = 0.5 * inv * inv;
    ContinuousLoop out;
    out.root = loop.root * inv;
    out.duration = loop.duration * inv_t;
    out.times.resize(loop.times.size());
    out.points.resize(loop.points.size());
    for (std::size_t i = 0; i < loop.times.size(); ++i) {
        out.times[i] = loop.times[i] * inv_t;
        out.points[i] = loop.points[i] * inv;
    }
    return out;
}

double sup_distance_rescaled(const ContinuousLoop& a, const ContinuousLoop& b, int grid_size) {
    if (grid_size <= 0)
        grid_size = 4 * static_cast<int>(std::max(a.points.size(), b.points.size()));
    double best = 0.0;
    for (int i = 0; i <= grid_size; ++i) {
        const double s = static_cast<double>(i) / grid_size;
        best = std::max(best, std::abs(a.eval(s * a.duration) - b.eval(s * b.duration)));
    }
    return best;
}

}  // namespace loopsoup
