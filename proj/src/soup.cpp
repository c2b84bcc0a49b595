#include "loopsoup/soup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// stream tags; every keyed purpose gets its own lane
enum StreamTag : std::uint64_t {
    kTagField = 1,
    kTagPair = 2,
    kTagDuration = 3,
    kTagRootOffset = 4,
    kTagSmall = 5,
};

std::uint64_t zkey(long long v) { return static_cast<std::uint64_t>(v + (1ll << 32)); }

int knuth_poisson(double mean, Rng& rng) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

}  // namespace

PoissonField::PoissonField(Window window, int n_max, double lambda_max, std::uint64_t seed)
    : window_(window), n_max_(n_max), lambda_max_(lambda_max), seed_(seed) {
    if (window.xmin > window.xmax || window.ymin > window.ymax)
        throw std::invalid_argument("PoissonField: empty window");
    if (n_max < 1) throw std::invalid_argument("PoissonField: n_max must be >= 1");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("PoissonField: lambda_max must be positive");
    rate_brownian_.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
    rate_walk_.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        rate_brownian_[static_cast<std::size_t>(n)] = brownian_loop_rate(n);
        rate_walk_[static_cast<std::size_t>(n)] = walk_loop_rate(n);
    }
}

std::vector<double> PoissonField::arrivals(int n, GridPoint z) const {
    if (n < 1 || n > n_max_) throw std::invalid_argument("PoissonField: n out of range");
    if (!window_.contains(z)) throw std::invalid_argument("PoissonField: z outside window");
    const double horizon =
        lambda_max_ * std::max(rate_brownian_[static_cast<std::size_t>(n)],
                               rate_walk_[static_cast<std::size_t>(n)]);
    Rng rng(seed_, {kTagField, static_cast<std::uint64_t>(n), zkey(z.x), zkey(z.y)});
    std::vector<double> times;
    double t = rng.exponential();
    while (t <= horizon) {
        times.push_back(t);
        t += rng.exponential();
    }
    return times;
}

PoissonField::CellCounts PoissonField::counts(int n, GridPoint z, double lambda) const {
    if (lambda < 0.0 || lambda > lambda_max_)
        throw std::invalid_argument("PoissonField: lambda beyond lambda_max");
    const auto times = arrivals(n, z);
    CellCounts c;
    const double hb = lambda * rate_brownian_[static_cast<std::size_t>(n)];
    const double hw = lambda * rate_walk_[static_cast<std::size_t>(n)];
    for (double t : times) {
        if (t <= hb) ++c.brownian;
        if (t <= hw) ++c.walk;
    }
    return c;
}

int PoissonField::count_brownian(int n, GridPoint z, double lambda) const {
    return counts(n, z, lambda).brownian;
}

int PoissonField::count_walk(int n, GridPoint z, double lambda) const {
    return counts(n, z, lambda).walk;
}

std::pair<DyadicCoupling, DyadicCoupling> coupled_pair(std::uint64_t seed, int n, GridPoint z,
                                                       int m, int refine) {
    Rng rng(seed, {kTagPair, static_cast<std::uint64_t>(n), zkey(z.x), zkey(z.y),
                   static_cast<std::uint64_t>(m)});
    DyadicCoupling a = build_coupling(2 * n, rng, refine);
    DyadicCoupling b = build_coupling(2 * n, rng, refine);
    return {std::move(a), std::move(b)};
}

namespace {

ContinuousLoop walk_loop_for_index(std::uint64_t seed, int n, GridPoint z, int m, int scale) {
    const auto trees = coupled_pair(seed, n, z, m);
    const WalkBridge2D walk = combine_walks(realize_walk(trees.first, 0),
                                            realize_walk(trees.second, 0));
    LatticeLoop loop;
    loop.root = z;
    loop.steps.reserve(walk.positions.size() - 1);
    for (std::size_t i = 1; i < walk.positions.size(); ++i)
        loop.steps.push_back(walk.positions[i] - walk.positions[i - 1]);
    return scale_walk_loop(lattice_loop_to_curve(loop), scale);
}

BridgePath2D bridge_for_index(std::uint64_t seed, int n, GridPoint z, int m) {
    const auto trees = coupled_pair(seed, n, z, m);
    const BridgePath1D a = realize_bridge(trees.first);
    const BridgePath1D b = realize_bridge(trees.second);
    BridgePath2D out;
    out.t = a.t;
    out.v.resize(a.v.size());
    const double inv_sq2 = 0.70710678118654752440;
    for (std::size_t i = 0; i < a.v.size(); ++i)
        out.v[i] = Complex((a.v[i] + b.v[i]) * inv_sq2, (b.v[i] - a.v[i]) * inv_sq2);
    return out;
}

ContinuousLoop brownian_loop_for_index(std::uint64_t seed, int n, GridPoint z, int m, int scale,
                                       double* duration_out) {
    const BridgePath2D bridge = bridge_for_index(seed, n, z, m);
    Rng trng(seed, {kTagDuration, static_cast<std::uint64_t>(n), zkey(z.x), zkey(z.y),
                    static_cast<std::uint64_t>(m)});
    const double duration = sample_loop_duration(n, trng);
    Rng yrng(seed, {kTagRootOffset, static_cast<std::uint64_t>(n), zkey(z.x), zkey(z.y),
                    static_cast<std::uint64_t>(m)});
    const Complex offset(yrng.uniform() - 0.5, yrng.uniform() - 0.5);
    const Complex root(static_cast<double>(z.x) + offset.real(),
                       static_cast<double>(z.y) + offset.imag());
    if (duration_out) *duration_out = duration;
    return scale_brownian_loop(loop_from_bridge(bridge, duration, root), scale);
}

}  // namespace

SoupRealization rw_soup(const PoissonField& field, double lambda, int scale) {
    if (scale < 1) throw std::invalid_argument("rw_soup: scale must be >= 1");
    SoupRealization soup;
    soup.kind = SoupKind::walk;
    soup.lambda = lambda;
    soup.scale = scale;
    soup.window = field.window();
    soup.n_max = field.n_max();
    soup.seed = field.seed();
    const Window& w = field.window();
    for (long long y = w.ymin; y <= w.ymax; ++y)
        for (long long x = w.xmin; x <= w.xmax; ++x)
            for (int n = 1; n <= field.n_max(); ++n) {
                const GridPoint z{x, y};
                const int count = field.count_walk(n, z, lambda);
                for (int m = 1; m <= count; ++m)
                    soup.loops.push_back(
                        {n, z, m, true, walk_loop_for_index(field.seed(), n, z, m, scale)});
            }
    return soup;
}

SoupRealization brownian_soup(const PoissonField& field, double lambda, int scale,
                              bool include_small, double t_min) {
    if (scale < 1) throw std::invalid_argument("brownian_soup: scale must be >= 1");
    if (include_small && !(t_min > 0.0 && t_min < 0.625))
        throw std::invalid_argument("brownian_soup: t_min must lie in (0, 5/8)");
    SoupRealization soup;
    soup.kind = SoupKind::brownian;
    soup.lambda = lambda;
    soup.scale = scale;
    soup.window = field.window();
    soup.n_max = field.n_max();
    soup.t_min = include_small ? t_min : 0.0;
    soup.seed = field.seed();
    const Window& w = field.window();
    for (long long y = w.ymin; y <= w.ymax; ++y)
        for (long long x = w.xmin; x <= w.xmax; ++x) {
            const GridPoint z{x, y};
            for (int n = 1; n <= field.n_max(); ++n) {
                const int count = field.count_brownian(n, z, lambda);
                for (int m = 1; m <= count; ++m)
                    soup.loops.push_back(
                        {n, z, m, true,
                         brownian_loop_for_index(field.seed(), n, z, m, scale, nullptr)});
            }
            if (include_small) {
                Rng rng(field.seed(), {kTagSmall, zkey(z.x), zkey(z.y)});
                const double mass = small_loop_mass(t_min, 0.625, 1.0);
                const int count = knuth_poisson(lambda * mass, rng);
                for (int m = 1; m <= count; ++m) {
                    const double u = rng.uniform();
                    const double duration = 1.0 / (1.0 / t_min - u * (1.0 / t_min - 1.6));
                    const Complex root(static_cast<double>(z.x) + rng.uniform() - 0.5,
                                       static_cast<double>(z.y) + rng.uniform() - 0.5);
                    const BridgePath2D bridge = sample_bridge_2d(8, rng);
                    soup.loops.push_back(
                        {0, z, m, false,
                         scale_brownian_loop(loop_from_bridge(bridge, duration, root), scale)});
                }
            }
        }
    return soup;
}

double snap_duration(double t, int scale) {
    const double n2 = static_cast<double>(scale) * scale;
    if (t < 0.625 / n2)
        throw std::invalid_argument("snap_duration: t below (5/8) N^{-2}");
    const double k = std::floor(t * n2 + 0.375);
    return k / n2;
}

Complex snap_root(Complex z, int scale) {
    const auto round_half_to_zero = [](double x) {
        const double r = std::round(x);  // half away from zero
        if (std::fabs(r - x) == 0.5) return std::trunc(x);
        return r;
    };
    const double nx = round_half_to_zero(z.real() * scale);
    const double ny = round_half_to_zero(z.imag() * scale);
    return {nx / scale, ny / scale};
}

double small_loop_mass(double t_min, double t_max, double area) {
    if (!(t_min > 0.0) || t_max < t_min)
        throw std::invalid_argument("small_loop_mass: need 0 < t_min <= t_max");
    return area * (1.0 / t_min - 1.0 / t_max) / kTwoPi;
}

CouplingReport build_coupling_report(const PoissonField& field, double lambda, int scale,
                                     double r, double theta) {
    if (!(theta > 2.0 / 3.0 && theta < 2.0))
        throw std::invalid_argument("build_coupling_report: theta must lie in (2/3, 2)");
    if (r < 1.0) throw std::invalid_argument("build_coupling_report: r must be >= 1");
    if (scale < 1) throw std::invalid_argument("build_coupling_report: scale must be >= 1");

    CouplingReport rep;
    rep.lambda = lambda;
    rep.scale = scale;
    rep.r = r;
    rep.theta = theta;
    rep.seed = field.seed();
    rep.window = field.window();
    rep.n_max = field.n_max();
    const double n2 = static_cast<double>(scale) * scale;
    rep.duration_bound = 0.625 / n2;
    rep.neglected_rate_per_cell = brownian_loop_rate_tail(field.n_max() + 1);

    const double threshold = std::pow(static_cast<double>(scale), theta - 2.0);
    int n_min = static_cast<int>(std::floor(threshold * n2)) + 1;
    while (static_cast<double>(n_min) / n2 <= threshold) ++n_min;
    while (n_min > 1 && static_cast<double>(n_min - 1) / n2 > threshold) --n_min;
    rep.n_min = n_min;

    const double radius = r * scale;
    const Window& w = field.window();
    rep.window_covers_radius =
        w.xmin <= -std::ceil(radius - 1) && w.xmax >= std::ceil(radius - 1) &&
        w.ymin <= -std::ceil(radius - 1) && w.ymax >= std::ceil(radius - 1);

    for (long long y = w.ymin; y <= w.ymax; ++y)
        for (long long x = w.xmin; x <= w.xmax; ++x) {
            if (static_cast<double>(x) * x + static_cast<double>(y) * y >= radius * radius)
                continue;
            const GridPoint z{x, y};
            for (int n = n_min; n <= field.n_max(); ++n) {
                const auto counts = field.counts(n, z, lambda);
                const int top = std::max(counts.walk, counts.brownian);
                for (int m = 1; m <= top; ++m) {
                    bool sel_walk = false, sel_brownian = false;
                    ContinuousLoop walk_loop, brownian_loop;
                    if (m <= counts.walk) {
                        walk_loop = walk_loop_for_index(field.seed(), n, z, m, scale);
                        sel_walk = walk_loop.duration > threshold &&
                                   std::abs(walk_loop.points.front()) < r;
                    }
                    if (m <= counts.brownian) {
                        brownian_loop =
                            brownian_loop_for_index(field.seed(), n, z, m, scale, nullptr);
                        sel_brownian =
                            brownian_loop.duration >= rep.duration_bound &&
                            snap_duration(brownian_loop.duration, scale) > threshold &&
                            std::abs(snap_root(brownian_loop.points.front(), scale)) < r;
                    }
                    if (sel_walk && sel_brownian) {
                        PairRecord pair;
                        pair.index = {n, z, m};
                        pair.duration_gap = std::fabs(brownian_loop.duration - walk_loop.duration);
                        pair.sup_distance = sup_distance_rescaled(brownian_loop, walk_loop);
                        rep.max_duration_gap = std::max(rep.max_duration_gap, pair.duration_gap);
                        rep.max_sup_distance = std::max(rep.max_sup_distance, pair.sup_distance);
                        rep.pairs.push_back(pair);
                    } else if (sel_walk) {
                        rep.walk_only.push_back({n, z, m});
                        rep.bijection = false;
                    } else if (sel_brownian) {
                        rep.brownian_only.push_back({n, z, m});
                        rep.bijection = false;
                    }
                }
            }
        }
    return rep;
}

}  // namespace loopsoup
