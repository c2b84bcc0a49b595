#include "loopsoup/kmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

void validate_discrete_dist(const DiscreteDist& dist) {
    if (dist.atoms.empty() || dist.atoms.size() != dist.cdf.size())
        throw std::invalid_argument("discrete distribution: empty or mismatched sizes");
    double prev_cdf = 0.0;
    for (std::size_t i = 0; i < dist.atoms.size(); ++i) {
        if (i > 0 && dist.atoms[i] <= dist.atoms[i - 1])
            throw std::invalid_argument("discrete distribution: atoms not increasing");
        if (dist.cdf[i] < prev_cdf || dist.cdf[i] > 1.0 + 1e-12)
            throw std::invalid_argument("discrete distribution: invalid CDF");
        prev_cdf = dist.cdf[i];
    }
    if (std::fabs(dist.cdf.back() - 1.0) > 1e-9)
        throw std::invalid_argument("discrete distribution: CDF does not reach 1");
}

double quantile_couple(double z_draw, const std::function<double(double)>& cdf_f,
                       const DiscreteDist& dist) {
    validate_discrete_dist(dist);
    const double u = cdf_f(z_draw);
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile_couple: CDF out of range");
    const auto it = std::lower_bound(dist.cdf.begin(), dist.cdf.end(), u);
    if (it == dist.cdf.end()) return dist.atoms.back();
    return dist.atoms[static_cast<std::size_t>(it - dist.cdf.begin())];
}

NormalParams midpoint_normal_params(int n, int m, long long z) {
    if (n < 2 || std::abs(2 * m - n) > 1)
        throw std::invalid_argument("midpoint_normal_params: m must be the (near-)midpoint");
    if (!endpoint_admissible(n, z))
        throw std::invalid_argument("midpoint_normal_params: endpoint not admissible");
    NormalParams p;
    const double frac = static_cast<double>(m) / static_cast<double>(n);
    p.mean = frac * static_cast<double>(z);
    p.variance = static_cast<double>(m) * (1.0 - frac);
    return p;
}

namespace {

std::vector<double> leaf_grid(int span, int refine) {
    const int cells = span * refine;
    std::vector<double> t(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / cells;
    return t;
}

int build_node(DyadicCoupling& c, int span, Rng& rng) {
    DyadicCoupling::Node node;
    node.span = span;
    if (span <= 2) {
        node.walk_u = rng.uniform();
        node.piece = sample_bridge_on_grid(leaf_grid(span, c.refine), rng);
        c.nodes.push_back(std::move(node));
        return static_cast<int>(c.nodes.size()) - 1;
    }
    node.split = span / 2;
    node.normal = rng.normal();
    const int self = static_cast<int>(c.nodes.size());
    c.nodes.push_back(std::move(node));
    const int left = build_node(c, span / 2, rng);
    const int right = build_node(c, span - span / 2, rng);
    c.nodes[static_cast<std::size_t>(self)].left = left;
    c.nodes[static_cast<std::size_t>(self)].right = right;
    return self;
}

BridgePath1D realize_bridge_node(const DyadicCoupling& c, int idx) {
    const auto& node = c.nodes[static_cast<std::size_t>(idx)];
    if (node.left < 0) return node.piece;
    const BridgePath1D left = realize_bridge_node(c, node.left);
    const BridgePath1D right = realize_bridge_node(c, node.right);
    const double s = static_cast<double>(node.split) / static_cast<double>(node.span);
    return surgery_compose(left, right, node.normal, s);
}

void realize_walk_node(const DyadicCoupling& c, int idx, long long endpoint,
                       std::vector<long long>& out) {
    // out ends with the subwalk's start value; append the remaining span steps
    const auto& node = c.nodes[static_cast<std::size_t>(idx)];
    const long long base = out.back();
    if (node.left < 0) {
        if (node.span == 1) {
            out.push_back(base + endpoint);
            return;
        }
        // span == 2
        long long mid;
        if (endpoint == 0)
            mid = node.walk_u <= 0.5 ? -1 : 1;
        else
            mid = endpoint / 2;
        out.push_back(base + mid);
        out.push_back(base + endpoint);
        return;
    }
    const MidpointLaw law = midpoint_law(node.span, endpoint, node.split);
    const NormalParams params = midpoint_normal_params(node.span, node.split, endpoint);
    const double sd = std::sqrt(params.variance);
    const double z_draw = params.mean + sd * node.normal;
    DiscreteDist dist;
    dist.atoms.assign(law.support.begin(), law.support.end());
    dist.cdf = law.cdf;
    const double w_val = quantile_couple(
        z_draw, [&](double x) { return normal_cdf((x - params.mean) / sd); }, dist);
    const long long w = static_cast<long long>(std::llround(w_val));
    realize_walk_node(c, node.left, w, out);
    realize_walk_node(c, node.right, endpoint - w, out);
}

}  // namespace

DyadicCoupling build_coupling(int n, Rng& rng, int refine) {
    if (n < 1) throw std::invalid_argument("build_coupling: n must be >= 1");
    if (refine < 1) throw std::invalid_argument("build_coupling: refine must be >= 1");
    DyadicCoupling c;
    c.total = n;
    c.refine = refine;
    c.root = build_node(c, n, rng);
    return c;
}

BridgePath1D realize_bridge(const DyadicCoupling& coupling) {
    return realize_bridge_node(coupling, coupling.root);
}

WalkBridge1D realize_walk(const DyadicCoupling& coupling, long long endpoint) {
    if (!endpoint_admissible(coupling.total, endpoint))
        throw std::invalid_argument("realize_walk: endpoint not admissible");
    WalkBridge1D walk;
    walk.positions.reserve(static_cast<std::size_t>(coupling.total) + 1);
    walk.positions.push_back(0);
    realize_walk_node(coupling, coupling.root, endpoint, walk.positions);
    return walk;
}

double sup_discrepancy(const BridgePath1D& bridge, const WalkBridge1D& walk, long long endpoint) {
    const int n = walk.steps();
    const double nd = static_cast<double>(n);
    const double sq = std::sqrt(nd);
    double best = 0.0;
    for (std::size_t i = 0; i < bridge.t.size(); ++i) {
        const double s = bridge.t[i];
        const double y = sq * bridge.v[i] + s * static_cast<double>(endpoint);
        const double walk_time = nd * s;
        const auto j = static_cast<std::size_t>(std::min(walk_time, nd - 1.0));
        const double frac = walk_time - static_cast<double>(j);
        const double sv = static_cast<double>(walk.positions[j]) * (1.0 - frac) +
                          static_cast<double>(walk.positions[j + 1]) * frac;
        best = std::max(best, std::fabs(y - sv));
    }
    return best;
}

double sup_discrepancy(const DyadicCoupling& coupling, long long endpoint) {
    const BridgePath1D bridge = realize_bridge(coupling);
    const WalkBridge1D walk = realize_walk(coupling, endpoint);
    return sup_discrepancy(bridge, walk, endpoint);
}

Coupled2D couple_2d(int n, Rng& rng, int refine) {
    if (n < 1) throw std::invalid_argument("couple_2d: n must be >= 1");
    const DyadicCoupling ca = build_coupling(2 * n, rng, refine);
    const DyadicCoupling cb = build_coupling(2 * n, rng, refine);
    Coupled2D out;
    out.bridge_a = realize_bridge(ca);
    out.bridge_b = realize_bridge(cb);
    out.walk_a = realize_walk(ca, 0);
    out.walk_b = realize_walk(cb, 0);
    out.walk = combine_walks(out.walk_a, out.walk_b);
    out.bridge.t = out.bridge_a.t;
    out.bridge.v.resize(out.bridge_a.v.size());
    const double inv_sq2 = 0.70710678118654752440;
    for (std::size_t i = 0; i < out.bridge.v.size(); ++i)
        out.bridge.v[i] = Complex((out.bridge_a.v[i] + out.bridge_b.v[i]) * inv_sq2,
                                  (out.bridge_b.v[i] - out.bridge_a.v[i]) * inv_sq2);
    return out;
}

namespace {

double sandwich_requirement(int total, long long z, long long x_lo, long long x_hi) {
    const int m = total / 2;
    const MidpointLaw law = midpoint_law(total, z, m);
    const double mean = static_cast<double>(m) / total * static_cast<double>(z);
    const double zr = static_cast<double>(z) / total;
    const double sd = std::sqrt(total / 4.0 * (1.0 - zr * zr));
    double c1 = 0.0;
    for (long long x = x_lo; x <= x_hi; ++x) {
        const double centered = static_cast<double>(x) - mean;
        const double d = 1.0 + centered * centered / total;
        const double g_lo = law.cdf_at(x - 1);
        const double g_hi = law.cdf_at(x + 1);
        if (g_lo > 0.0 && g_lo < 1.0) {
            const double bound = mean + sd * normal_quantile(g_lo);
            c1 = std::max(c1, (static_cast<double>(x) - bound) / d);
        }
        if (g_hi > 0.0 && g_hi < 1.0) {
            const double bound = mean + sd * normal_quantile(g_hi);
            c1 = std::max(c1, (bound - static_cast<double>(x)) / d);
        }
    }
    return c1;
}

}  // namespace

double cdf_sandwich_fit(int total, long long z, long long x_lo, long long x_hi) {
    return sandwich_requirement(total, z, x_lo, x_hi);
}

bool cdf_sandwich_holds(int total, long long z, double c1, long long x_lo, long long x_hi) {
    return sandwich_requirement(total, z, x_lo, x_hi) <= c1;
}

}  // namespace loopsoup
