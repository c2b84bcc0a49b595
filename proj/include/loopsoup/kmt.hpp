#pragma once

#include <functional>
#include <vector>

#include "loopsoup/brownian.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/walk.hpp"

namespace loopsoup {

// Discrete distribution for quantile coupling: increasing atoms with their
// cumulative masses.
struct DiscreteDist {
    std::vector<double> atoms;
    std::vector<double> cdf;
};

// validates monotone atoms and a proper CDF; throws std::invalid_argument
void validate_discrete_dist(const DiscreteDist& dist);

// W = a_j on { F(r_{j-1}) = G(a_j -) < F(z_draw) <= G(a_j) = F(r_j) }.
// When z_draw ~ F the output has law exactly G.
double quantile_couple(double z_draw, const std::function<double(double)>& cdf_f,
                       const DiscreteDist& dist);

// Mean (m/n) z and variance m (1 - m/n) of the normal matched against the
// conditioned midpoint S_m given S_n = z.
struct NormalParams {
    double mean = 0.0;
    double variance = 0.0;
};
NormalParams midpoint_normal_params(int n, int m, long long z);

// Recursive dyadic coupling of total steps n: a tree whose internal nodes hold
// one standard normal each (the midpoint randomness shared by the bridge and
// the whole walk family) and whose size <= 2 leaves hold base randomness (a
// uniform for the walk choice and an independently sampled bridge piece).
// A built coupling is immutable; realize_walk may be called for any admissible
// endpoint and always sees the same underlying bridge.
struct DyadicCoupling {
    struct Node {
        int span = 0;      // steps covered by this subtree
        int split = 0;     // left child size, floor(span/2)
        double normal = 0.0;
        int left = -1;
        int right = -1;
        double walk_u = 0.0;    // leaf only
        BridgePath1D piece;     // leaf only
    };
    int total = 0;
    int refine = 1;
    int root = -1;
    std::vector<Node> nodes;
};

// refine multiplies the leaf grid resolution; refine = 1 puts a bridge sample
// at every walk integer time and nothing more.
DyadicCoupling build_coupling(int n, Rng& rng, int refine = 1);

// Assembles the bridge bottom-up through surgery_compose at s = split/span.
// The output is a standard Brownian bridge in law and does not depend on any
// endpoint query.
BridgePath1D realize_bridge(const DyadicCoupling& coupling);

// Realizes S^{(n,z)} for endpoint z from the stored randomness: each internal
// node quantile-couples its normal against the exact conditioned midpoint law,
// then recurses into the halves.  The marginal is exactly the conditioned walk.
WalkBridge1D realize_walk(const DyadicCoupling& coupling, long long endpoint);

// sup over the bridge grid of |Y_t - S_t| with Y_t = sqrt(n) B_{t/n} + (t/n) z.
double sup_discrepancy(const BridgePath1D& bridge, const WalkBridge1D& walk, long long endpoint);
double sup_discrepancy(const DyadicCoupling& coupling, long long endpoint);

// Product coupling: two independent 1D couplings of 2n steps with endpoint 0;
// the walk is the diagonal transform of the pair and the bridge is
// (B1 + i B2)(1 - i)/sqrt(2), so each output coordinate is a standard bridge.
struct Coupled2D {
    BridgePath2D bridge;
    WalkBridge2D walk;
    BridgePath1D bridge_a, bridge_b;
    WalkBridge1D walk_a, walk_b;
};
Coupled2D couple_2d(int n, Rng& rng, int refine = 1);

// Smallest c1 with F(x - c1 [1 + d(x)^2/n]) <= G(x-1) <= G(x+1) <= F(x + c1 [1 + d(x)^2/n])
// for all integers x in [x_lo, x_hi], d(x) = x - mean; F is the normal CDF with
// mean (m/n) z and variance (n/4)(1 - (z/n)^2), G the conditioned midpoint CDF.
double cdf_sandwich_fit(int total, long long z, long long x_lo, long long x_hi);
bool cdf_sandwich_holds(int total, long long z, double c1, long long x_lo, long long x_hi);

}  // namespace loopsoup
