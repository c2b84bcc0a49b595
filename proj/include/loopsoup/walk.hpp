#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

struct GridPoint {
    long long x = 0;
    long long y = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    GridPoint operator+(const GridPoint& o) const { return {x + o.x, y + o.y}; }
    GridPoint operator-(const GridPoint& o) const { return {x - o.x, y - o.y}; }
};

// Rooted nearest-neighbor loop on Z^2: a root plus 2n unit steps summing to zero.
struct LatticeLoop {
    GridPoint root;
    std::vector<GridPoint> steps;
    std::vector<GridPoint> positions() const;  // 2n+1 points, first == last == root
};

// throws std::invalid_argument when the loop is open, odd, or has non-unit steps
void validate_loop(const LatticeLoop& loop);

// One-dimensional simple random walk bridge: S_0 = 0, S_steps = endpoint,
// unit increments.
struct WalkBridge1D {
    std::vector<long long> positions;
    int steps() const { return static_cast<int>(positions.size()) - 1; }
    long long endpoint() const { return positions.back(); }
};

// Two-dimensional walk with unit lattice increments (closed when endpoints match).
struct WalkBridge2D {
    std::vector<GridPoint> positions;
    int steps() const { return static_cast<int>(positions.size()) - 1; }
};

// nu(L^0_n) = [2^{-2n} C(2n,n)]^2: per-site measure of rooted 2n-step loops.
mpq_class loop_count_measure_exact(int n);
double loop_count_measure(int n);

// walk_loop_rate(n) = nu(L^0_n) / (2n): the per-cell Poisson intensity of
// 2n-step walk loops.
mpq_class walk_loop_rate_exact(int n);
double walk_loop_rate(int n);

// (2n)^{-1} 4^{-2n} for a valid loop of length 2n
double rooted_loop_weight(const LatticeLoop& loop);

// Uniform sample over 1D walk bridges with the given step count and endpoint,
// by shuffling the multiset of up/down steps.  Throws on parity/range errors.
WalkBridge1D sample_walk_bridge(int steps, long long endpoint, Rng& rng);

// Uniform sample over closed 2n-step loops rooted at 0, built from two
// independent 1D bridges through the diagonal transform.
WalkBridge2D sample_closed_walk(int n, Rng& rng);

// (x, y) -> ((x+y)/2, (y-x)/2) applied pointwise; inputs must have equal
// length and pointwise-equal parity.
WalkBridge2D combine_walks(const WalkBridge1D& a, const WalkBridge1D& b);

// Exact law of S_m given S_total = endpoint (ratio of binomial coefficients).
struct MidpointLaw {
    int total = 0;
    long long endpoint = 0;
    int m = 0;
    std::vector<long long> support;  // increasing, one parity class
    std::vector<double> pmf;
    std::vector<double> cdf;
    double cdf_at(long long x) const;    // P{S_m <= x}
    double cdf_below(long long x) const; // P{S_m < x}
    long long quantile(double u) const;  // smallest support point with cdf >= u
};
MidpointLaw midpoint_law(int total, long long endpoint, int m);

bool endpoint_admissible(int steps, long long endpoint);

// Exact conditioned pmf value P{S_{2m} = 2j+2l | S_{4m} = 4l} against its
// Gaussian approximation 2 (2 pi m (1-(l/m)^2))^{-1/2} exp{-(2j)^2 / (2m(1-(l/m)^2))}.
struct LocalCltResult {
    double exact = 0.0;
    double approx = 0.0;
    double log_ratio = 0.0;
};
LocalCltResult local_clt_compare(int m, int l, int j);

// sqrt(2 pi) n^{n+1/2} e^{-n} (1 + 1/(12n)) against the exact factorial.
struct StirlingResult {
    double approx = 0.0;
    mpz_class exact;
    double rel_error = 0.0;
};
StirlingResult stirling_approx(int n);

double log_binomial(long long n, long long k);

}  // namespace loopsoup
