#pragma once

#include <complex>
#include <vector>

#include "loopsoup/rng.hpp"
#include "loopsoup/walk.hpp"

namespace loopsoup {

using Complex = std::complex<double>;

// Standard Brownian bridge on [0,1], pinned to 0 at both ends, represented by
// exact samples on an increasing grid.  Values between grid points are read by
// linear interpolation; the grid sup is a documented approximation of the
// continuous sup.
struct BridgePath1D {
    std::vector<double> t;
    std::vector<double> v;
};

struct BridgePath2D {
    std::vector<double> t;
    std::vector<Complex> v;
};

// Midpoint-refined bridge on the dyadic grid of 2^depth intervals.
BridgePath1D sample_bridge_1d(int depth, Rng& rng);
BridgePath2D sample_bridge_2d(int depth, Rng& rng);

// Exact bridge law sampled sequentially on an arbitrary grid (0 = t_0 < ... < t_k = 1).
BridgePath1D sample_bridge_on_grid(const std::vector<double>& times, Rng& rng);

// Splice two standard bridges into one with an independent normal fixing the
// value at the interior time s: X_s = sqrt(s(1-s)) n, X_t = sqrt(s) b1_{t/s} + (t/s) X_s
// below s and the mirror form above.
BridgePath1D surgery_compose(const BridgePath1D& b1, const BridgePath1D& b2, double n, double s);

// Y_t = sqrt(n) B_{t/n} + ((n-t)/n) z1 + (t/n) z2 on [0,n].
BridgePath1D bridge_with_endpoints(const BridgePath1D& b, double n, double z1, double z2);
BridgePath2D bridge_with_endpoints(const BridgePath2D& b, double n, Complex z1, Complex z2);

// Closed curve with linear interpolation between samples.
struct ContinuousLoop {
    Complex root;
    double duration = 0.0;
    std::vector<double> times;    // 0 .. duration, strictly increasing
    std::vector<Complex> points;  // first == last == root
    Complex eval(double time) const;
};

// Root the unit-duration bridge at `root` and Brownian-rescale it to duration T.
ContinuousLoop loop_from_bridge(const BridgePath2D& bridge, double duration, Complex root);

// Linear interpolation of a lattice loop: duration 2n, integer sample times.
ContinuousLoop lattice_loop_to_curve(const LatticeLoop& loop);

// q_n = integral of dt/(2 pi t^2) over [n-3/8, n+5/8] = 1/(2 pi (n+5/8)(n-3/8));
// Brownian-side per-cell intensity of the duration-n band.
double brownian_loop_rate(int n);
// sum_{k >= n} q_k = 1/(2 pi (n - 3/8))
double brownian_loop_rate_tail(int n);

// Duration draw with density (n+5/8)(n-3/8)/s^2 on [n-3/8, n+5/8] (inverse CDF).
double sample_loop_duration(int n, Rng& rng);
double loop_duration_cdf(int n, double s);

// Space by 1/N, time by 1/N^2.
ContinuousLoop scale_brownian_loop(const ContinuousLoop& loop, int scale);
// Space by 1/N, time by 1/(2N^2): a 2n-step walk curve gets duration n/N^2.
ContinuousLoop scale_walk_loop(const ContinuousLoop& loop, int scale);

// max over a uniform grid of s in [0,1] of |a(s t_a) - b(s t_b)|;
// grid_size 0 means 4 * max(sample counts).
double sup_distance_rescaled(const ContinuousLoop& a, const ContinuousLoop& b, int grid_size = 0);

}  // namespace loopsoup
