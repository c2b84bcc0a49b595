#pragma once

#include <complex>
#include <vector>

#include "loopsoup/rng.hpp"
#include "loopsoup/soup.hpp"

namespace loopsoup {

// Simply connected test domain: a disk or a simple polygon.  Must contain the
// origin and fit inside the closed unit disk.
class Domain {
  public:
    static Domain disk(Complex center, double radius);
    static Domain polygon(std::vector<Complex> vertices);
    // unit disk minus a thin wedge along the positive real axis; exercises the
    // weaker general-domain boundary exponent
    static Domain slit_disk(int arc_segments = 24, double slit_gap = 0.02);

    bool is_disk() const { return is_disk_; }
    bool inside(Complex p) const;
    double boundary_distance(Complex p) const;  // positive inside
    bool segment_inside(Complex a, Complex b) const;
    double segment_boundary_distance(Complex a, Complex b) const;
    double area() const;
    Complex sample_point(Rng& rng) const;  // uniform over the domain

  private:
    Domain() = default;
    bool is_disk_ = true;
    Complex center_;
    double radius_ = 1.0;
    std::vector<Complex> vertices_;
    double bb_xmin_ = 0, bb_xmax_ = 0, bb_ymin_ = 0, bb_ymax_ = 0, area_ = 0;
};

// Keeps exactly the loops whose every interpolated segment stays in the domain.
SoupRealization restrict_soup(const SoupRealization& soup, const Domain& domain);

struct LayerEstimate {
    double epsilon = 0.0;
    double t0 = 0.0;
    double t_max = 0.0;
    long samples = 0;
    long hits = 0;
    double estimate = 0.0;   // measure of loops in D, duration >= t0, exiting D_eps
    double std_error = 0.0;  // binomial error times the importance mass
    double total_mass = 0.0;
    double bound_shape = 0.0;  // eps t0^{-3/2} (disk) or eps^{1/2} t0^{-5/4} (general)
};

// Importance-sampled boundary-layer measure: roots uniform in D, durations
// from the normalized t^{-2} density on [t0, t_max], Brownian bridge loops at
// dyadic depth `depth`.  Counts loops that stay in D but exit D_eps.
LayerEstimate boundary_layer_measure(const Domain& domain, double epsilon, double t0, double t_max,
                                     long samples, Rng& rng, int depth = 8);

// Probability that planar Brownian motion run for time t from z avoids the ray
// [r, infinity) on the positive real axis, estimated with exact increments on
// `steps` segments and segment-crossing tests.
struct BeurlingEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};
BeurlingEstimate beurling_avoidance(Complex z, double r, double t, long samples, Rng& rng,
                                    int steps = 1024, bool obstacle = true);

// P{one-dimensional BM from eps stays positive on [0,t]}, sampled from the
// exact joint law of the endpoint and the minimum; exact value erf(eps/sqrt(2t)).
struct RuinEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double exact = 0.0;
};
RuinEstimate gambler_ruin_check(double epsilon, double t, long samples, Rng& rng);

}  // namespace loopsoup
