#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "loopsoup/brownian.hpp"
#include "loopsoup/kmt.hpp"
#include "loopsoup/walk.hpp"

namespace loopsoup {

struct Window {
    long long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool contains(const GridPoint& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    long long cell_count() const { return (xmax - xmin + 1) * (ymax - ymin + 1); }
    friend bool operator==(const Window&, const Window&) = default;
};

// Shared unit-rate Poisson arrivals per (n, z) cell, generated lazily from a
// stream keyed by (seed, n, z).  The Brownian-side count N(n,z;lambda) reads
// arrivals up to q_n lambda and the walk-side count up to qtilde_n lambda, so
// both soups are driven by the same randomness and differ only when an arrival
// lands between the two horizons.
class PoissonField {
  public:
    PoissonField(Window window, int n_max, double lambda_max, std::uint64_t seed);

    std::vector<double> arrivals(int n, GridPoint z) const;

    struct CellCounts {
        int brownian = 0;
        int walk = 0;
    };
    CellCounts counts(int n, GridPoint z, double lambda) const;

    int count_brownian(int n, GridPoint z, double lambda) const;
    int count_walk(int n, GridPoint z, double lambda) const;

    const Window& window() const { return window_; }
    int n_max() const { return n_max_; }
    double lambda_max() const { return lambda_max_; }
    std::uint64_t seed() const { return seed_; }
    double rate_brownian(int n) const { return rate_brownian_[static_cast<std::size_t>(n)]; }
    double rate_walk(int n) const { return rate_walk_[static_cast<std::size_t>(n)]; }

  private:
    Window window_;
    int n_max_;
    double lambda_max_;
    std::uint64_t seed_;
    std::vector<double> rate_brownian_, rate_walk_;  // q_n, qtilde_n, index 1..n_max
};

enum class SoupKind { walk, brownian };

struct SoupLoop {
    int n = 0;  // duration index; 0 for the uncoupled small-loop layer
    GridPoint z;
    int m = 0;
    bool coupled = true;
    ContinuousLoop loop;
};

struct SoupRealization {
    SoupKind kind = SoupKind::walk;
    double lambda = 0.0;
    int scale = 1;
    Window window;
    int n_max = 0;
    double t_min = 0.0;  // 0 when the small-loop layer is off
    std::uint64_t seed = 0;
    std::vector<SoupLoop> loops;
};

// The two coupled trees behind loop index (n, z, m); both soups derive their
// loop for that index from this pair.
std::pair<DyadicCoupling, DyadicCoupling> coupled_pair(std::uint64_t seed, int n, GridPoint z,
                                                       int m, int refine = 1);

SoupRealization rw_soup(const PoissonField& field, double lambda, int scale);

// include_small attaches an independent, uncoupled Poisson layer of loops with
// duration in [t_min, 5/8).
SoupRealization brownian_soup(const PoissonField& field, double lambda, int scale,
                              bool include_small = false, double t_min = 0.1);

// Duration bucketing: the unique k/N^2 with t in [k/N^2 - 3/(8N^2), k/N^2 + 5/(8N^2)).
// Throws when t < (5/8) N^{-2}.
double snap_duration(double t, int scale);

// Nearest point of (1/N) Z^2; half-integer ties round toward zero.
Complex snap_root(Complex z, int scale);

// area * (1/2pi) (1/t_min - 1/t_max)
double small_loop_mass(double t_min, double t_max, double area);

struct LoopIndex {
    int n = 0;
    GridPoint z;
    int m = 0;
};

struct PairRecord {
    LoopIndex index;
    double duration_gap = 0.0;
    double sup_distance = 0.0;
};

struct CouplingReport {
    double lambda = 0.0;
    int scale = 1;
    double r = 1.0;
    double theta = 1.0;
    std::uint64_t seed = 0;
    Window window;
    int n_max = 0;
    int n_min = 0;                 // smallest duration index passing the theta filter
    double duration_bound = 0.0;   // (5/8) N^{-2}
    bool bijection = true;
    std::vector<PairRecord> pairs;
    std::vector<LoopIndex> walk_only, brownian_only;
    double max_duration_gap = 0.0;
    double max_sup_distance = 0.0;
    double neglected_rate_per_cell = 0.0;  // sum_{n > n_max} q_n
    bool window_covers_radius = true;
};

// Builds both scaled soups over the shared field (restricted to the duration
// range the selection can see), selects the loops with bucketed duration above
// N^{theta-2} and snapped root inside radius r on each side, matches the two
// sets by index and verifies the pairwise bounds.
CouplingReport build_coupling_report(const PoissonField& field, double lambda, int scale, double r,
                                     double theta);

}  // namespace loopsoup
