#include <doctest.h>

#include <cmath>

#include "loopsoup/brownian.hpp"
#include "loopsoup/numeric.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/verify.hpp"

using namespace loopsoup;

namespace {

double value_at(const BridgePath1D& b, double s) {
    for (std::size_t i = 0; i < b.t.size(); ++i)
        if (std::fabs(b.t[i] - s) < 1e-12) return b.v[i];
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("bridge sampler endpoints and trivial depth") {
    Rng rng(1, {10});
    const auto b = sample_bridge_1d(0, rng);
    REQUIRE(b.t.size() == 2);
    CHECK(b.v[0] == 0.0);
    CHECK(b.v[1] == 0.0);
}

TEST_CASE("bridge sampler covariance at depth 10") {
    Rng rng(2, {11});
    RunningStats var_half, cov_quarters;
    const long samples = 100000;
    for (long i = 0; i < samples; ++i) {
        const auto b = sample_bridge_1d(10, rng);
        const double mid = value_at(b, 0.5);
        var_half.add(mid * mid);
        cov_quarters.add(value_at(b, 0.25) * value_at(b, 0.75));
    }
    CHECK(std::fabs(var_half.mean - 0.25) < 0.01);
    CHECK(std::fabs(cov_quarters.mean - 0.0625) < 0.01);
    CHECK(std::fabs(var_half.mean - 0.25) <= 3 * var_half.stderr_mean());
    CHECK(std::fabs(cov_quarters.mean - 0.0625) <= 3 * cov_quarters.stderr_mean());
}

TEST_CASE("surgery composition") {
    const BridgePath1D zero{{0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}};
    SUBCASE("all-zero inputs give the zero path") {
        const auto x = surgery_compose(zero, zero, 0.0, 0.5);
        for (double v : x.v) CHECK(v == 0.0);
    }
    SUBCASE("tent shape from the cross normal alone") {
        const auto x = surgery_compose(zero, zero, 2.0, 0.5);
        CHECK(value_at(x, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(value_at(x, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(value_at(x, 0.75) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("s outside (0,1) rejected") {
        CHECK_THROWS_AS(surgery_compose(zero, zero, 0.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(surgery_compose(zero, zero, 0.0, 1.0), std::invalid_argument);
    }
    SUBCASE("composed output has bridge covariance at (1/4, 3/4)") {
        Rng rng(3, {12});
        RunningStats cov;
        for (long i = 0; i < 100000; ++i) {
            const auto b1 = sample_bridge_1d(6, rng);
            const auto b2 = sample_bridge_1d(6, rng);
            const auto x = surgery_compose(b1, b2, rng.normal(), 0.5);
            cov.add(value_at(x, 0.25) * value_at(x, 0.75));
        }
        CHECK(std::fabs(cov.mean - 0.0625) < 0.01);
    }
}

TEST_CASE("bridge with endpoints") {
    const BridgePath1D zero{{0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}};
    SUBCASE("zero bridge gives the straight line") {
        const auto y = bridge_with_endpoints(zero, 4.0, 0.0, 2.0);
        CHECK(y.t.back() == doctest::Approx(4.0));
        CHECK(y.v[1] == doctest::Approx(1.0));  // t/2 at t=2
        CHECK(y.v[2] == doctest::Approx(2.0));
    }
    SUBCASE("identity case") {
        const BridgePath1D b{{0.0, 0.25, 1.0}, {0.0, 0.7, 0.0}};
        const auto y = bridge_with_endpoints(b, 1.0, 0.0, 0.0);
        CHECK(y.t == b.t);
        CHECK(y.v[1] == doctest::Approx(0.7));
    }
    SUBCASE("variance scales by n") {
        Rng rng(4, {13});
        RunningStats var;
        const double n = 7.0;
        for (long i = 0; i < 100000; ++i) {
            const auto b = sample_bridge_1d(4, rng);
            const auto y = bridge_with_endpoints(b, n, 0.0, 0.0);
            const double mid = y.v[y.v.size() / 2];
            var.add(mid * mid);
        }
        CHECK(std::fabs(var.mean - n / 4) < 0.01 * n);
    }
}

TEST_CASE("loop from bridge") {
    Rng rng(5, {14});
    const auto b = sample_bridge_2d(4, rng);
    SUBCASE("identity scaling") {
        const auto loop = loop_from_bridge(b, 1.0, {0, 0});
        CHECK(loop.duration == 1.0);
        for (std::size_t i = 0; i < b.v.size(); ++i)
            CHECK(std::abs(loop.points[i] - b.v[i]) < 1e-15);
    }
    SUBCASE("brownian scaling doubles values when duration quadruples") {
        const auto loop = loop_from_bridge(b, 4.0, {0, 0});
        CHECK(loop.duration == 4.0);
        for (std::size_t i = 1; i + 1 < b.v.size(); ++i) {
            CHECK(std::abs(loop.points[i] - 2.0 * b.v[i]) < 1e-12);
            CHECK(loop.times[i] == doctest::Approx(4.0 * b.t[i]));
        }
    }
    SUBCASE("root pinning") {
        const Complex w{1.5, -2.0};
        const auto loop = loop_from_bridge(b, 2.5, w);
        CHECK(loop.points.front() == w);
        CHECK(loop.points.back() == w);
        CHECK(loop.eval(0.0) == w);
        CHECK(loop.eval(loop.duration) == w);
    }
}

TEST_CASE("brownian loop rate and telescoping tail") {
    CHECK(brownian_loop_rate(1) == doctest::Approx(0.156706).epsilon(1e-5));
    // sum q_n telescopes to 1/(2 pi (1 - 3/8)) = 4/(5 pi)
    double sum = 0.0;
    for (int n = 1; n <= 2000000; ++n) sum += brownian_loop_rate(n);
    CHECK(sum == doctest::Approx(4.0 / (5.0 * M_PI)).epsilon(1e-6));
    CHECK(brownian_loop_rate_tail(1) == doctest::Approx(4.0 / (5.0 * M_PI)).epsilon(1e-15));
    // tail identity: q_n = tail(n) - tail(n+1)
    for (int n : {1, 2, 7, 40})
        CHECK(brownian_loop_rate(n) ==
              doctest::Approx(brownian_loop_rate_tail(n) - brownian_loop_rate_tail(n + 1))
                  .epsilon(1e-12));
}

TEST_CASE("rate gap |q_n - qtilde_n| n^4 bounded") {
    for (int n = 5; n <= 50; ++n) {
        const double gap = std::fabs(brownian_loop_rate(n) - walk_loop_rate(n));
        CHECK(gap * std::pow(n, 4) <= verify::fitted::kRateGapC);
    }
}

TEST_CASE("duration sampler") {
    SUBCASE("inverse CDF endpoints and midpoint") {
        // u=0 and u->1 map to the interval ends
        CHECK(loop_duration_cdf(1, 0.625) == 0.0);
        CHECK(loop_duration_cdf(1, 1.625) == 1.0);
        const double a = 1 - 0.375, b = 1 + 0.625;
        const double s_half = a * b / (b - 0.5);
        CHECK(s_half == doctest::Approx(0.902778).epsilon(1e-5));
        CHECK(loop_duration_cdf(1, s_half) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("KS test against the closed-form CDF") {
        for (int n : {1, 5, 20}) {
            Rng rng(6, {15, static_cast<std::uint64_t>(n)});
            std::vector<double> draws(100000);
            for (auto& d : draws) {
                d = sample_loop_duration(n, rng);
                CHECK(d >= n - 0.375);
                CHECK(d <= n + 0.625);
            }
            std::sort(draws.begin(), draws.end());
            std::vector<double> cdf(draws.size());
            for (std::size_t i = 0; i < draws.size(); ++i)
                cdf[i] = loop_duration_cdf(n, draws[i]);
            CHECK(ks_sf(ks_statistic(draws, cdf), draws.size()) > 0.001);
        }
    }
}

TEST_CASE("scaling maps") {
    Rng rng(7, {16});
    const auto bridge = sample_bridge_2d(4, rng);
    const auto loop = loop_from_bridge(bridge, 4.0, {1.0, 0.5});
    SUBCASE("identity at N=1") {
        const auto scaled = scale_brownian_loop(loop, 1);
        CHECK(scaled.duration == loop.duration);
        CHECK(scaled.points[3] == loop.points[3]);
    }
    SUBCASE("space 1/N, time 1/N^2") {
        const auto scaled = scale_brownian_loop(loop, 2);
        CHECK(scaled.duration == doctest::Approx(1.0));
        CHECK(std::abs(scaled.points[2] - loop.points[2] * 0.5) < 1e-15);
    }
    SUBCASE("scaling semigroup") {
        const auto a = scale_brownian_loop(scale_brownian_loop(loop, 2), 3);
        const auto b = scale_brownian_loop(loop, 6);
        CHECK(a.duration == doctest::Approx(b.duration).epsilon(1e-15));
        for (std::size_t i = 0; i < a.points.size(); ++i)
            CHECK(std::abs(a.points[i] - b.points[i]) < 1e-15);
    }
    SUBCASE("walk scaling durations") {
        LatticeLoop l1{{0, 0}, {{1, 0}, {-1, 0}}};
        CHECK(scale_walk_loop(lattice_loop_to_curve(l1), 1).duration == doctest::Approx(1.0));
        // 32 steps at N=4: duration 16/16 = 1
        LatticeLoop l16{{0, 0}, {}};
        for (int i = 0; i < 16; ++i) l16.steps.push_back({1, 0});
        for (int i = 0; i < 16; ++i) l16.steps.push_back({-1, 0});
        CHECK(scale_walk_loop(lattice_loop_to_curve(l16), 4).duration == doctest::Approx(1.0));
        // 8 steps at N=2: duration 1, lattice spacing 1/2
        LatticeLoop l4{{0, 0}, {}};
        for (int i = 0; i < 4; ++i) l4.steps.push_back({0, 1});
        for (int i = 0; i < 4; ++i) l4.steps.push_back({0, -1});
        const auto scaled = scale_walk_loop(lattice_loop_to_curve(l4), 2);
        CHECK(scaled.duration == doctest::Approx(1.0));
        CHECK(std::abs(scaled.points[1] - scaled.points[0]) == doctest::Approx(0.5));
    }
}

TEST_CASE("scaled duration band mass is invariant") {
    // integral of dt/(2 pi t^2) over [a, b]/N^2 equals N^2 q_n band mass
    for (int n : {1, 3, 10})
        for (int scale : {2, 5}) {
            const double a = (n - 0.375) / (scale * scale), b = (n + 0.625) / (scale * scale);
            const double integral = (1.0 / a - 1.0 / b) / (2 * M_PI);
            CHECK(integral ==
                  doctest::Approx(brownian_loop_rate(n) * scale * scale).epsilon(1e-10));
        }
}

TEST_CASE("sup distance rescaled") {
    Rng rng(8, {17});
    const auto bridge = sample_bridge_2d(5, rng);
    const auto loop = loop_from_bridge(bridge, 2.0, {0, 0});
    SUBCASE("identical loops") { CHECK(sup_distance_rescaled(loop, loop) == 0.0); }
    SUBCASE("translation offset") {
        auto shifted = loop;
        for (auto& p : shifted.points) p += Complex(0.3, -0.4);
        shifted.root += Complex(0.3, -0.4);
        CHECK(sup_distance_rescaled(loop, shifted) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("time rescaling removes duration differences") {
        auto slow = loop;
        slow.duration *= 2.0;
        for (auto& t : slow.times) t *= 2.0;
        CHECK(sup_distance_rescaled(loop, slow) <= 1e-12);
    }
}

TEST_CASE("bridge exponential moment") {
    Rng rng(9, {18});
    RunningStats m_half, m_one, m_two;
    for (long i = 0; i < 100000; ++i) {
        const auto b = sample_bridge_1d(8, rng);
        double sup = 0.0;
        for (double v : b.v) sup = std::max(sup, std::fabs(v));
        m_half.add(std::exp(0.5 * sup));
        m_one.add(std::exp(sup));
        m_two.add(std::exp(2.0 * sup));
    }
    const double base = verify::fitted::kBridgeMomentBase;
    const double rate = verify::fitted::kBridgeMomentRate;
    CHECK(m_half.mean <= base * std::exp(rate * 0.25));
    CHECK(m_one.mean <= base * std::exp(rate));
    CHECK(m_two.mean <= base * std::exp(rate * 4.0));
}
