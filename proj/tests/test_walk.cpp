#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "loopsoup/numeric.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/verify.hpp"
#include "loopsoup/walk.hpp"

using namespace loopsoup;

TEST_CASE("loop count measure matches direct binomial evaluation") {
    CHECK(loop_count_measure_exact(1) == mpq_class(1, 4));
    CHECK(loop_count_measure_exact(2) == mpq_class(9, 64));
    CHECK(loop_count_measure(2) == doctest::Approx(0.140625).epsilon(1e-15));
}

TEST_CASE("loop count measure equals brute-force enumeration for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t count = verify::count_closed_walks(n);
        mpz_class four_pow;
        mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 2ul * n);
        CHECK(loop_count_measure_exact(n) == mpq_class(count) / mpq_class(four_pow));
    }
}

TEST_CASE("loop count asymptotics at n = 50") {
    const double asym = 1.0 / (M_PI * 50) - 1.0 / (4 * M_PI * 50 * 50);
    CHECK(std::fabs(loop_count_measure(50) - asym) <=
          verify::fitted::kLoopMeasureAsympC / (50.0 * 50.0 * 50.0));
}

TEST_CASE("log-space measure path agrees with exact rationals beyond the threshold") {
    for (int n : {201, 300, 500}) {
        const double exact = loop_count_measure_exact(n).get_d();
        CHECK(loop_count_measure(n) == doctest::Approx(exact).epsilon(1e-10));
        CHECK(walk_loop_rate(n) == doctest::Approx(exact / (2.0 * n)).epsilon(1e-10));
    }
}

TEST_CASE("keyed streams with nearby keys are distinct") {
    // regression: weak key absorption once collided streams for neighbor cells
    std::set<std::uint64_t> firsts;
    for (std::uint64_t n = 1; n <= 40; ++n)
        for (std::uint64_t x = 0; x < 40; ++x) {
            Rng rng(1, {1, n, x + (1ull << 32), 1ull << 32});
            firsts.insert(rng.next_u64());
        }
    CHECK(firsts.size() == 40 * 40);
}

TEST_CASE("walk loop rate examples") {
    CHECK(walk_loop_rate_exact(1) == mpq_class(1, 8));
    CHECK(walk_loop_rate_exact(2) == mpq_class(9, 256));
    CHECK(walk_loop_rate(3) == doctest::Approx((20.0 / 64) * (20.0 / 64) / 6.0).epsilon(1e-15));
}

TEST_CASE("walk loop rate times 2n 4^{2n} is the integer loop count") {
    for (int n = 1; n <= 30; ++n) {
        mpz_class four_pow;
        mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 2ul * n);
        const mpq_class v = walk_loop_rate_exact(n) * mpq_class(2 * n) * mpq_class(four_pow);
        CHECK(v.get_den() == 1);
    }
}

TEST_CASE("rooted loop weight") {
    LatticeLoop two_step{{0, 0}, {{1, 0}, {-1, 0}}};
    CHECK(rooted_loop_weight(two_step) == doctest::Approx(1.0 / 32).epsilon(1e-15));
    LatticeLoop four_step{{2, 1}, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    CHECK(rooted_loop_weight(four_step) == doctest::Approx(1.0 / 1024).epsilon(1e-15));

    // the four length-2 loops together carry mass qtilde(1) = 1/8
    double total = 0.0;
    for (const GridPoint step : {GridPoint{1, 0}, GridPoint{-1, 0}, GridPoint{0, 1},
                                 GridPoint{0, -1}})
        total += rooted_loop_weight(LatticeLoop{{0, 0}, {step, {-step.x, -step.y}}});
    CHECK(total == doctest::Approx(walk_loop_rate(1)).epsilon(1e-15));
}

TEST_CASE("rooted loop weight rejects invalid loops") {
    CHECK_THROWS_AS(rooted_loop_weight(LatticeLoop{{0, 0}, {{1, 0}, {1, 0}}}),
                    std::invalid_argument);  // open
    CHECK_THROWS_AS(rooted_loop_weight(LatticeLoop{{0, 0}, {{1, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(rooted_loop_weight(LatticeLoop{{0, 0}, {{1, 1}, {-1, -1}}}),
                    std::invalid_argument);  // diagonal step
}

TEST_CASE("1d bridge sampler basics") {
    Rng rng(7, {1});
    SUBCASE("two admissible paths at steps=2, z=0") {
        int up_first = 0;
        const int reps = 20000;
        for (int i = 0; i < reps; ++i) {
            const auto b = sample_walk_bridge(2, 0, rng);
            REQUIRE(b.positions.size() == 3);
            CHECK(b.positions[2] == 0);
            if (b.positions[1] == 1) ++up_first;
        }
        CHECK(std::fabs(up_first / static_cast<double>(reps) - 0.5) < 0.02);
    }
    SUBCASE("unique admissible path is deterministic") {
        const auto b = sample_walk_bridge(4, 4, rng);
        CHECK(b.positions == std::vector<long long>{0, 1, 2, 3, 4});
    }
    SUBCASE("parity and range validation") {
        CHECK_THROWS_AS(sample_walk_bridge(4, 1, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_walk_bridge(4, 6, rng), std::invalid_argument);
    }
}

TEST_CASE("1d bridge midpoint matches the exact conditioned pmf") {
    // chi-square p > 0.001 at 1e5 samples over the standard parameter grid
    const std::pair<int, long long> points[] = {{4, 0}, {8, 0}, {8, 4}, {16, 0}};
    for (const auto& [total, z] : points) {
        Rng rng(11, {2, static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(z)});
        const MidpointLaw law = midpoint_law(total, z, total / 2);
        std::vector<double> observed(law.support.size(), 0.0);
        const long samples = 100000;
        for (long i = 0; i < samples; ++i) {
            const auto b = sample_walk_bridge(total, z, rng);
            const long long mid = b.positions[static_cast<std::size_t>(total / 2)];
            const auto it = std::lower_bound(law.support.begin(), law.support.end(), mid);
            observed[static_cast<std::size_t>(it - law.support.begin())] += 1.0;
        }
        const auto chi = chi2_test(observed, law.pmf, samples);
        CHECK(chi.p_value > 0.001);
    }
}

TEST_CASE("2d transform") {
    SUBCASE("hand evaluation at n=1") {
        const WalkBridge1D a{{0, 1, 0}};
        const WalkBridge1D b{{0, 1, 0}};
        const auto w = combine_walks(a, b);
        CHECK(w.positions == std::vector<GridPoint>{{0, 0}, {1, 0}, {0, 0}});
    }
    SUBCASE("unit increments for random samples") {
        Rng rng(3, {4});
        for (int rep = 0; rep < 1000; ++rep) {
            const int n = 1 + static_cast<int>(rng.below(64));
            const auto w = sample_closed_walk(n, rng);
            REQUIRE(w.positions.size() == static_cast<std::size_t>(2 * n + 1));
            CHECK(w.positions.front() == GridPoint{0, 0});
            CHECK(w.positions.back() == GridPoint{0, 0});
            for (std::size_t i = 1; i < w.positions.size(); ++i) {
                const auto d = w.positions[i] - w.positions[i - 1];
                CHECK(std::llabs(d.x) + std::llabs(d.y) == 1);
            }
        }
    }
    SUBCASE("uniform over the four 2-step loops") {
        Rng rng(5, {6});
        std::map<long long, int> freq;
        const int reps = 100000;
        for (int i = 0; i < reps; ++i) {
            const auto w = sample_closed_walk(1, rng);
            freq[w.positions[1].x * 10 + w.positions[1].y] += 1;
        }
        REQUIRE(freq.size() == 4);
        for (const auto& [key, count] : freq)
            CHECK(std::fabs(count / static_cast<double>(reps) - 0.25) < 0.01);
    }
}

TEST_CASE("2d transform preserves uniformity over the 36 loops of length 4") {
    // chi-square over the enumerated loop classes at 1e6 samples
    Rng rng(9, {8});
    std::map<std::string, int> freq;
    const int reps = 1000000;
    for (int i = 0; i < reps; ++i) {
        const auto w = sample_closed_walk(2, rng);
        std::string key;
        for (std::size_t j = 1; j < w.positions.size(); ++j) {
            const auto d = w.positions[j] - w.positions[j - 1];
            key += static_cast<char>('a' + (d.x + 1) * 3 + (d.y + 1));
        }
        freq[key] += 1;
    }
    REQUIRE(freq.size() == 36);
    std::vector<double> observed;
    for (const auto& [key, count] : freq) observed.push_back(count);
    const std::vector<double> probs(36, 1.0 / 36);
    const auto chi = chi2_test(observed, probs, reps);
    CHECK(chi.p_value > 0.001);
}

TEST_CASE("conditioned midpoint pmf") {
    SUBCASE("exact values at total=4") {
        const MidpointLaw law = midpoint_law(4, 0, 2);
        REQUIRE(law.support == std::vector<long long>{-2, 0, 2});
        CHECK(law.pmf[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
        CHECK(law.pmf[1] == doctest::Approx(2.0 / 3).epsilon(1e-14));
        CHECK(law.pmf[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    }
    SUBCASE("symmetry at total=2") {
        const MidpointLaw law = midpoint_law(2, 0, 1);
        REQUIRE(law.support == std::vector<long long>{-1, 1});
        CHECK(law.pmf[0] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("normalization") {
        const MidpointLaw law = midpoint_law(8, 0, 4);
        double sum = 0.0;
        for (double p : law.pmf) sum += p;
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    SUBCASE("symmetric about (m/total) z") {
        for (const auto& [total, z] : std::vector<std::pair<int, long long>>{{8, 4}, {16, 2},
                                                                             {12, -6}}) {
            const MidpointLaw law = midpoint_law(total, z, total / 2);
            const double center = 0.5 * z;
            for (std::size_t i = 0; i < law.support.size(); ++i) {
                const long long mirrored =
                    static_cast<long long>(std::llround(2 * center)) - law.support[i];
                const auto it = std::lower_bound(law.support.begin(), law.support.end(), mirrored);
                if (it != law.support.end() && *it == mirrored) {
                    const std::size_t j = static_cast<std::size_t>(it - law.support.begin());
                    CHECK(law.pmf[i] == doctest::Approx(law.pmf[j]).epsilon(1e-10));
                }
            }
        }
    }
    SUBCASE("large-n recurrence path agrees with exact rationals") {
        // straddles the exact/log-space threshold
        const MidpointLaw big = midpoint_law(512, 10, 256);
        double sum = 0.0;
        for (double p : big.pmf) sum += p;
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
        const double direct = std::exp(log_binomial(256, (256 + 10) / 2 + 0) +
                                       log_binomial(256, (256 + 0) / 2) -
                                       log_binomial(512, (512 + 10) / 2));
        CHECK(big.pmf[static_cast<std::size_t>(
                  std::lower_bound(big.support.begin(), big.support.end(), 10) -
                  big.support.begin())] == doctest::Approx(direct).epsilon(1e-9));
    }
    SUBCASE("inadmissible input") {
        CHECK_THROWS_AS(midpoint_law(4, 1, 2), std::invalid_argument);
        CHECK_THROWS_AS(midpoint_law(4, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("local clt comparison") {
    SUBCASE("m=1 exact value") {
        const auto r = local_clt_compare(1, 0, 0);
        CHECK(r.exact == doctest::Approx(2.0 / 3).epsilon(1e-14));
    }
    SUBCASE("m=100 gaussian form") {
        const auto r = local_clt_compare(100, 0, 0);
        CHECK(r.approx == doctest::Approx(2.0 / std::sqrt(2 * M_PI * 100)).epsilon(1e-12));
        CHECK(std::fabs(r.log_ratio) <= 0.02);
    }
    SUBCASE("m=100 with drift l=25") {
        const auto r = local_clt_compare(100, 25, 0);
        CHECK(r.approx ==
              doctest::Approx(2.0 / std::sqrt(2 * M_PI * 100 * (1 - 1.0 / 16))).epsilon(1e-12));
    }
    SUBCASE("range validation") {
        CHECK_THROWS_AS(local_clt_compare(100, 51, 0), std::invalid_argument);
        CHECK_THROWS_AS(local_clt_compare(100, 0, 14), std::invalid_argument);
    }
}

TEST_CASE("stirling approximation") {
    const auto r1 = stirling_approx(1);
    CHECK(r1.approx == doctest::Approx(0.99898).epsilon(1e-4));
    CHECK(r1.exact == 1);
    const auto r10 = stirling_approx(10);
    CHECK(r10.exact == 3628800);
    CHECK(std::fabs(r10.rel_error) <= 1e-3);
    const auto r50 = stirling_approx(50);
    CHECK(std::fabs(r50.rel_error) <= 1e-4);
}
