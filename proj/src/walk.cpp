#include "loopsoup/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace loopsoup {

namespace {

// n below which exact rational arithmetic is used for pmf construction
constexpr int kExactLimit = 200;

double log_mpz(const mpz_class& v) {
    signed long exp2;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * 0.69314718055994530942;
}

mpz_class binom_mpz(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

std::vector<GridPoint> LatticeLoop::positions() const {
    std::vector<GridPoint> pos;
    pos.reserve(steps.size() + 1);
    pos.push_back(root);
    for (const auto& s : steps) pos.push_back(pos.back() + s);
    return pos;
}

void validate_loop(const LatticeLoop& loop) {
    if (loop.steps.size() < 2 || loop.steps.size() % 2 != 0)
        throw std::invalid_argument("lattice loop must have even length >= 2");
    GridPoint sum;
    for (const auto& s : loop.steps) {
        if (std::llabs(s.x) + std::llabs(s.y) != 1)
            throw std::invalid_argument("lattice loop step is not a unit move");
        sum = sum + s;
    }
    if (!(sum == GridPoint{}))
        throw std::invalid_argument("lattice loop is not closed");
}

mpq_class loop_count_measure_exact(int n) {
    if (n < 1) throw std::invalid_argument("loop_count_measure: n must be >= 1");
    mpz_class c = binom_mpz(2ul * n, static_cast<unsigned long>(n));
    mpz_class denom = 1;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), 2ul * n);  // 2^{2n}
    mpq_class one_dim(c, denom);
    one_dim.canonicalize();
    return one_dim * one_dim;
}

double loop_count_measure(int n) {
    if (n < 1) throw std::invalid_argument("loop_count_measure: n must be >= 1");
    if (n <= kExactLimit) return loop_count_measure_exact(n).get_d();
    // one-dimensional factor 2^{-2n} C(2n, n), squared
    const double log_one_dim = log_binomial(2ll * n, n) - 2.0 * n * 0.69314718055994530942;
    return std::exp(2.0 * log_one_dim);
}

mpq_class walk_loop_rate_exact(int n) {
    return loop_count_measure_exact(n) / mpq_class(2 * n);
}

double walk_loop_rate(int n) {
    if (n <= kExactLimit) return walk_loop_rate_exact(n).get_d();
    return loop_count_measure(n) / (2.0 * n);
}

double rooted_loop_weight(const LatticeLoop& loop) {
    validate_loop(loop);
    const double two_n = static_cast<double>(loop.steps.size());
    return std::exp(-two_n * 1.38629436111989061883) / two_n;  // 4^{-2n} / (2n)
}

bool endpoint_admissible(int steps, long long endpoint) {
    return steps >= 0 && std::llabs(endpoint) <= steps && ((endpoint + steps) % 2 == 0);
}

WalkBridge1D sample_walk_bridge(int steps, long long endpoint, Rng& rng) {
    if (steps < 1 || !endpoint_admissible(steps, endpoint))
        throw std::invalid_argument("sample_walk_bridge: endpoint " + std::to_string(endpoint) +
                                    " not admissible for " + std::to_string(steps) + " steps");
    const long long ups = (steps + endpoint) / 2;
    std::vector<int> incr(static_cast<std::size_t>(steps), -1);
    for (long long i = 0; i < ups; ++i) incr[static_cast<std::size_t>(i)] = 1;
    // Fisher-Yates
    for (std::size_t i = incr.size(); i > 1; --i)
        std::swap(incr[i - 1], incr[rng.below(i)]);
    WalkBridge1D b;
    b.positions.reserve(incr.size() + 1);
    b.positions.push_back(0);
    for (int d : incr) b.positions.push_back(b.positions.back() + d);
    return b;
}

WalkBridge2D combine_walks(const WalkBridge1D& a, const WalkBridge1D& b) {
    if (a.positions.size() != b.positions.size())
        throw std::invalid_argument("combine_walks: length mismatch");
    WalkBridge2D w;
    w.positions.reserve(a.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        const long long x = a.positions[i], y = b.positions[i];
        if ((x + y) % 2 != 0) throw std::invalid_argument("combine_walks: parity mismatch");
        w.positions.push_back({(x + y) / 2, (y - x) / 2});
    }
    return w;
}

WalkBridge2D sample_closed_walk(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_closed_walk: n must be >= 1");
    const WalkBridge1D a = sample_walk_bridge(2 * n, 0, rng);
    const WalkBridge1D b = sample_walk_bridge(2 * n, 0, rng);
    return combine_walks(a, b);
}

double MidpointLaw::cdf_at(long long x) const {
    const auto it = std::upper_bound(support.begin(), support.end(), x);
    if (it == support.begin()) return 0.0;
    return cdf[static_cast<std::size_t>(it - support.begin()) - 1];
}

double MidpointLaw::cdf_below(long long x) const { return cdf_at(x - 1); }

long long MidpointLaw::quantile(double u) const {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return support.back();
    return support[static_cast<std::size_t>(it - cdf.begin())];
}

namespace {
MidpointLaw midpoint_law_uncached(int total, long long endpoint, int m);
}

MidpointLaw midpoint_law(int total, long long endpoint, int m) {
    // small laws are queried over and over by the coupling recursion
    if (total <= 64) {
        thread_local std::unordered_map<std::uint64_t, MidpointLaw> cache;
        const std::uint64_t key = (static_cast<std::uint64_t>(total) << 40) |
                                  (static_cast<std::uint64_t>(m) << 24) |
                                  static_cast<std::uint64_t>(endpoint + (1ll << 20));
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        MidpointLaw law = midpoint_law_uncached(total, endpoint, m);
        cache.emplace(key, law);
        return law;
    }
    return midpoint_law_uncached(total, endpoint, m);
}

namespace {

MidpointLaw midpoint_law_uncached(int total, long long endpoint, int m) {
    if (total < 2 || !endpoint_admissible(total, endpoint))
        throw std::invalid_argument("midpoint_law: inadmissible (total, endpoint)");
    if (m < 1 || m >= total || std::abs(2 * m - total) > 1)
        throw std::invalid_argument("midpoint_law: m must be the (near-)midpoint");

    MidpointLaw law;
    law.total = total;
    law.endpoint = endpoint;
    law.m = m;

    const int rest = total - m;
    // support: w with |w| <= m, w == m (mod 2), |endpoint - w| <= rest
    const long long lo = std::max<long long>(-m, endpoint - rest);
    const long long hi = std::min<long long>(m, endpoint + rest);
    for (long long w = lo; w <= hi; w += 2) law.support.push_back(w);
    const std::size_t count = law.support.size();
    law.pmf.resize(count);

    if (total <= kExactLimit) {
        std::vector<mpz_class> weights(count);
        mpz_class sum = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const long long w = law.support[i];
            weights[i] = binom_mpz(static_cast<unsigned long>(m),
                                   static_cast<unsigned long>((m + w) / 2)) *
                         binom_mpz(static_cast<unsigned long>(rest),
                                   static_cast<unsigned long>((rest + endpoint - w) / 2));
            sum += weights[i];
        }
        for (std::size_t i = 0; i < count; ++i) {
            mpq_class q(weights[i], sum);
            q.canonicalize();
            law.pmf[i] = q.get_d();
        }
    } else {
        // unnormalized pmf by the ratio recurrence outward from the mode;
        // avoids lgamma per point and never underflows near the peak
        const double mode_target = static_cast<double>(m) * static_cast<double>(endpoint) /
                                   static_cast<double>(total);
        std::size_t mode_idx = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = std::fabs(static_cast<double>(law.support[i]) - mode_target);
            if (d < best) {
                best = d;
                mode_idx = i;
            }
        }
        std::vector<double> weight(count, 0.0);
        weight[mode_idx] = 1.0;
        auto step_ratio = [&](long long w) {
            // weight(w+2) / weight(w)
            const double a = static_cast<double>((m + w) / 2);
            const double b = static_cast<double>((rest + endpoint - w) / 2);
            return (static_cast<double>(m) - a) / (a + 1.0) * b /
                   (static_cast<double>(rest) - b + 1.0);
        };
        for (std::size_t i = mode_idx + 1; i < count; ++i)
            weight[i] = weight[i - 1] * step_ratio(law.support[i - 1]);
        for (std::size_t i = mode_idx; i > 0; --i)
            weight[i - 1] = weight[i] / step_ratio(law.support[i - 1]);
        double sum = 0.0;
        for (double w : weight) sum += w;
        for (std::size_t i = 0; i < count; ++i) law.pmf[i] = weight[i] / sum;
    }

    law.cdf.resize(count);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        acc += law.pmf[i];
        law.cdf[i] = std::min(acc, 1.0);
    }
    law.cdf.back() = 1.0;
    return law;
}

}  // namespace

LocalCltResult local_clt_compare(int m, int l, int j) {
    if (m < 1 || std::abs(l) > m / 2 || std::abs(j) > m / 8)
        throw std::invalid_argument("local_clt_compare: need |l| <= m/2, |j| <= m/8");
    LocalCltResult r;
    double log_exact;
    if (4 * m <= 4 * kExactLimit) {
        const mpz_class num = binom_mpz(2ul * m, static_cast<unsigned long>(m + j + l)) *
                              binom_mpz(2ul * m, static_cast<unsigned long>(m + l - j));
        const mpz_class den = binom_mpz(4ul * m, static_cast<unsigned long>(2 * m + 2 * l));
        mpq_class q(num, den);
        q.canonicalize();
        r.exact = q.get_d();
        log_exact = log_mpz(num) - log_mpz(den);
    } else {
        log_exact = log_binomial(2ll * m, m + j + l) + log_binomial(2ll * m, m + l - j) -
                    log_binomial(4ll * m, 2ll * m + 2ll * l);
        r.exact = std::exp(log_exact);
    }
    const double ratio = static_cast<double>(l) / static_cast<double>(m);
    const double var = static_cast<double>(m) * (1.0 - ratio * ratio);
    const double log_approx = std::log(2.0) - 0.5 * std::log(2.0 * M_PI * var) -
                              (4.0 * j * j) / (2.0 * var);
    r.approx = std::exp(log_approx);
    r.log_ratio = log_exact - log_approx;
    return r;
}

StirlingResult stirling_approx(int n) {
    if (n < 1) throw std::invalid_argument("stirling_approx: n must be >= 1");
    StirlingResult r;
    mpz_fac_ui(r.exact.get_mpz_t(), static_cast<unsigned long>(n));
    const double nd = static_cast<double>(n);
    const double log_approx = 0.5 * std::log(2.0 * M_PI) + (nd + 0.5) * std::log(nd) - nd +
                              std::log1p(1.0 / (12.0 * nd));
    r.approx = std::exp(log_approx);
    r.rel_error = std::expm1(log_approx - log_mpz(r.exact));
    return r;
}

double log_binomial(long long n, long long k) {
    if (k < 0 || k > n) return -1e300;
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace loopsoup
