#include "loopsoup/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "loopsoup/brownian.hpp"
#include "loopsoup/domain.hpp"
#include "loopsoup/json_io.hpp"
#include "loopsoup/kmt.hpp"
#include "loopsoup/numeric.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/soup.hpp"
#include "loopsoup/walk.hpp"

namespace loopsoup::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bridge_value_at(const BridgePath1D& b, double s) {
    const auto it = std::lower_bound(b.t.begin(), b.t.end(), s - 1e-12);
    if (it == b.t.end() || std::fabs(*it - s) > 1e-9)
        throw std::runtime_error("bridge grid does not contain requested time");
    return b.v[static_cast<std::size_t>(it - b.t.begin())];
}

// slope of log y on log x with a separate intercept per group
double pooled_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<int>& group) {
    std::map<int, std::pair<double, double>> means;
    std::map<int, int> counts;
    for (std::size_t i = 0; i < x.size(); ++i) {
        means[group[i]].first += std::log(x[i]);
        means[group[i]].second += std::log(y[i]);
        counts[group[i]]++;
    }
    std::vector<double> cx, cy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& m = means[group[i]];
        const double k = counts[group[i]];
        cx.push_back(std::log(x[i]) - m.first / k);
        cy.push_back(std::log(y[i]) - m.second / k);
    }
    return ls_slope(cx, cy);
}

}  // namespace

void print_table(std::ostream& os, const Table& table) {
    os << "== " << table.name << " ==\n";
    for (const auto& col : table.columns) os << std::setw(16) << col;
    os << '\n';
    os << std::setprecision(6);
    for (const auto& row : table.rows) {
        for (double v : row) os << std::setw(16) << v;
        os << '\n';
    }
    if (!table.note.empty()) os << table.note << '\n';
    os << (table.pass ? "PASS" : "FAIL") << '\n';
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
}

std::uint64_t count_closed_walks(int n) {
    const int steps = 2 * n;
    const int half = steps;  // max reachable coordinate
    const int side = 2 * half + 1;
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(side) * side, 0);
    std::vector<std::uint64_t> next(cur.size(), 0);
    auto idx = [half, side](int x, int y) {
        return static_cast<std::size_t>(y + half) * side + static_cast<std::size_t>(x + half);
    };
    cur[idx(0, 0)] = 1;
    for (int s = 0; s < steps; ++s) {
        std::fill(next.begin(), next.end(), 0);
        for (int x = -s; x <= s; ++x)
            for (int y = -s; y <= s; ++y) {
                const std::uint64_t c = cur[idx(x, y)];
                if (!c) continue;
                next[idx(x + 1, y)] += c;
                next[idx(x - 1, y)] += c;
                next[idx(x, y + 1)] += c;
                next[idx(x, y - 1)] += c;
            }
        std::swap(cur, next);
    }
    return cur[idx(0, 0)];
}

Table combinatorics_suite() {
    Table t;
    t.name = "combinatorics";
    t.columns = {"n", "enum_minus_formula", "qtilde_n4_dev", "measure_n3_dev", "rate_gap_n4",
                 "integral_ok"};
    double worst_qtilde = 0, worst_measure = 0, worst_gap = 0;
    bool all_exact = true, all_integral = true;
    for (int n = 1; n <= 100; ++n) {
        double enum_diff = 0.0;
        if (n <= 6) {
            const std::uint64_t count = count_closed_walks(n);
            mpz_class four_pow;
            mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 2ul * n);
            const mpq_class formula = loop_count_measure_exact(n) * mpq_class(four_pow);
            enum_diff = std::fabs(formula.get_d() - static_cast<double>(count));
            if (mpq_class(formula - mpq_class(count)) != 0) all_exact = false;
        }
        double qtilde_dev = 0.0, gap_dev = 0.0;
        if (n >= 5 && n <= 50) {
            const double asym = 1.0 / (2 * kPi * n * n) - 1.0 / (8 * kPi * n * n * n);
            qtilde_dev = std::fabs(walk_loop_rate(n) - asym) * std::pow(n, 4);
            worst_qtilde = std::max(worst_qtilde, qtilde_dev);
            gap_dev = std::fabs(brownian_loop_rate(n) - walk_loop_rate(n)) * std::pow(n, 4);
            worst_gap = std::max(worst_gap, gap_dev);
        }
        double measure_dev = 0.0;
        if (n >= 10) {
            const double asym = 1.0 / (kPi * n) - 1.0 / (4 * kPi * n * n);
            measure_dev = std::fabs(loop_count_measure(n) - asym) * std::pow(n, 3);
            worst_measure = std::max(worst_measure, measure_dev);
        }
        double integral_ok = 1.0;
        if (n <= 30) {
            mpz_class four_pow;
            mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 2ul * n);
            const mpq_class v = walk_loop_rate_exact(n) * mpq_class(2 * n) * mpq_class(four_pow);
            if (v.get_den() != 1) {
                integral_ok = 0.0;
                all_integral = false;
            }
        }
        t.rows.push_back({static_cast<double>(n), enum_diff, qtilde_dev, measure_dev, gap_dev,
                          integral_ok});
    }
    t.pass = all_exact && all_integral && worst_qtilde <= fitted::kWalkRateAsympC &&
             worst_measure <= fitted::kLoopMeasureAsympC && worst_gap <= fitted::kRateGapC;
    t.note = "worst qtilde n^4 dev " + format_double(worst_qtilde) + ", measure n^3 dev " +
             format_double(worst_measure) + ", rate gap n^4 " + format_double(worst_gap);
    return t;
}

Table clt_suite(int m_lo, int m_hi) {
    Table t;
    t.name = "local-clt";
    t.columns = {"m", "max_abs_log_ratio", "max_normalized"};
    double worst = 0.0;
    for (int m = m_lo; m <= m_hi; ++m) {
        double max_lr = 0.0, max_norm = 0.0;
        for (int l = -m / 2; l <= m / 2; ++l)
            for (int j = -m / 8; j <= m / 8; ++j) {
                const auto r = local_clt_compare(m, l, j);
                const double budget = 1.0 / m + std::pow(static_cast<double>(j), 4) / std::pow(m, 3);
                max_lr = std::max(max_lr, std::fabs(r.log_ratio));
                max_norm = std::max(max_norm, std::fabs(r.log_ratio) / budget);
            }
        worst = std::max(worst, max_norm);
        t.rows.push_back({static_cast<double>(m), max_lr, max_norm});
    }
    t.pass = worst <= fitted::kLocalCltC;
    t.note = "worst |log ratio|/(1/m + j^4/m^3) = " + format_double(worst);
    return t;
}

Table stirling_suite(int n_hi) {
    Table t;
    t.name = "stirling";
    t.columns = {"n", "approx", "rel_error", "rel_error_n2"};
    double worst = 0.0;
    for (int n = 1; n <= n_hi; ++n) {
        const auto r = stirling_approx(n);
        const double dev = std::fabs(r.rel_error) * n * n;
        worst = std::max(worst, dev);
        if (n <= 10 || n % 10 == 0)
            t.rows.push_back({static_cast<double>(n), r.approx, r.rel_error, dev});
    }
    t.pass = worst <= fitted::kStirlingC;
    t.note = "worst |rel err| n^2 = " + format_double(worst);
    return t;
}

namespace {

struct CovAccumulator {
    RunningStats stats;
    double s, u, target;
};

std::vector<CovAccumulator> standard_pairs() {
    return {{{}, 0.125, 0.5, 0.0625},
            {{}, 0.25, 0.5, 0.125},
            {{}, 0.25, 0.75, 0.0625},
            {{}, 0.5, 0.5, 0.25},
            {{}, 0.375, 0.625, 0.140625}};
}

}  // namespace

Table bridge_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "bridge";
    t.columns = {"s", "t", "target", "estimate", "stderr", "zscore"};
    bool pass = true;

    auto pairs_direct = standard_pairs();
    auto pairs_surgery = standard_pairs();
    RunningStats moment[3];
    const double avals[3] = {0.5, 1.0, 2.0};
    Rng rng(seed, {101});
    for (long i = 0; i < samples; ++i) {
        const BridgePath1D b = sample_bridge_1d(10, rng);
        for (auto& p : pairs_direct)
            p.stats.add(bridge_value_at(b, p.s) * bridge_value_at(b, p.u));
        double sup = 0.0;
        for (double v : b.v) sup = std::max(sup, std::fabs(v));
        for (int k = 0; k < 3; ++k) moment[k].add(std::exp(avals[k] * sup));

        const BridgePath1D b1 = sample_bridge_1d(9, rng);
        const BridgePath1D b2 = sample_bridge_1d(9, rng);
        const BridgePath1D composed = surgery_compose(b1, b2, rng.normal(), 0.5);
        for (auto& p : pairs_surgery)
            p.stats.add(bridge_value_at(composed, p.s) * bridge_value_at(composed, p.u));
    }
    for (auto* pairs : {&pairs_direct, &pairs_surgery})
        for (auto& p : *pairs) {
            const double z = (p.stats.mean - p.target) / p.stats.stderr_mean();
            pass = pass && std::fabs(z) <= 3.0;
            t.rows.push_back({p.s, p.u, p.target, p.stats.mean, p.stats.stderr_mean(), z});
        }
    std::string note = "E[e^{aM}]:";
    for (int k = 0; k < 3; ++k) {
        const double cap =
            fitted::kBridgeMomentBase * std::exp(fitted::kBridgeMomentRate * avals[k] * avals[k]);
        note += " a=" + format_double(avals[k]) + " -> " + format_double(moment[k].mean) +
                " (cap " + format_double(cap) + ")";
        pass = pass && moment[k].mean <= cap;
    }
    t.pass = pass;
    t.note = note;
    return t;
}

Table duration_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "duration";
    t.columns = {"n", "ks_distance", "p_value"};
    bool pass = true;
    for (int n : {1, 5, 20}) {
        Rng rng(seed, {102, static_cast<std::uint64_t>(n)});
        std::vector<double> draws(static_cast<std::size_t>(samples));
        for (auto& d : draws) d = sample_loop_duration(n, rng);
        std::sort(draws.begin(), draws.end());
        std::vector<double> cdf(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) cdf[i] = loop_duration_cdf(n, draws[i]);
        const double d = ks_statistic(draws, cdf);
        const double p = ks_sf(d, draws.size());
        pass = pass && p > 0.001;
        t.rows.push_back({static_cast<double>(n), d, p});
    }
    t.pass = pass;
    return t;
}

Table quantile_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "quantile";
    t.columns = {"check", "value", "tolerance"};
    bool pass = true;
    // exact marginal through the Rademacher target
    {
        Rng rng(seed, {103});
        DiscreteDist rademacher{{-1.0, 1.0}, {0.5, 1.0}};
        long plus = 0;
        for (long i = 0; i < samples; ++i)
            if (quantile_couple(rng.normal(), [](double x) { return normal_cdf(x); },
                                rademacher) > 0)
                ++plus;
        const double dev = std::fabs(static_cast<double>(plus) / samples - 0.5);
        pass = pass && dev <= 0.01;
        t.rows.push_back({1.0, dev, 0.01});
    }
    // monotonicity in the continuous draw
    {
        Rng rng(seed, {104});
        const MidpointLaw law = midpoint_law(16, 0, 8);
        DiscreteDist dist;
        dist.atoms.assign(law.support.begin(), law.support.end());
        dist.cdf = law.cdf;
        double violations = 0;
        for (int i = 0; i < 1000; ++i) {
            double a = rng.normal() * 2.0, b = rng.normal() * 2.0;
            if (a > b) std::swap(a, b);
            const auto f = [](double x) { return normal_cdf(x / 2.0); };
            if (quantile_couple(a, f, dist) > quantile_couple(b, f, dist)) violations += 1;
        }
        pass = pass && violations == 0;
        t.rows.push_back({2.0, violations, 0.0});
    }
    // stochastic ordering of midpoint laws across endpoints (exact CDFs)
    {
        double worst = 0.0;
        for (int n : {4, 8, 16, 32, 64}) {
            for (long long z = -n; z + 2 <= n; z += 2) {
                const MidpointLaw lo = midpoint_law(n, z, n / 2);
                const MidpointLaw hi = midpoint_law(n, z + 2, n / 2);
                for (long long x = -n; x <= n; ++x)
                    worst = std::max(worst, hi.cdf_at(x) - lo.cdf_at(x));
            }
        }
        pass = pass && worst <= 1e-12;
        t.rows.push_back({3.0, worst, 1e-12});
    }
    // realized family: root midpoint nondecreasing in the endpoint
    {
        double violations = 0;
        for (int n : {8, 16, 64}) {
            for (int rep = 0; rep < 50; ++rep) {
                Rng rng(seed, {105, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep)});
                const DyadicCoupling c = build_coupling(n, rng);
                long long prev_mid = 0;
                bool first = true;
                for (long long z = -n; z <= n; z += 2) {
                    const WalkBridge1D w = realize_walk(c, z);
                    const long long mid = w.positions[static_cast<std::size_t>(n / 2)];
                    if (!first && mid < prev_mid) violations += 1;
                    first = false;
                    prev_mid = mid;
                }
            }
        }
        pass = pass && violations == 0;
        t.rows.push_back({4.0, violations, 0.0});
    }
    t.pass = pass;
    t.note = "checks: 1 rademacher marginal, 2 draw monotonicity, 3 CDF ordering, 4 family";
    return t;
}

Table coupling_marginal_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "coupling-marginal";
    t.columns = {"total", "endpoint", "chi2_p", "cov_max_z"};
    bool pass = true;
    const std::pair<int, long long> points[] = {{4, 0}, {8, 0}, {8, 4}, {16, 2}};
    for (const auto& [total, z] : points) {
        const MidpointLaw law = midpoint_law(total, z, total / 2);
        std::vector<double> observed(law.support.size(), 0.0);
        Rng rng(seed, {106, static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(z + 64)});
        for (long i = 0; i < samples; ++i) {
            const DyadicCoupling c = build_coupling(total, rng);
            const WalkBridge1D w = realize_walk(c, z);
            const long long mid = w.positions[static_cast<std::size_t>(total / 2)];
            const auto it = std::lower_bound(law.support.begin(), law.support.end(), mid);
            observed[static_cast<std::size_t>(it - law.support.begin())] += 1.0;
        }
        const auto chi = chi2_test(observed, law.pmf, static_cast<double>(samples));
        pass = pass && chi.p_value > 0.001;
        t.rows.push_back({static_cast<double>(total), static_cast<double>(z), chi.p_value, 0.0});
    }
    // bridge covariance of the recursive construction
    for (int n : {8, 64, 256}) {
        auto pairs = standard_pairs();
        Rng rng(seed, {107, static_cast<std::uint64_t>(n)});
        for (long i = 0; i < samples; ++i) {
            const DyadicCoupling c = build_coupling(n, rng);
            const BridgePath1D b = realize_bridge(c);
            for (auto& p : pairs)
                p.stats.add(bridge_value_at(b, p.s) * bridge_value_at(b, p.u));
        }
        double maxz = 0.0;
        for (auto& p : pairs)
            maxz = std::max(maxz, std::fabs((p.stats.mean - p.target) / p.stats.stderr_mean()));
        pass = pass && maxz <= 3.0;
        t.rows.push_back({static_cast<double>(n), -1.0, 1.0, maxz});
    }
    t.pass = pass;
    t.note = "rows with endpoint -1 are realize_bridge covariance checks (max |z| over 5 pairs)";
    return t;
}

Table discrepancy_suite(int reps, std::uint64_t seed) {
    Table t;
    t.name = "discrepancy";
    t.columns = {"n", "median", "p99", "p99_over_log_n"};
    std::vector<double> log_n, log_p99;
    for (int n : {64, 256, 1024, 4096}) {
        std::vector<double> deltas;
        deltas.reserve(static_cast<std::size_t>(reps));
        for (int rep = 0; rep < reps; ++rep) {
            Rng rng(seed, {108, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep)});
            const DyadicCoupling c = build_coupling(n, rng);
            deltas.push_back(sup_discrepancy(c, 0));
        }
        const double med = percentile(deltas, 0.5);
        const double p99 = percentile(deltas, 0.99);
        const double norm = p99 / std::log(n);
        t.rows.push_back({static_cast<double>(n), med, p99, norm});
        log_n.push_back(std::log(n));
        log_p99.push_back(std::log(norm));
    }
    const double slope = ls_slope(log_n, log_p99);
    t.pass = std::fabs(slope) <= 0.2;
    t.note = "log-log slope of p99(delta)/log n against n: " + format_double(slope);
    return t;
}

Table soup_counts_suite(long cells, std::uint64_t seed) {
    Table t;
    t.name = "soup-counts";
    t.columns = {"n", "lambda", "chi2_p", "mismatch_emp", "mismatch_bound"};
    bool pass = true;
    const std::pair<int, double> points[] = {{1, 5.0}, {3, 20.0}, {5, 100.0}};
    for (const auto& [n, lambda] : points) {
        const Window w{0, cells - 1, 0, 0};
        const PoissonField field(w, n, lambda, seed + static_cast<std::uint64_t>(n));
        const double mu = lambda * field.rate_brownian(n);
        const int kmax = static_cast<int>(mu + 8 * std::sqrt(mu) + 8);
        std::vector<double> observed(static_cast<std::size_t>(kmax) + 2, 0.0);
        std::vector<double> probs(observed.size(), 0.0);
        double p = std::exp(-mu);
        double cum = 0.0;
        for (int k = 0; k <= kmax; ++k) {
            probs[static_cast<std::size_t>(k)] = p;
            cum += p;
            p *= mu / (k + 1);
        }
        probs.back() = std::max(0.0, 1.0 - cum);
        long mismatches = 0;
        for (long i = 0; i < cells; ++i) {
            const auto counts = field.counts(n, {i, 0}, lambda);
            observed[static_cast<std::size_t>(std::min(counts.brownian, kmax + 1))] += 1.0;
            if (counts.brownian != counts.walk) ++mismatches;
        }
        const auto chi = chi2_test(observed, probs, static_cast<double>(cells));
        const double bound = lambda * std::fabs(field.rate_brownian(n) - field.rate_walk(n));
        const double emp = static_cast<double>(mismatches) / static_cast<double>(cells);
        const double slack = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(cells));
        pass = pass && chi.p_value > 0.001 && emp <= bound + slack;
        t.rows.push_back({static_cast<double>(n), lambda, chi.p_value, emp, bound});
    }
    t.pass = pass;
    return t;
}

Table coupling_report_suite(int fields, std::uint64_t seed_base, const std::vector<int>& scales,
                     int threads) {
    Table t;
    t.name = "coupling-report";
    t.columns = {"N",       "fields",        "failures",      "failure_rate",
                 "pairs",   "median_sup",    "max_gap",       "gap_bound"};
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    bool pass = true;
    for (int scale : scales) {
        const int n_max = 512;
        const Window w{-scale, scale, -scale, scale};
        std::vector<CouplingReport> reports(static_cast<std::size_t>(fields));
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= fields) return;
                const PoissonField field(w, n_max, 1.0, seed_base + static_cast<std::uint64_t>(i));
                reports[static_cast<std::size_t>(i)] =
                    build_coupling_report(field, 1.0, scale, 1.0, 1.0);
            }
        };
        std::vector<std::thread> pool;
        for (int k = 0; k < std::min(threads, fields); ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        int failures = 0;
        std::vector<double> sups;
        double max_gap = 0.0;
        double bound = 0.0;
        for (const auto& rep : reports) {
            bound = rep.duration_bound;
            if (!rep.bijection) ++failures;
            for (const auto& p : rep.pairs) sups.push_back(p.sup_distance);
            max_gap = std::max(max_gap, rep.max_duration_gap);
            if (rep.max_duration_gap > rep.duration_bound) pass = false;
        }
        const double med = sups.empty() ? 0.0 : percentile(sups, 0.5);
        t.rows.push_back({static_cast<double>(scale), static_cast<double>(fields),
                          static_cast<double>(failures),
                          static_cast<double>(failures) / static_cast<double>(fields),
                          static_cast<double>(sups.size()), med, max_gap, bound});
    }
    t.pass = pass;  // hard duration bound; trend checks are the caller's business
    t.note = "hard check: every matched pair satisfies the duration gap bound";
    return t;
}

Table layer_suite(bool disk, long samples, std::uint64_t seed) {
    Table t;
    t.name = disk ? "layer-disk" : "layer-slit";
    t.columns = {"epsilon", "t0", "estimate", "stderr", "shape", "ratio"};
    const Domain domain = disk ? Domain::disk({0, 0}, 1.0) : Domain::slit_disk();
    const double envelope = disk ? fitted::kLayerDiskC : fitted::kLayerSlitC;
    bool pass = true;
    std::vector<double> xs, ys;
    std::vector<int> group;
    double fitted_c = 0.0;
    int gi = 0;
    for (double t0 : {0.5, 1.0, 2.0}) {
        for (double eps : {0.02, 0.04, 0.08}) {
            Rng rng(seed, {109, static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(eps * 1e6)});
            const auto est = boundary_layer_measure(domain, eps, t0, 4.0 * t0, samples, rng);
            const double ratio = est.estimate / est.bound_shape;
            fitted_c = std::max(fitted_c, ratio);
            pass = pass && est.estimate <= envelope * est.bound_shape;
            t.rows.push_back({eps, t0, est.estimate, est.std_error, est.bound_shape, ratio});
            if (est.estimate > 0.0) {
                xs.push_back(eps);
                ys.push_back(est.estimate);
                group.push_back(gi);
            }
        }
        ++gi;
    }
    double slope = 0.0;
    if (xs.size() >= 6) slope = pooled_log_slope(xs, ys, group);
    if (disk) pass = pass && slope >= 0.7 && slope <= 1.3;
    // depth-convergence report at one grid point (rows with t0 = 0: estimate
    // vs dyadic depth; finite-grid undercount shrinks as the grid refines)
    std::string depth_note;
    for (int depth : {6, 8, 10}) {
        Rng rng(seed, {113, static_cast<std::uint64_t>(depth)});
        const auto est = boundary_layer_measure(domain, 0.04, 1.0, 4.0, samples / 2, rng, depth);
        t.rows.push_back({0.04, 0.0, est.estimate, est.std_error, static_cast<double>(depth),
                          est.estimate / est.bound_shape});
        depth_note += " d" + std::to_string(depth) + ": " + format_double(est.estimate);
    }
    t.pass = pass;
    t.note = "pooled log-log slope in epsilon: " + format_double(slope) +
             ", fitted c: " + format_double(fitted_c) + ", envelope: " + format_double(envelope) +
             "; depth sweep at (0.04, 1):" + depth_note;
    return t;
}

Table beurling_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "beurling";
    t.columns = {"t", "r_over_sqrt_t", "estimate", "stderr"};
    const double r = 0.1;
    const Complex z(-r, 0.0);
    bool pass = true;
    std::vector<double> xs, ys;
    std::vector<BeurlingEstimate> ests;
    for (double tt : {1.0, 4.0, 16.0}) {
        Rng rng(seed, {110, static_cast<std::uint64_t>(tt)});
        const int steps = static_cast<int>(256 * tt);
        const auto est = beurling_avoidance(z, r, tt, samples, rng, steps);
        ests.push_back(est);
        const double ratio = r / std::sqrt(tt);
        xs.push_back(std::log(ratio));
        ys.push_back(std::log(est.estimate));
        t.rows.push_back({tt, ratio, est.estimate, est.std_error});
    }
    // nonincreasing in t within 2 stderr
    for (std::size_t i = 1; i < ests.size(); ++i)
        pass = pass &&
               ests[i].estimate <= ests[i - 1].estimate +
                                       2.0 * (ests[i].std_error + ests[i - 1].std_error);
    const double slope = ls_slope(xs, ys);
    pass = pass && slope >= 0.3 && slope <= 0.7;
    // short-time limit and empty obstacle
    {
        Rng rng(seed, {111});
        const auto short_t = beurling_avoidance(z, r, 1e-4, 1000, rng, 16);
        pass = pass && short_t.estimate >= 0.999;
        const auto free = beurling_avoidance(z, r, 1.0, 1000, rng, 16, false);
        pass = pass && free.estimate == 1.0;
    }
    t.pass = pass;
    t.note = "log-log slope vs r/sqrt(t): " + format_double(slope);
    return t;
}

Table ruin_suite(long samples, std::uint64_t seed) {
    Table t;
    t.name = "gambler-ruin";
    t.columns = {"epsilon", "t", "estimate", "stderr", "exact", "zscore"};
    bool pass = true;
    int idx = 0;
    for (double eps : {0.05, 0.1, 0.2})
        for (double tt : {0.5, 1.0, 2.0}) {
            Rng rng(seed, {112, static_cast<std::uint64_t>(idx++)});
            const auto est = gambler_ruin_check(eps, tt, samples, rng);
            const double z = (est.estimate - est.exact) / est.std_error;
            pass = pass && std::fabs(z) <= 3.0;
            t.rows.push_back({eps, tt, est.estimate, est.std_error, est.exact, z});
        }
    t.pass = pass;
    return t;
}

Table sandwich_suite() {
    Table t;
    t.name = "cdf-sandwich";
    t.columns = {"total", "x_range", "c1"};
    std::vector<double> c1s;
    for (int total : {4, 1024, 4096}) {
        const long long range = total == 4 ? 2 : 2 * static_cast<long long>(std::sqrt(total));
        const double c1 = cdf_sandwich_fit(total, 0, -range, range);
        c1s.push_back(c1);
        t.rows.push_back({static_cast<double>(total), static_cast<double>(range), c1});
    }
    const double ratio = c1s[1] / c1s[2];
    t.pass = c1s[0] <= 2.0 && ratio >= 0.5 && ratio <= 2.0;
    t.note = "c1(1024)/c1(4096) = " + format_double(ratio);
    return t;
}

}  // namespace loopsoup::verify
