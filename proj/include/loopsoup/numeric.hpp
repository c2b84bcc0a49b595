#pragma once

#include <cstddef>
#include <vector>

namespace loopsoup {

// Regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, double dof);

// Asymptotic Kolmogorov-Smirnov p-value for a one-sample test with n points.
double ks_sf(double d, std::size_t n);

// Pearson chi-square test of observed counts against model probabilities.
// Bins with expected count below min_expect are pooled into their neighbor.
struct Chi2Result {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};
Chi2Result chi2_test(const std::vector<double>& observed, const std::vector<double>& probabilities,
                     double total, double min_expect = 5.0);

// One-sample KS test of sorted samples against a CDF evaluated per sample.
double ks_statistic(const std::vector<double>& sorted_samples, const std::vector<double>& cdf_at_samples);

struct RunningStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_mean() const;
};

double percentile(std::vector<double> values, double q);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace loopsoup
