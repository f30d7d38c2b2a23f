#pragma once

#include <cstdint>
#include <vector>

#include "frontier_lab/rng.hpp"

namespace flab {

// Closed-form intersection exponent xi(k, lambda).
double intersection_exponent(int k, double lambda);

// Reference values used across the experiments.
struct ReferenceConstants {
    double alpha = 2.0 / 3.0;        // two-arm disconnection exponent xi(2)
    double one_arm = 0.25;           // xi(1)
    double frontier_dim = 4.0 / 3.0; // 2 - alpha
    double xi22 = 35.0 / 12.0;
    static double lambda_of_k(int k) { return double(k) / 4.0; }
};

struct WilsonInterval {
    double p_hat = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};
WilsonInterval wilson_interval(uint64_t successes, uint64_t n, double z = 1.959963984540054);

// Weighted least squares of ln(value) against ln(scale).
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    std::vector<std::pair<double, double>> points;  // (ln scale, ln value)
    double bootstrap_lo = 0.0;
    double bootstrap_hi = 0.0;
};

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& scale_value_pairs,
                         const std::vector<double>& weights = {});

// Percentile bootstrap of the fitted slope; `resample` perturbs a copy of the
// per-scale values.  The returned interval is widened to contain the point
// estimate.  1000 resamples.
ExponentFit with_bootstrap_ci(
    ExponentFit fit, const std::vector<double>& scales,
    const std::function<std::vector<double>(Rng&)>& resample_values, uint64_t seed);

// Binomial sampler for bootstrap resampling (normal approximation when
// n p (1-p) is large, exact Bernoulli sum otherwise).
uint64_t binomial_sample(Rng& rng, uint64_t n, double p);

// Upper quantile of the chi-square distribution (Wilson-Hilferty
// approximation, adequate for test gating).
double chi2_quantile(double dof, double q);

// Pearson chi-square statistic against a uniform multinomial.
double chi2_uniform_stat(const std::vector<uint64_t>& counts);

}  // namespace flab
