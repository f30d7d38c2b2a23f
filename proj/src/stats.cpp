#include "frontier_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flab {

double intersection_exponent(int k, double lambda) {
    if (k < 1 || !(lambda > 0.0))
        throw std::invalid_argument("intersection_exponent: need k >= 1, lambda > 0");
    double s = std::sqrt(24.0 * k + 1.0) + std::sqrt(24.0 * lambda + 1.0) - 2.0;
    return (s * s - 4.0) / 48.0;
}

WilsonInterval wilson_interval(uint64_t successes, uint64_t n, double z) {
    if (n == 0) return {};
    double p = double(successes) / double(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / double(n);
    double center = (p + z2 / (2.0 * double(n))) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / double(n) + z2 / (4.0 * double(n) * double(n))) / denom;
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& pts,
                         const std::vector<double>& weights) {
    if (pts.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
    if (!weights.empty() && weights.size() != pts.size())
        throw std::invalid_argument("fit_exponent: weight/point size mismatch");

    ExponentFit f;
    std::vector<double> x, y, w;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i].first > 0.0 && pts[i].second > 0.0))
            throw std::invalid_argument("fit_exponent: scales and values must be positive");
        x.push_back(std::log(pts[i].first));
        y.push_back(std::log(pts[i].second));
        w.push_back(weights.empty() ? 1.0 : weights[i]);
        f.points.emplace_back(x.back(), y.back());
    }
    double sw = 0, sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    double xbar = sx / sw, ybar = sy / sw;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponent: degenerate scales");
    f.slope = sxy / sxx;
    f.intercept = ybar - f.slope * xbar;

    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += w[i] * r * r;
        ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    size_t n = x.size();
    f.stderr_slope = n > 2 ? std::sqrt((ss_res / double(n - 2)) / sxx) : 0.0;
    f.bootstrap_lo = f.bootstrap_hi = f.slope;
    return f;
}

ExponentFit with_bootstrap_ci(ExponentFit fit, const std::vector<double>& scales,
                              const std::function<std::vector<double>(Rng&)>& resample_values,
                              uint64_t seed) {
    constexpr int kResamples = 1000;
    std::vector<double> slopes;
    slopes.reserve(kResamples);
    for (int b = 0; b < kResamples; ++b) {
        Rng rng = make_rng(seed, 0xB007ull + uint64_t(b));
        std::vector<double> vals = resample_values(rng);
        std::vector<std::pair<double, double>> pts;
        bool ok = true;
        for (size_t i = 0; i < scales.size(); ++i) {
            if (!(vals[i] > 0.0)) {
                ok = false;
                break;
            }
            pts.emplace_back(scales[i], vals[i]);
        }
        if (!ok) continue;
        try {
            slopes.push_back(fit_exponent(pts).slope);
        } catch (const std::invalid_argument&) {
        }
    }
    if (!slopes.empty()) {
        std::sort(slopes.begin(), slopes.end());
        size_t lo_i = size_t(0.025 * double(slopes.size() - 1));
        size_t hi_i = size_t(std::ceil(0.975 * double(slopes.size() - 1)));
        fit.bootstrap_lo = std::min(slopes[lo_i], fit.slope);
        fit.bootstrap_hi = std::max(slopes[hi_i], fit.slope);
    }
    return fit;
}

uint64_t binomial_sample(Rng& rng, uint64_t n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    double np = double(n) * p;
    double var = np * (1.0 - p);
    if (var > 25.0) {
        double draw = np + std::sqrt(var) * rng.gaussian();
        if (draw < 0.0) return 0;
        if (draw > double(n)) return n;
        return uint64_t(std::llround(draw));
    }
    uint64_t k = 0;
    for (uint64_t i = 0; i < n; ++i)
        if (rng.u01() < p) ++k;
    return k;
}

double chi2_quantile(double dof, double q) {
    // Wilson-Hilferty: chi2_q ~ dof * (1 - 2/(9 dof) + z_q sqrt(2/(9 dof)))^3.
    // Inverse-normal via Acklam-style rational approximation.
    auto inv_norm = [](double p) {
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
        static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
        const double plow = 0.02425, phigh = 1 - plow;
        double x;
        if (p < plow) {
            double u = std::sqrt(-2 * std::log(p));
            x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
                ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
        } else if (p <= phigh) {
            double u = p - 0.5, r = u * u;
            x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
                (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
        } else {
            double u = std::sqrt(-2 * std::log(1 - p));
            x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
                ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1);
        }
        return x;
    };
    double z = inv_norm(q);
    double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
    return dof * t * t * t;
}

double chi2_uniform_stat(const std::vector<uint64_t>& counts) {
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    if (total == 0 || counts.empty()) return 0.0;
    double expected = double(total) / double(counts.size());
    double stat = 0.0;
    for (uint64_t c : counts) {
        double d = double(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace flab
