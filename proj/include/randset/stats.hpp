#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "randset/errors.hpp"
#include "randset/vector.hpp"

namespace randset::stats {

struct MeanCovariance {
    Vector mean;
    Matrix cov;  // unbiased, divides by n - 1
};

inline MeanCovariance mean_and_covariance(std::span<const Vector> sample) {
    if (sample.size() < 2) throw InvalidArgument("mean_and_covariance: need at least two observations");
    const auto d = sample.front().size();
    Vector mean = Vector::Zero(d);
    for (const auto& v : sample) {
        if (v.size() != d) throw DimensionError("mean_and_covariance: mixed dimensions");
        if (!is_finite(v)) throw InvalidArgument("mean_and_covariance: non-finite observation");
        mean += v;
    }
    mean /= static_cast<double>(sample.size());
    Matrix cov = Matrix::Zero(d, d);
    for (const auto& v : sample) {
        const Vector c = v - mean;
        cov += c * c.transpose();
    }
    cov /= static_cast<double>(sample.size() - 1);
    cov = (0.5 * (cov + cov.transpose())).eval();
    return {mean, cov};
}

struct MeanVariance {
    double mean;
    double variance;  // unbiased
};

inline MeanVariance mean_and_variance(std::span<const double> sample) {
    if (sample.size() < 2) throw InvalidArgument("mean_and_variance: need at least two observations");
    double mean = 0.0;
    for (double x : sample) {
        if (!std::isfinite(x)) throw InvalidArgument("mean_and_variance: non-finite observation");
        mean += x;
    }
    mean /= static_cast<double>(sample.size());
    double ss = 0.0;
    for (double x : sample) ss += (x - mean) * (x - mean);
    return {mean, ss / static_cast<double>(sample.size() - 1)};
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median: empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

/// Survival function of the Kolmogorov distribution, P(K > lambda).
/// Series are truncated once a term drops below 1e-10.
inline double kolmogorov_survival(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    double p = 0.0;
    if (lambda < 1.18) {
        // Jacobi-transformed series, fast for small lambda.
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double term = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
            sum += term;
            if (term < 1e-10) break;
        }
        p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    } else {
        double sign = 1.0;
        for (int k = 1; k < 100; ++k) {
            const double term = std::exp(-2.0 * k * k * lambda * lambda);
            p += sign * term;
            sign = -sign;
            if (term < 1e-10) break;
        }
        p *= 2.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

struct KsResult {
    double statistic;
    double p_value;
};

namespace detail {
// Stephens' small-sample adjustment of the asymptotic Kolmogorov argument.
inline double ks_p_value(double d, double effective_n) {
    const double rn = std::sqrt(effective_n);
    return kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d);
}
}  // namespace detail

/// One-sample Kolmogorov-Smirnov test against N(mu, sigma^2).
inline KsResult ks_test_normal(std::span<const double> sample, double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("ks_test_normal: sigma must be positive");
    if (sample.size() < 20) throw InvalidArgument("ks_test_normal: need at least 20 observations");
    std::vector<double> sorted(sample.begin(), sample.end());
    for (double x : sorted) {
        if (!std::isfinite(x)) throw InvalidArgument("ks_test_normal: non-finite observation");
    }
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf((sorted[i] - mu) / sigma);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, detail::ks_p_value(d, n)};
}

/// Two-sample Kolmogorov-Smirnov test; ties are resolved by advancing both
/// empirical CDFs past a shared value before comparing.
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 20 || b.size() < 20) throw InvalidArgument("ks_two_sample: need at least 20 observations per sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return {d, detail::ks_p_value(d, nx * ny / (nx + ny))};
}

struct LineFit {
    double slope;
    double intercept;
};

/// Least-squares fit of log y = intercept + slope * log x.
inline LineFit loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3) {
        throw InvalidArgument("loglog_slope: need equal-length sequences of at least 3 points");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw InvalidArgument("loglog_slope: entries must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
        mx += lx.back();
        my += ly.back();
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) throw InvalidArgument("loglog_slope: abscissae must not all coincide");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

/// |k - n p| <= 3 sqrt(n p (1 - p)) + 0.5.
inline bool binomial_band(long long n, double p, long long k) {
    const double nn = static_cast<double>(n);
    return std::abs(static_cast<double>(k) - nn * p) <= 3.0 * std::sqrt(nn * p * (1.0 - p)) + 0.5;
}

}  // namespace randset::stats
