#include "helpers.hpp"

using namespace randset;
using namespace randset::stats;
using namespace testing_support;

namespace {

// Inverse normal CDF by bisection on the library-independent erfc.
double normal_quantile(double p) {
    double lo = -10.0;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> normal_stream(Rng& rng, int n) {
    std::normal_distribution<double> g;
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(g(rng));
    return out;
}

}  // namespace

TEST(MeanAndCovariance, Examples) {
    const std::vector<Vector> two{v2(1, 0), v2(0, 1)};
    const auto mc = mean_and_covariance(two);
    EXPECT_TRUE(mc.mean.isApprox(v2(0.5, 0.5), 1e-15));
    Matrix expected(2, 2);
    expected << 0.5, -0.5, -0.5, 0.5;
    EXPECT_TRUE(mc.cov.isApprox(expected, 1e-15));

    const std::vector<Vector> constant(5, v2(2, -1));
    EXPECT_EQ(mean_and_covariance(constant).cov.norm(), 0.0);

    const std::vector<double> rep{0, 0, 1, 1};
    const auto mv = mean_and_variance(rep);
    EXPECT_DOUBLE_EQ(mv.mean, 0.5);
    EXPECT_DOUBLE_EQ(mv.variance, 1.0 / 3.0);

    EXPECT_THROW(mean_and_covariance(std::vector<Vector>{v2(0, 0)}), InvalidArgument);
    EXPECT_THROW(mean_and_variance(std::vector<double>{1.0}), InvalidArgument);
}

TEST(MeanAndCovariance, SymmetricPsd) {
    Rng rng(91);
    for (int t = 0; t < 100; ++t) {
        std::vector<Vector> sample;
        for (int i = 0; i < 2 + t % 30; ++i) sample.push_back(random_point(rng, 3, -1, 1));
        const auto mc = mean_and_covariance(sample);
        EXPECT_EQ(mc.cov, mc.cov.transpose());
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(mc.cov).eigenvalues().minCoeff(), -1e-10);
    }
}

TEST(Median, OddAndEven) {
    EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2.0);
    EXPECT_DOUBLE_EQ(median({4, 1, 3, 2}), 2.5);
    EXPECT_THROW(median({}), InvalidArgument);
}

TEST(NormalCdf, ReferenceValues) {
    EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
    EXPECT_NEAR(normal_cdf(-1.0), 0.15865525393145707, 1e-12);
    EXPECT_NEAR(normal_cdf(3.0, 1.0, 2.0), normal_cdf(1.0), 1e-15);
}

// Critical values of the Kolmogorov distribution from standard tables.
TEST(KolmogorovSurvival, CriticalValues) {
    EXPECT_NEAR(kolmogorov_survival(1.2238478702170823), 0.10, 1e-6);
    EXPECT_NEAR(kolmogorov_survival(1.3580986393225507), 0.05, 1e-6);
    EXPECT_NEAR(kolmogorov_survival(1.6276236115189380), 0.01, 1e-6);
    EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
    EXPECT_NEAR(kolmogorov_survival(0.2), 1.0, 1e-9);
}

TEST(KolmogorovSurvival, BranchesAgreeAndMonotone) {
    double prev = 1.0;
    for (double x = 0.05; x < 4.0; x += 0.01) {
        const double p = kolmogorov_survival(x);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_LE(p, prev + 1e-12);
        prev = p;
    }
    EXPECT_NEAR(kolmogorov_survival(1.18 - 1e-12), kolmogorov_survival(1.18), 1e-9);
}

TEST(KsTestNormal, QuantileSampleFitsWell) {
    std::vector<double> q;
    for (int i = 1; i <= 100; ++i) q.push_back(normal_quantile((i - 0.5) / 100));
    const auto r = ks_test_normal(q, 0.0, 1.0);
    EXPECT_LE(r.statistic, 0.005 + 1e-12);
    EXPECT_GT(r.p_value, 0.99);
}

TEST(KsTestNormal, ConstantSampleFitsBadly) {
    const std::vector<double> c(50, 0.3);
    const auto r = ks_test_normal(c, 0.0, 1.0);
    EXPECT_GE(r.statistic, 0.5);
    EXPECT_LT(r.p_value, 1e-6);
}

TEST(KsTestNormal, AffineInvariance) {
    Rng rng(92);
    const auto x = normal_stream(rng, 200);
    const auto rx = ks_test_normal(x, 0.5, 1.5);
    // Scaling by a power of two is exact in floating point.
    std::vector<double> y;
    for (double v : x) y.push_back(4.0 * v);
    const auto ry = ks_test_normal(y, 4.0 * 0.5, 4.0 * 1.5);
    EXPECT_EQ(rx.statistic, ry.statistic);
    EXPECT_EQ(rx.p_value, ry.p_value);
    std::vector<double> z;
    for (double v : x) z.push_back(-0.7 * v + 3.0);
    const auto rz = ks_test_normal(z, -0.7 * 0.5 + 3.0, 0.7 * 1.5);
    EXPECT_NEAR(rx.statistic, rz.statistic, 1e-12);
}

TEST(KsTestNormal, Preconditions) {
    const std::vector<double> small(19, 0.0);
    const std::vector<double> ok(20, 0.0);
    EXPECT_THROW(ks_test_normal(small, 0, 1), InvalidArgument);
    EXPECT_THROW(ks_test_normal(ok, 0, 0), InvalidArgument);
    EXPECT_THROW(ks_test_normal(ok, 0, -1), InvalidArgument);
}

TEST(KsTestNormal, ImprovesTowardQuantileFit) {
    Rng rng(93);
    auto x = normal_stream(rng, 100);
    std::sort(x.begin(), x.end());
    const double d_raw = ks_test_normal(x, 0, 1).statistic;
    std::vector<double> mix;
    for (int i = 0; i < 100; ++i) mix.push_back(0.5 * x[i] + 0.5 * normal_quantile((i + 0.5) / 100));
    EXPECT_LE(ks_test_normal(mix, 0, 1).statistic, d_raw + 1e-12);
}

TEST(KsTwoSample, Examples) {
    Rng rng(94);
    const auto a = normal_stream(rng, 50);
    const auto same = ks_two_sample(a, a);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_EQ(same.p_value, 1.0);
    std::vector<double> shifted;
    for (double v : a) shifted.push_back(v + 100.0);
    EXPECT_EQ(ks_two_sample(a, shifted).statistic, 1.0);
    EXPECT_THROW(ks_two_sample(std::vector<double>(19, 0.0), a), InvalidArgument);
}

TEST(KsTwoSample, TiesHandled) {
    const std::vector<double> a{0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3};
    std::vector<double> b = a;
    std::reverse(b.begin(), b.end());
    EXPECT_EQ(ks_two_sample(a, b).statistic, 0.0);
}

// Independent halves of one normal stream: p > 0.01 in at least 95% of seeds.
TEST(KsTwoSample, Calibration) {
    int accepted = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(1000 + s);
        const auto x = normal_stream(rng, 2000);
        const std::span<const double> all(x);
        accepted += ks_two_sample(all.first(1000), all.last(1000)).p_value > 0.01 ? 1 : 0;
    }
    EXPECT_GE(accepted, static_cast<int>(0.95 * seeds));
}

TEST(KsPValues, MonotoneInStatistic) {
    // Scaling a fixed sample away from N(0,1) raises D and lowers p.
    std::vector<double> q;
    for (int i = 1; i <= 200; ++i) q.push_back(normal_quantile((i - 0.5) / 200));
    double prev_d = -1.0;
    double prev_p = 2.0;
    for (double shift = 0.0; shift < 1.0; shift += 0.05) {
        std::vector<double> s;
        for (double v : q) s.push_back(v + shift);
        const auto r = ks_test_normal(s, 0, 1);
        EXPECT_GE(r.statistic, prev_d);
        EXPECT_LE(r.p_value, prev_p);
        prev_d = r.statistic;
        prev_p = r.p_value;
    }
}

TEST(LoglogSlope, Examples) {
    const std::vector<double> xs{1, 4, 16, 64, 256};
    std::vector<double> power;
    std::vector<double> flat;
    std::vector<double> noisy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        power.push_back(1.0 / std::sqrt(xs[i]));
        flat.push_back(7.0);
        noisy.push_back(3.0 / std::sqrt(xs[i]) * (i % 2 == 0 ? 1.05 : 0.95));
    }
    EXPECT_NEAR(loglog_slope(xs, power).slope, -0.5, 1e-12);
    EXPECT_NEAR(loglog_slope(xs, flat).slope, 0.0, 1e-12);
    const double s = loglog_slope(xs, noisy).slope;
    EXPECT_GE(s, -0.55);
    EXPECT_LE(s, -0.45);
    EXPECT_THROW(loglog_slope(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InvalidArgument);
    EXPECT_THROW(loglog_slope(std::vector<double>{1, 2, 3}, std::vector<double>{1, 0, 2}), InvalidArgument);
}

TEST(LoglogSlope, ExactOnPowerLaws) {
    Rng rng(95);
    for (int t = 0; t < 50; ++t) {
        const double alpha = uniform(rng, -2, 2);
        const double c = uniform(rng, 0.1, 10);
        std::vector<double> xs;
        std::vector<double> ys;
        for (int i = 0; i < 8; ++i) {
            xs.push_back(std::pow(2.0, i));
            ys.push_back(c * std::pow(xs.back(), alpha));
        }
        EXPECT_NEAR(loglog_slope(xs, ys).slope, alpha, 1e-12);
    }
}

TEST(BinomialBand, Examples) {
    EXPECT_TRUE(binomial_band(10000, 0.875, 8750));
    EXPECT_FALSE(binomial_band(10000, 0.875, 8000));
    EXPECT_TRUE(binomial_band(100, 0.0, 0));
    EXPECT_TRUE(binomial_band(100, 1.0, 100));
    EXPECT_FALSE(binomial_band(100, 0.0, 1));
}
