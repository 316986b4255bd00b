#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "acvfur/errors.hpp"
#include "acvfur/kpss.hpp"
#include "acvfur/models.hpp"
#include "acvfur/random.hpp"

using namespace acvfur;

namespace {

// KPSS statistic written out directly: partial sums of the demeaned series
// and a Bartlett long-run variance with weights 1 - j/(l+1).
long double kpss_oracle(const std::vector<double>& y, std::size_t l) {
  const std::size_t n = y.size();
  long double mean = 0;
  for (double v : y) mean += v;
  mean /= n;
  std::vector<long double> e(n);
  for (std::size_t t = 0; t < n; ++t) e[t] = y[t] - mean;
  long double s = 0, ss = 0;
  for (std::size_t t = 0; t < n; ++t) {
    s += e[t];
    ss += s * s;
  }
  long double lrv = 0;
  for (std::size_t t = 0; t < n; ++t) lrv += e[t] * e[t];
  for (std::size_t j = 1; j <= l; ++j) {
    long double g = 0;
    for (std::size_t t = j; t < n; ++t) g += e[t] * e[t - j];
    lrv += 2 * (1 - static_cast<long double>(j) / (l + 1)) * g;
  }
  lrv /= n;
  return ss / (static_cast<long double>(n) * n) / lrv;
}

}  // namespace

TEST(Kpss, CriticalValuesAndLags) {
  EXPECT_DOUBLE_EQ(kpss_critical_value(0.10), 0.347);
  EXPECT_DOUBLE_EQ(kpss_critical_value(0.05), 0.463);
  EXPECT_DOUBLE_EQ(kpss_critical_value(0.025), 0.574);
  EXPECT_DOUBLE_EQ(kpss_critical_value(0.01), 0.739);
  EXPECT_THROW(kpss_critical_value(0.2), InputError);

  EXPECT_EQ(kpss_lags(200, KpssLagRule::Short), 4u);
  EXPECT_EQ(kpss_lags(200, KpssLagRule::Long), 14u);
  EXPECT_EQ(kpss_lags(100, KpssLagRule::Short), 4u);
  EXPECT_EQ(kpss_lags(100, KpssLagRule::Long), 12u);
  EXPECT_EQ(kpss_lags(80, KpssLagRule::Short), 3u);
}

TEST(Kpss, CriticalValuesMatchABrownianBridgeSimulation) {
  // Quantiles of the integral of a squared Brownian bridge, from discretised
  // partial sums of Gaussian noise.
  std::mt19937_64 engine(2024);
  std::normal_distribution<double> normal;
  const int steps = 100;
  const int reps = 1'000'000;
  std::vector<double> stat(reps);
  std::vector<double> w(steps);
  for (int r = 0; r < reps; ++r) {
    double s = 0.0;
    for (int t = 0; t < steps; ++t) w[t] = s += normal(engine);
    const double end = s;
    double acc = 0.0;
    for (int t = 0; t < steps; ++t) {
      const double b = w[t] - end * (t + 1) / steps;
      acc += b * b;
    }
    stat[r] = acc / (static_cast<double>(steps) * steps);
  }
  auto quantile = [&](double q) {
    auto it = stat.begin() + static_cast<long>(q * reps);
    std::nth_element(stat.begin(), it, stat.end());
    return *it;
  };
  EXPECT_NEAR(quantile(0.90), kpss_critical_value(0.10), 0.01);
  EXPECT_NEAR(quantile(0.95), kpss_critical_value(0.05), 0.01);
  EXPECT_NEAR(quantile(0.975), kpss_critical_value(0.025), 0.015);
  EXPECT_NEAR(quantile(0.99), kpss_critical_value(0.01), 0.02);
}

TEST(Kpss, StatisticMatchesDirectComputation) {
  const auto y = simulate(model_table(1, {{"rho", 0.4}}), 57, SeedSpec{71, 0, 0});
  const std::vector<double> v(y.begin(), y.end());
  for (std::size_t l : {0u, 1u, 3u, 10u}) {
    const auto got = kpss_test_with_lags(y, 0.05, l);
    EXPECT_NEAR(got.statistic, static_cast<double>(kpss_oracle(v, l)), 1e-12 * got.statistic);
    EXPECT_EQ(got.reject, got.statistic > got.critical_value);
    EXPECT_EQ(got.bandwidth_used, static_cast<double>(l + 1));
  }
}

TEST(Kpss, SizeUnderIidNoise) {
  int rejects = 0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    rejects += kpss_test(draw_innovations(GaussianLaw{1.0}, 200, SeedSpec{72, std::uint64_t(r), 0})).reject;
  }
  EXPECT_NEAR(100.0 * rejects / reps, 5.0, 2.5);
}

TEST(Kpss, DeterministicRampRejects) {
  double previous = 0.0;
  for (std::size_t n : {100u, 200u, 400u, 800u}) {
    std::vector<double> ramp(n);
    for (std::size_t t = 0; t < n; ++t) ramp[t] = static_cast<double>(t + 1);
    const auto r = kpss_test(TimeSeries(ramp));
    EXPECT_TRUE(r.reject) << n;
    EXPECT_GT(r.statistic, previous);
    previous = r.statistic;
  }
}

TEST(Kpss, LocationScaleAndTimeReversalInvariance) {
  const auto y = simulate(model_table(1, {{"rho", 0.7}}), 150, SeedSpec{73, 0, 0});
  std::vector<double> v(y.begin(), y.end());
  const double base = kpss_test(y).statistic;
  std::vector<double> moved(v), reversed(v.rbegin(), v.rend());
  for (auto& x : moved) x = -250.0 + 0.003 * x;
  EXPECT_NEAR(kpss_test(TimeSeries(moved)).statistic, base, 1e-10 * base);
  EXPECT_NEAR(kpss_test(TimeSeries(reversed)).statistic, base, 1e-10 * base);
  for (std::size_t l : {0u, 2u, 7u}) {
    EXPECT_NEAR(kpss_test_with_lags(TimeSeries(reversed), 0.05, l).statistic,
                kpss_test_with_lags(y, 0.05, l).statistic, 1e-10 * base);
  }
}

TEST(Kpss, InputErrors) {
  EXPECT_THROW(kpss_test(TimeSeries({1, 2, 3, 4, 5, 6, 7})), InputError);
  EXPECT_THROW(kpss_test(TimeSeries(std::vector<double>(20, 1.0))), DegenerateInputError);
}
