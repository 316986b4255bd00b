#include <gtest/gtest.h>

#include <cmath>

#include "acvfur/errors.hpp"
#include "acvfur/lrv.hpp"
#include "acvfur/models.hpp"
#include "acvfur/random.hpp"
#include "support/oracles.hpp"

using namespace acvfur;
namespace oracle = acvfur::testing::oracle;

TEST(KernelWeight, Examples) {
  EXPECT_EQ(kernel_weight(Kernel::QuadraticSpectral, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_weight(Kernel::Bartlett, 0.5), 0.5);
  EXPECT_EQ(kernel_weight(Kernel::Bartlett, 2.0), 0.0);
  EXPECT_EQ(kernel_weight(Kernel::Parzen, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_weight(Kernel::Parzen, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(kernel_weight(Kernel::Parzen, 0.75), 2.0 * 0.25 * 0.25 * 0.25);
  EXPECT_EQ(kernel_weight(Kernel::Parzen, 1.5), 0.0);
}

TEST(KernelWeight, QuadraticSpectralAgreesWithExtendedPrecision) {
  EXPECT_NEAR(kernel_weight(Kernel::QuadraticSpectral, 1.0), static_cast<double>(oracle::qs_weight(1.0L)),
              1e-15);
  for (double x : {1e-6, 5e-5, 9.9e-5, 1.01e-4, 0.01, 0.13, 0.2, 0.3, 2.5, 17.0, -0.7}) {
    const long double want = oracle::qs_weight(x);
    EXPECT_NEAR(kernel_weight(Kernel::QuadraticSpectral, x), static_cast<double>(want), 2e-15) << x;
  }
}

TEST(KernelWeight, SeriesBranchIsContinuous) {
  const double below = kernel_weight(Kernel::QuadraticSpectral, 0.99999e-4);
  const double above = kernel_weight(Kernel::QuadraticSpectral, 1.00001e-4);
  EXPECT_NEAR(below, above, 1e-12);
  const double x_switch = 5.0 / (6.0 * 3.141592653589793);
  EXPECT_NEAR(kernel_weight(Kernel::QuadraticSpectral, std::nextafter(x_switch, 0.0)),
              kernel_weight(Kernel::QuadraticSpectral, std::nextafter(x_switch, 1.0)), 1e-15);
}

TEST(AndrewsBandwidth, PluginFormula) {
  const double alpha2 = 4 * 0.25 / std::pow(0.5, 4);
  EXPECT_NEAR(andrews_bandwidth_for(0.5, 100, Kernel::QuadraticSpectral),
              1.3221 * std::pow(alpha2 * 100, 0.2), 1e-12);
  EXPECT_NEAR(andrews_bandwidth_for(0.5, 100, Kernel::QuadraticSpectral),
              1.3221 * std::pow(1600.0, 0.2), 1e-12);
  EXPECT_NEAR(andrews_bandwidth_for(0.5, 100, Kernel::Parzen), 2.6614 * std::pow(alpha2 * 100, 0.2), 1e-12);
  const double alpha1 = 4 * 0.25 / (0.25 * 2.25);
  EXPECT_NEAR(andrews_bandwidth_for(0.5, 100, Kernel::Bartlett),
              1.1447 * std::pow(alpha1 * 100, 1.0 / 3.0), 1e-12);
}

TEST(AndrewsBandwidth, ZeroAutocorrelationHitsTheFloor) {
  EXPECT_EQ(andrews_bandwidth_for(0.0, 500, Kernel::QuadraticSpectral), kMinBandwidth);
  EXPECT_EQ(andrews_bandwidth_for(0.0, 500, Kernel::Bartlett), kMinBandwidth);
}

TEST(AndrewsBandwidth, ClampsPersistentSequences) {
  std::vector<double> ramp;
  for (int t = 0; t < 200; ++t) ramp.push_back(t + 0.01 * ((t * 7919) % 13));
  ASSERT_GT(ar1_coefficient(ramp), 0.97);
  EXPECT_DOUBLE_EQ(andrews_bandwidth(ramp, Kernel::QuadraticSpectral),
                   andrews_bandwidth_for(0.97, ramp.size(), Kernel::QuadraticSpectral));
}

TEST(AndrewsBandwidth, DegenerateSequenceIsAnError) {
  const std::vector<double> flat(10, 2.0);
  EXPECT_THROW(andrews_bandwidth(flat, Kernel::QuadraticSpectral), DegenerateInputError);
}

TEST(LongRunVariance, WhiteNoise) {
  const auto e = draw_innovations(GaussianLaw{1.0}, 100000, SeedSpec{51, 0, 0});
  EXPECT_NEAR(long_run_variance(e.values()), 1.0, 0.05);
}

TEST(LongRunVariance, Ar1) {
  const auto y = simulate(model_table(1, {{"rho", 0.5}}), 100000, SeedSpec{52, 0, 0});
  EXPECT_NEAR(long_run_variance(y.values()), 4.0, 0.4);
  LrvOptions pw;
  pw.prewhiten = true;
  EXPECT_NEAR(long_run_variance(y.values(), pw), 4.0, 0.4);
}

TEST(LongRunVariance, SpikeToyMatchesDoubleLoop) {
  const std::vector<double> y{1, 1, 1, 6, 1, 1, 1, 1};
  LrvOptions opt;
  opt.kernel = Kernel::Bartlett;
  opt.bandwidth = FixedBandwidth{3.0};
  const std::size_t m = y.size();
  const long double mu = oracle::mean(y);
  long double total = 0;
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      const long double w = oracle::bartlett_weight((static_cast<long double>(s) - t) / 3.0L);
      total += w * (y[s] - mu) * (y[t] - mu);
    }
  }
  const long double want = total / m * m / (m - 1);
  EXPECT_NEAR(long_run_variance(y, opt), static_cast<double>(want), 1e-13);
}

TEST(LongRunVariance, PrewhiteningRecolorsTheResidualEstimate) {
  const auto y = simulate(model_table(1, {{"rho", 0.6}}), 300, SeedSpec{53, 0, 0});
  const std::vector<double> v(y.begin(), y.end());
  LrvOptions opt;
  opt.kernel = Kernel::Bartlett;
  opt.bandwidth = FixedBandwidth{4.0};
  opt.prewhiten = true;
  opt.adjust = false;
  const auto got = long_run_variance_detailed(v, opt);

  const long double mu = oracle::mean(v);
  long double cross = 0, lagged = 0;
  for (std::size_t t = 1; t < v.size(); ++t) {
    cross += (v[t] - mu) * (v[t - 1] - mu);
    lagged += (v[t - 1] - mu) * (v[t - 1] - mu);
  }
  const long double rho = cross / lagged;
  EXPECT_NEAR(got.ar_coefficient, static_cast<double>(rho), 1e-12);
  std::vector<double> e;
  for (std::size_t t = 1; t < v.size(); ++t) e.push_back(static_cast<double>((v[t] - mu) - rho * (v[t - 1] - mu)));
  // Residuals are smoothed as they are (no second demeaning) and their
  // autocovariances keep the original length as divisor.
  long double resid = 0;
  for (std::size_t s = 0; s < e.size(); ++s) {
    for (std::size_t t = 0; t < e.size(); ++t) {
      resid += oracle::bartlett_weight((static_cast<long double>(s) - t) / 4.0L) * e[s] * e[t];
    }
  }
  resid /= v.size();
  EXPECT_NEAR(got.value, static_cast<double>(resid / ((1 - rho) * (1 - rho))), 1e-9 * got.value);
}

TEST(LongRunVariance, AdjustmentFactor) {
  const std::vector<double> y{0.3, -1.1, 2.5, 0.7, -0.4, 1.9, -2.2, 0.1, 0.8};
  LrvOptions raw;
  raw.adjust = false;
  LrvOptions adjusted;
  EXPECT_NEAR(long_run_variance(y, adjusted), long_run_variance(y, raw) * 9.0 / 8.0, 1e-14);
}

TEST(LongRunVariance, InputErrors) {
  EXPECT_THROW(long_run_variance(std::vector<double>{1, 2, 3}), InputError);
  EXPECT_THROW(long_run_variance(std::vector<double>(6, 4.0)), DegenerateInputError);
  LrvOptions bad;
  bad.bandwidth = FixedBandwidth{0.0};
  EXPECT_THROW(long_run_variance(std::vector<double>{1, 2, 3, 5}, bad), InputError);
}

TEST(LongRunVariance, LongSequenceTruncationIsNegligible) {
  // The QS tail is cut where the kernel envelope drops below 1e-7; compare
  // with the full two-sided sum on a moderately long sequence.
  const auto y = simulate(model_table(1, {{"rho", 0.3}}), 3000, SeedSpec{54, 0, 0});
  const std::vector<double> v(y.begin(), y.end());
  LrvOptions opt;
  opt.bandwidth = FixedBandwidth{2.0};
  opt.adjust = false;
  const long double want = oracle::two_sided_lrv(v, 2.0L, oracle::qs_weight);
  EXPECT_NEAR(long_run_variance(v, opt), static_cast<double>(want), 1e-6 * static_cast<double>(oracle::acvf(v, 0)));
}
