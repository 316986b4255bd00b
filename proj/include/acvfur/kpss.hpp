#pragma once

#include <cstddef>

#include "acvfur/series.hpp"

namespace acvfur {

/// Lag truncation for the Bartlett long-run variance:
/// Short = floor(4 (n/100)^{1/4}), Long = floor(12 (n/100)^{1/4}).
enum class KpssLagRule { Short, Long };

struct KpssResult {
  double statistic = 0.0;
  std::size_t lags = 0;          // Bartlett truncation lag l (weights 1 - j/(l+1))
  double bandwidth_used = 0.0;   // l + 1
  double critical_value = 0.0;
  bool reject = false;
};

/// Asymptotic level-stationarity critical value; supported levels are
/// 0.10, 0.05, 0.025 and 0.01.
double kpss_critical_value(double phi);

std::size_t kpss_lags(std::size_t n, KpssLagRule rule);

/// Level-stationarity KPSS statistic n^-2 sum_t S_t^2 / sigma_L^2.
KpssResult kpss_test(const TimeSeries& series, double phi = 0.05,
                     KpssLagRule rule = KpssLagRule::Short);

/// Same test with an explicit truncation lag.
KpssResult kpss_test_with_lags(const TimeSeries& series, double phi, std::size_t lags);

}  // namespace acvfur
