#include "acvfur/kpss.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "acvfur/errors.hpp"
#include "acvfur/lrv.hpp"
#include "acvfur/summation.hpp"

namespace acvfur {

double kpss_critical_value(double phi) {
  // Upper quantiles of int_0^1 V_0(t)^2 dt (Brownian bridge).
  struct Entry {
    double level;
    double value;
  };
  static constexpr Entry table[] = {{0.10, 0.347}, {0.05, 0.463}, {0.025, 0.574}, {0.01, 0.739}};
  for (const auto& e : table) {
    if (std::fabs(e.level - phi) < 1e-12) return e.value;
  }
  throw InputError("KPSS critical values exist only for levels 0.10, 0.05, 0.025 and 0.01");
}

std::size_t kpss_lags(std::size_t n, KpssLagRule rule) {
  const double base = rule == KpssLagRule::Short ? 4.0 : 12.0;
  return static_cast<std::size_t>(std::floor(base * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

KpssResult kpss_test_with_lags(const TimeSeries& series, double phi, std::size_t lags) {
  const std::size_t n = series.size();
  if (n < 8) throw InputError("kpss_test: need at least 8 observations");
  if (lags >= n) throw InputError("kpss_test: truncation lag must be below n");

  KpssResult result;
  result.critical_value = kpss_critical_value(phi);
  result.lags = lags;
  result.bandwidth_used = static_cast<double>(lags + 1);

  const double mean = sample_mean(series);
  NeumaierSum partial;
  NeumaierSum squares;
  for (double y : series) {
    partial.add(y - mean);
    const double s = partial.value();
    squares.add(s * s);
  }

  LrvOptions options;
  options.kernel = Kernel::Bartlett;
  options.bandwidth = FixedBandwidth{static_cast<double>(lags + 1)};
  options.prewhiten = false;
  options.adjust = false;
  const double sigma2 = long_run_variance(series.values(), options);
  if (!(sigma2 > 0.0)) throw DegenerateInputError("kpss_test: long-run variance is zero");

  const double nd = static_cast<double>(n);
  result.statistic = squares.value() / (nd * nd * sigma2);
  result.reject = result.statistic > result.critical_value;
  return result;
}

KpssResult kpss_test(const TimeSeries& series, double phi, KpssLagRule rule) {
  return kpss_test_with_lags(series, phi, kpss_lags(series.size(), rule));
}

}  // namespace acvfur
