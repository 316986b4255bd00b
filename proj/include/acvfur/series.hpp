#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace acvfur {

/// Ordered, finite real observations Y_1..Y_n.
///
/// Construction rejects NaN and infinite values, so every estimator below
/// can assume finite input.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

/// Sample autocovariances needed by the test, through a common max lag.
struct AcvfSet {
  std::vector<double> full;         // gamma(k), divisor n
  std::vector<double> first_half;   // gamma_1(k), divisor N
  std::vector<double> second_half;  // gamma_2(k), divisor N
  std::vector<double> diff;         // gamma_x(k) of the first differences, divisor n-1
  std::size_t half_length = 0;      // N = floor(n/2)
};

double sample_mean(std::span<const double> values);
double sample_mean(const TimeSeries& series);

/// gamma(k) = n^-1 sum_{t=1}^{n-k} (Y_{t+k} - Ybar)(Y_t - Ybar).
double acvf(const TimeSeries& series, std::size_t lag);

/// (gamma_1(k), gamma_2(k)) over the halves [1, N] and [N+1, 2N], both
/// centred at the full-sample mean and divided by N. When n is odd, Y_n only
/// enters through the mean.
std::pair<double, double> acvf_split(const TimeSeries& series, std::size_t lag);

/// Order-d differencing; the result has n - d observations.
TimeSeries difference(const TimeSeries& series, int order);

/// Autocovariance of X_t = Y_t - Y_{t-1}, t = 2..n, with divisor n - 1.
double acvf_diff(const TimeSeries& series, std::size_t lag);

/// All four estimators for lags 0..max_lag. Requires max_lag < N. The
/// differenced estimator always covers lags 0 and 1 (the ratio statistic
/// needs both), i.e. lags 0..max(max_lag, 1).
AcvfSet compute_acvf_set(const TimeSeries& series, std::size_t max_lag);

namespace detail {

/// Compensated sum of (x[t+lag] - mean)(x[t] - mean) for t in [begin, end).
double centered_cross_sum(std::span<const double> x, double mean, std::size_t lag,
                          std::size_t begin, std::size_t end);

}  // namespace detail

}  // namespace acvfur
