#include "acvfur/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acvfur/errors.hpp"
#include "acvfur/summation.hpp"

namespace acvfur {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("non-finite observation at position " + std::to_string(i + 1));
    }
  }
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw InputError("sample_mean: empty series");
  NeumaierSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

double sample_mean(const TimeSeries& series) { return sample_mean(series.values()); }

namespace detail {

double centered_cross_sum(std::span<const double> x, double mean, std::size_t lag,
                          std::size_t begin, std::size_t end) {
  NeumaierSum sum;
  for (std::size_t t = begin; t < end; ++t) {
    sum.add((x[t + lag] - mean) * (x[t] - mean));
  }
  return sum.value();
}

}  // namespace detail

namespace {

double acvf_span(std::span<const double> x, double mean, std::size_t lag) {
  const std::size_t n = x.size();
  return detail::centered_cross_sum(x, mean, lag, 0, n - lag) / static_cast<double>(n);
}

std::vector<double> first_difference(std::span<const double> x) {
  std::vector<double> out(x.size() - 1);
  for (std::size_t t = 1; t < x.size(); ++t) out[t - 1] = x[t] - x[t - 1];
  return out;
}

}  // namespace

double acvf(const TimeSeries& series, std::size_t lag) {
  const std::size_t n = series.size();
  if (lag >= n) {
    throw InputError("acvf: lag " + std::to_string(lag) + " requires more than " +
                     std::to_string(lag) + " observations, got " + std::to_string(n));
  }
  return acvf_span(series.values(), sample_mean(series), lag);
}

std::pair<double, double> acvf_split(const TimeSeries& series, std::size_t lag) {
  const std::size_t half = series.size() / 2;
  if (lag >= half) {
    throw InputError("acvf_split: lag " + std::to_string(lag) + " must be below N = " +
                     std::to_string(half));
  }
  const auto x = series.values();
  const double mean = sample_mean(series);
  const double scale = static_cast<double>(half);
  const double first = detail::centered_cross_sum(x, mean, lag, 0, half - lag) / scale;
  const double second =
      detail::centered_cross_sum(x, mean, lag, half, 2 * half - lag) / scale;
  return {first, second};
}

TimeSeries difference(const TimeSeries& series, int order) {
  if (order < 1) throw InputError("difference: order must be at least 1");
  if (series.size() <= static_cast<std::size_t>(order)) {
    throw InputError("difference: order " + std::to_string(order) + " needs more than " +
                     std::to_string(order) + " observations");
  }
  std::vector<double> current(series.begin(), series.end());
  for (int d = 0; d < order; ++d) current = first_difference(current);
  return TimeSeries(std::move(current));
}

double acvf_diff(const TimeSeries& series, std::size_t lag) {
  if (series.size() < 2 || lag >= series.size() - 1) {
    throw InputError("acvf_diff: lag " + std::to_string(lag) +
                     " must be below n - 1 = " +
                     std::to_string(series.size() < 1 ? 0 : series.size() - 1));
  }
  const auto x = first_difference(series.values());
  return acvf_span(x, sample_mean(x), lag);
}

AcvfSet compute_acvf_set(const TimeSeries& series, std::size_t max_lag) {
  const std::size_t n = series.size();
  const std::size_t half = n / 2;
  if (max_lag >= half) {
    throw InputError("compute_acvf_set: max lag " + std::to_string(max_lag) +
                     " must be below N = " + std::to_string(half));
  }
  const std::size_t diff_lag = std::max<std::size_t>(max_lag, 1);
  if (diff_lag >= n - 1) {
    throw InputError("compute_acvf_set: series too short for the differenced estimator");
  }

  const auto y = series.values();
  const double mean = sample_mean(y);
  const auto x = first_difference(y);
  const double x_mean = sample_mean(x);
  const double nd = static_cast<double>(n);
  const double halfd = static_cast<double>(half);

  AcvfSet set;
  set.half_length = half;
  set.full.resize(max_lag + 1);
  set.first_half.resize(max_lag + 1);
  set.second_half.resize(max_lag + 1);
  set.diff.resize(diff_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    set.full[k] = detail::centered_cross_sum(y, mean, k, 0, n - k) / nd;
    set.first_half[k] = detail::centered_cross_sum(y, mean, k, 0, half - k) / halfd;
    set.second_half[k] = detail::centered_cross_sum(y, mean, k, half, 2 * half - k) / halfd;
  }
  for (std::size_t k = 0; k <= diff_lag; ++k) set.diff[k] = acvf_span(x, x_mean, k);
  return set;
}

}  // namespace acvfur
