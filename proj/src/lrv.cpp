#include "acvfur/lrv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "acvfur/errors.hpp"
#include "acvfur/series.hpp"
#include "acvfur/summation.hpp"

namespace acvfur {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kQsFrequency = 6.0 * std::numbers::pi / 5.0;

std::vector<double> demeaned(std::span<const double> x) {
  const double mean = sample_mean(x);
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] - mean;
  return u;
}

bool has_no_variation(std::span<const double> u) {
  double peak = 0.0;
  NeumaierSum ss;
  for (double v : u) {
    peak = std::max(peak, std::fabs(v));
    ss.add(v * v);
  }
  return peak == 0.0 || ss.value() <= 1e-28 * peak * peak * static_cast<double>(u.size());
}

// Largest lag whose weight can exceed kKernelWeightTolerance.
std::size_t lag_limit(Kernel kernel, double bandwidth, std::size_t length) {
  double support = 1.0;
  if (kernel == Kernel::QuadraticSpectral) {
    // |K(x)| <= 3 (1 + 1/z) / z^2 <= 6 / z^2 for z = 6 pi x / 5 >= 1.
    support = std::sqrt(6.0 / kKernelWeightTolerance) / kQsFrequency;
  }
  const double limit = std::ceil(support * bandwidth);
  if (!(limit < static_cast<double>(length))) return length == 0 ? 0 : length - 1;
  return static_cast<std::size_t>(limit);
}

double lag_product(std::span<const double> u, std::size_t lag) {
  NeumaierSum sum;
  for (std::size_t t = lag; t < u.size(); ++t) sum.add(u[t] * u[t - lag]);
  return sum.value();
}

}  // namespace

double kernel_weight(Kernel kernel, double x) {
  const double ax = std::fabs(x);
  switch (kernel) {
    case Kernel::QuadraticSpectral: {
      const double z = kQsFrequency * ax;
      if (z < 1.0) {
        // Taylor series of 3 (sin z / z - cos z) / z^2; the closed form
        // cancels badly for small z. Terms fall by at least z^2 / 20.
        const double z2 = z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 2; k < 12; ++k) {
          term *= -z2 * static_cast<double>(k) / (static_cast<double>(k - 1) * (2 * k) * (2 * k + 1));
          sum += term;
        }
        return sum;
      }
      return 3.0 / (z * z) * (std::sin(z) / z - std::cos(z));
    }
    case Kernel::Bartlett:
      return std::max(0.0, 1.0 - ax);
    case Kernel::Parzen:
      if (ax <= 0.5) return 1.0 - 6.0 * ax * ax + 6.0 * ax * ax * ax;
      if (ax <= 1.0) return 2.0 * std::pow(1.0 - ax, 3);
      return 0.0;
  }
  return 0.0;
}

double ar1_coefficient(std::span<const double> sequence) {
  if (sequence.size() < 2) throw InputError("ar1_coefficient: need at least 2 values");
  const auto u = demeaned(sequence);
  if (has_no_variation(u)) {
    throw DegenerateInputError("AR(1) fit on a sequence with zero variance");
  }
  NeumaierSum cross;
  NeumaierSum lagged;
  for (std::size_t t = 1; t < u.size(); ++t) {
    cross.add(u[t] * u[t - 1]);
    lagged.add(u[t - 1] * u[t - 1]);
  }
  if (!(lagged.value() > 0.0)) {
    throw DegenerateInputError("AR(1) fit: lagged values have zero variance");
  }
  return cross.value() / lagged.value();
}

double andrews_bandwidth_for(double rho, std::size_t length, Kernel kernel) {
  const double r = std::clamp(rho, -kArCoefficientClamp, kArCoefficientClamp);
  const double m = static_cast<double>(length);
  double bandwidth = 0.0;
  switch (kernel) {
    case Kernel::QuadraticSpectral:
    case Kernel::Parzen: {
      const double alpha2 = 4.0 * r * r / std::pow(1.0 - r, 4);
      const double constant = kernel == Kernel::Parzen ? 2.6614 : 1.3221;
      bandwidth = constant * std::pow(alpha2 * m, 1.0 / 5.0);
      break;
    }
    case Kernel::Bartlett: {
      const double alpha1 =
          4.0 * r * r / (std::pow(1.0 - r, 2) * std::pow(1.0 + r, 2));
      bandwidth = 1.1447 * std::pow(alpha1 * m, 1.0 / 3.0);
      break;
    }
  }
  return std::max(bandwidth, kMinBandwidth);
}

double andrews_bandwidth(std::span<const double> sequence, Kernel kernel) {
  if (sequence.size() < 4) throw InputError("andrews_bandwidth: need at least 4 values");
  return andrews_bandwidth_for(ar1_coefficient(sequence), sequence.size(), kernel);
}

LrvResult long_run_variance_detailed(std::span<const double> sequence,
                                     const LrvOptions& options) {
  const std::size_t m = sequence.size();
  if (m < 4) throw InputError("long_run_variance: need at least 4 values");
  if (const auto* fixed = std::get_if<FixedBandwidth>(&options.bandwidth)) {
    if (!(fixed->value > 0.0) || !std::isfinite(fixed->value)) {
      throw InputError("long_run_variance: fixed bandwidth must be positive");
    }
  }

  std::vector<double> u = demeaned(sequence);
  if (has_no_variation(u)) {
    throw DegenerateInputError("long_run_variance: sequence has zero variance");
  }

  LrvResult result;
  if (options.prewhiten) {
    const double fitted = ar1_coefficient(u);
    const double rho = std::clamp(fitted, -kArCoefficientClamp, kArCoefficientClamp);
    result.ar_clamped = rho != fitted;
    result.ar_coefficient = rho;
    std::vector<double> residuals(m - 1);
    for (std::size_t t = 1; t < m; ++t) residuals[t - 1] = u[t] - rho * u[t - 1];
    u = std::move(residuals);
  }

  const bool residuals_vanish = has_no_variation(u);
  result.bandwidth = std::visit(
      Overloaded{
          [](const FixedBandwidth& b) { return b.value; },
          [&](const AndrewsAr1Plugin&) {
            return residuals_vanish ? kMinBandwidth : andrews_bandwidth(u, options.kernel);
          },
      },
      options.bandwidth);

  double sum = 0.0;
  if (!residuals_vanish) {
    const std::size_t max_lag = lag_limit(options.kernel, result.bandwidth, u.size());
    NeumaierSum acc;
    acc.add(lag_product(u, 0));
    for (std::size_t j = 1; j <= max_lag; ++j) {
      const double w = kernel_weight(options.kernel, static_cast<double>(j) / result.bandwidth);
      if (w != 0.0) acc.add(2.0 * w * lag_product(u, j));
    }
    sum = acc.value() / static_cast<double>(m);
  }

  if (options.prewhiten) {
    const double gain = 1.0 - result.ar_coefficient;
    sum /= gain * gain;
  }
  if (options.adjust) sum *= static_cast<double>(m) / static_cast<double>(m - 1);

  result.raw = sum;
  result.floored = sum < 0.0;
  result.value = result.floored ? 0.0 : sum;
  return result;
}

double long_run_variance(std::span<const double> sequence, const LrvOptions& options) {
  return long_run_variance_detailed(sequence, options).value;
}

}  // namespace acvfur
