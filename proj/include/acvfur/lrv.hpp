#pragma once

#include <span>
#include <variant>

namespace acvfur {

enum class Kernel { QuadraticSpectral, Bartlett, Parzen };

struct FixedBandwidth {
  double value = 1.0;
};

/// Andrews (1991) plug-in bandwidth from a fitted AR(1).
struct AndrewsAr1Plugin {};

using Bandwidth = std::variant<FixedBandwidth, AndrewsAr1Plugin>;

/// Defaults: QS kernel, AR(1) plug-in bandwidth, no prewhitening and the
/// m/(m-1) small-sample adjustment (the defaults of R's sandwich::lrvar).
struct LrvOptions {
  Kernel kernel = Kernel::QuadraticSpectral;
  Bandwidth bandwidth = AndrewsAr1Plugin{};
  bool prewhiten = false;
  bool adjust = true;
};

inline constexpr double kArCoefficientClamp = 0.97;
inline constexpr double kMinBandwidth = 0.5;
/// Lags whose kernel weight is guaranteed below this are dropped.
inline constexpr double kKernelWeightTolerance = 1e-7;

double kernel_weight(Kernel kernel, double x);

/// Lag-1 least-squares autoregression coefficient of the demeaned sequence,
/// sum x_t x_{t-1} / sum x_{t-1}^2 (unclamped).
double ar1_coefficient(std::span<const double> sequence);

/// The plug-in formula for a given AR(1) coefficient and length; the
/// coefficient is clamped to +-0.97 and the result floored at 0.5.
double andrews_bandwidth_for(double rho, std::size_t length, Kernel kernel);

/// Fits the AR(1) on `sequence` and applies andrews_bandwidth_for.
/// Throws DegenerateInputError for a zero-variance sequence.
double andrews_bandwidth(std::span<const double> sequence, Kernel kernel);

struct LrvResult {
  double value = 0.0;        // floored and adjusted estimate
  double raw = 0.0;          // before the floor at zero
  double bandwidth = 0.0;
  double ar_coefficient = 0.0;  // prewhitening coefficient actually used (0 when off)
  bool floored = false;
  bool ar_clamped = false;
};

/// Kernel estimate sum_{|j|<m} K(j/b) G_j with G_j = m^-1 sum_t u_t u_{t-|j|}
/// of the demeaned sequence u. With prewhitening, the kernel sum runs over
/// AR(1) residuals (still divided by m) and is recoloured by (1 - rho)^-2.
LrvResult long_run_variance_detailed(std::span<const double> sequence,
                                     const LrvOptions& options = {});

double long_run_variance(std::span<const double> sequence, const LrvOptions& options = {});

}  // namespace acvfur
