#pragma once

namespace acvfur {

double normal_cdf(double x);

/// Inverse standard-normal CDF: Wichura's AS241 rational approximation
/// followed by one Newton step on erfc. Throws InputError unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace acvfur
