#pragma once

#include <stdexcept>
#include <string>

namespace acvfur {

/// Invalid arguments: bad lags, too-short series, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The data carry no variation where the estimator needs some
/// (constant series, constant differences).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The long-run variance behind the scale estimate collapsed to zero.
class DegenerateScaleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace acvfur
