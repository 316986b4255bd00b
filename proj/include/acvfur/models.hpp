#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "acvfur/random.hpp"
#include "acvfur/series.hpp"

namespace acvfur {

inline constexpr std::size_t kDefaultBurnIn = 300;

/// Generative description of nabla^d Y_t = drift + Z_t with Z_t a stationary
/// ARMA process:
///
///   Z_t - ar[0] Z_{t-1} - ... = theta_0 e_t + theta_1 e_{t-1} + ...
///
/// The MA polynomial theta depends on `literal_ma_indexing`:
///   false: theta = (1, ma[0], ma[1], ...)          e.g. e_t + p1 e_{t-1} + p2 e_{t-2}
///   true:  theta = (1 + ma[0], ma[1], ma[2], ...)  e.g. e_t + p1 e_t + p2 e_{t-1}
/// The second form is how the integrated MA models (5-7) are written in the
/// simulation design; the first is the usual convention.
struct ModelSpec {
  std::vector<double> ar;
  std::vector<double> ma;
  int d = 0;
  InnovationLaw law = GaussianLaw{1.0};
  bool literal_ma_indexing = false;
  std::size_t burn_in = kDefaultBurnIn;
  double drift = 0.0;

  /// theta_0..theta_q as applied to e_t..e_{t-q}.
  std::vector<double> ma_polynomial() const;
};

void validate(const ModelSpec& spec);

/// True iff all roots of 1 - ar[0] z - ar[1] z^2 - ... lie outside the unit
/// circle (equivalently the companion matrix has spectral radius < 1).
bool is_stationary_ar(const std::vector<double>& ar);

/// n observations of Y_t. The ARMA recursion starts from a zero state and
/// the first burn_in values of Z are discarded; for d >= 1 the remaining Z
/// (plus drift) are cumulatively summed d times from zero.
TimeSeries simulate(const ModelSpec& spec, std::size_t n, const SeedSpec& seed);

using ModelParams = std::map<std::string, double>;

/// Canonical spec for the seven simulation models:
///   1: Y_t = rho Y_{t-1} + e_t                              params {rho}
///   2: Y_t = e_t + phi1 e_{t-1} + phi2 e_{t-2}               params {phi1, phi2}
///   3: (1 - rho1 L - rho2 L^2) Y_t = (1 + 0.5 L + 0.3 L^2) e_t  params {rho1, rho2}
///   4-6: as 1-3 for nabla Y_t (d = 1)
///   7: as 5 for nabla^2 Y_t (d = 2)
/// `literal_ma` selects the MA convention for models 5-7 (see ModelSpec).
ModelSpec model_table(int model_id, const ModelParams& params,
                      const InnovationLaw& law = GaussianLaw{1.0}, bool literal_ma = true);

/// Parses "rho=0.5" or "phi1=0.8,phi2=0.3".
ModelParams parse_model_params(const std::string& text);

}  // namespace acvfur
