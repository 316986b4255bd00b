#include "acvfur/models.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "acvfur/errors.hpp"

namespace acvfur {

std::vector<double> ModelSpec::ma_polynomial() const {
  if (literal_ma_indexing && !ma.empty()) {
    std::vector<double> theta(ma);
    theta[0] += 1.0;
    return theta;
  }
  std::vector<double> theta;
  theta.reserve(ma.size() + 1);
  theta.push_back(1.0);
  theta.insert(theta.end(), ma.begin(), ma.end());
  return theta;
}

bool is_stationary_ar(const std::vector<double>& ar) {
  // Step-down recursion: the polynomial is stable iff every reflection
  // coefficient has modulus below one.
  std::vector<double> phi(ar);
  while (!phi.empty()) {
    const std::size_t k = phi.size();
    const double kappa = phi[k - 1];
    if (!(std::fabs(kappa) < 1.0)) return false;
    const double denom = 1.0 - kappa * kappa;
    std::vector<double> lower(k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      lower[j] = (phi[j] + kappa * phi[k - 2 - j]) / denom;
    }
    phi = std::move(lower);
  }
  return true;
}

void validate(const ModelSpec& spec) {
  if (spec.d < 0 || spec.d > 2) throw InputError("integration order d must be 0, 1 or 2");
  for (double c : spec.ar) {
    if (!std::isfinite(c)) throw InputError("AR coefficients must be finite");
  }
  for (double c : spec.ma) {
    if (!std::isfinite(c)) throw InputError("MA coefficients must be finite");
  }
  if (!std::isfinite(spec.drift)) throw InputError("drift must be finite");
  if (!is_stationary_ar(spec.ar)) {
    throw InputError("AR coefficients of the driving process are not stationary");
  }
  validate(spec.law);
}

TimeSeries simulate(const ModelSpec& spec, std::size_t n, const SeedSpec& seed) {
  validate(spec);
  if (n < 2) throw InputError("simulate: need at least 2 observations");

  const std::vector<double> theta = spec.ma_polynomial();
  const std::size_t q = theta.size() - 1;
  const std::size_t p = spec.ar.size();
  const std::size_t steps = spec.burn_in + n;
  const TimeSeries eps = draw_innovations(spec.law, steps + q, seed);

  // z[t] for t = 0..steps-1 uses e at positions t+q, t+q-1, ..., t.
  std::vector<double> z(steps, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    double value = 0.0;
    for (std::size_t j = 0; j <= q; ++j) value += theta[j] * eps[t + q - j];
    for (std::size_t i = 0; i < p && i < t; ++i) value += spec.ar[i] * z[t - 1 - i];
    z[t] = value;
  }

  std::vector<double> y(z.begin() + static_cast<std::ptrdiff_t>(spec.burn_in), z.end());
  if (spec.d >= 1) {
    for (auto& v : y) v += spec.drift;
  }
  for (int level = 0; level < spec.d; ++level) {
    double acc = 0.0;
    for (auto& v : y) {
      acc += v;
      v = acc;
    }
  }
  return TimeSeries(std::move(y));
}

namespace {

double require(const ModelParams& params, const std::string& key, int model_id) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw InputError("model " + std::to_string(model_id) + " needs parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const ModelParams& params, const std::set<std::string>& allowed,
                    int model_id) {
  for (const auto& [key, value] : params) {
    if (!allowed.contains(key)) {
      throw InputError("model " + std::to_string(model_id) + " has no parameter '" + key +
                       "'");
    }
  }
}

}  // namespace

ModelSpec model_table(int model_id, const ModelParams& params, const InnovationLaw& law,
                      bool literal_ma) {
  ModelSpec spec;
  spec.law = law;
  switch (model_id) {
    case 1:
    case 4:
      reject_unknown(params, {"rho"}, model_id);
      spec.ar = {require(params, "rho", model_id)};
      break;
    case 2:
    case 5:
    case 7:
      reject_unknown(params, {"phi1", "phi2"}, model_id);
      spec.ma = {require(params, "phi1", model_id), require(params, "phi2", model_id)};
      break;
    case 3:
    case 6:
      reject_unknown(params, {"rho1", "rho2"}, model_id);
      spec.ar = {require(params, "rho1", model_id), require(params, "rho2", model_id)};
      spec.ma = {0.5, 0.3};
      break;
    default:
      throw InputError("unknown model id " + std::to_string(model_id) + " (expected 1..7)");
  }
  spec.d = model_id <= 3 ? 0 : (model_id == 7 ? 2 : 1);
  spec.literal_ma_indexing = literal_ma && (model_id == 5 || model_id == 6 || model_id == 7);
  validate(spec);
  return spec;
}

ModelParams parse_model_params(const std::string& text) {
  ModelParams params;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("malformed model parameter '" + item + "' (expected key=value)");
    }
    std::string key = item.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string raw = item.substr(eq + 1);
    raw.erase(0, raw.find_first_not_of(" \t"));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != raw.size()) {
      throw InputError("model parameter '" + key + "' is not a number: '" + raw + "'");
    }
    params[key] = value;
  }
  return params;
}

}  // namespace acvfur
