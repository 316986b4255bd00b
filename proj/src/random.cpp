#include "acvfur/random.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "acvfur/errors.hpp"

namespace acvfur {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::seed_seq make_seed_seq(const SeedSpec& seed) {
  const std::array<std::uint32_t, 6> words = {
      static_cast<std::uint32_t>(seed.master_seed),
      static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.cell_index),
      static_cast<std::uint32_t>(seed.cell_index >> 32),
      static_cast<std::uint32_t>(seed.replication_index),
      static_cast<std::uint32_t>(seed.replication_index >> 32),
  };
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

void validate(const InnovationLaw& law) {
  std::visit(Overloaded{
                 [](const GaussianLaw& g) {
                   if (!(g.variance > 0.0) || !std::isfinite(g.variance)) {
                     throw InputError("Gaussian innovation variance must be positive");
                   }
                 },
                 [](const StudentTLaw& t) {
                   if (t.dof < 1) throw InputError("Student t degrees of freedom must be >= 1");
                 },
             },
             law);
}

Rng::Rng(const SeedSpec& seed) {
  auto seq = make_seed_seq(seed);
  engine_.seed(seq);
}

double Rng::uniform() {
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double Rng::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Rng::draw(const InnovationLaw& law) {
  return std::visit(Overloaded{
                        [this](const GaussianLaw& g) {
                          return std::sqrt(g.variance) * standard_normal();
                        },
                        [this](const StudentTLaw& t) {
                          const double z = standard_normal();
                          double chi2 = 0.0;
                          for (int i = 0; i < t.dof; ++i) {
                            const double w = standard_normal();
                            chi2 += w * w;
                          }
                          return z / std::sqrt(chi2 / t.dof);
                        },
                    },
                    law);
}

TimeSeries draw_innovations(const InnovationLaw& law, std::size_t count, const SeedSpec& seed) {
  validate(law);
  if (count < 1) throw InputError("draw_innovations: count must be at least 1");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.draw(law);
  return TimeSeries(std::move(out));
}

}  // namespace acvfur
