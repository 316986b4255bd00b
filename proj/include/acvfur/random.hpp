#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "acvfur/series.hpp"

namespace acvfur {

struct GaussianLaw {
  double variance = 1.0;
};

/// Student t with an integer number of degrees of freedom.
struct StudentTLaw {
  int dof = 5;
};

using InnovationLaw = std::variant<GaussianLaw, StudentTLaw>;

void validate(const InnovationLaw& law);

/// Identifies one random stream. The stream for a given triple is the same
/// regardless of how replications are scheduled across threads.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;
  std::uint64_t cell_index = 0;
};

/// Per-replication generator: a 64-bit Mersenne Twister keyed by a
/// std::seed_seq over the words of a SeedSpec.
///
/// Normals come from the Marsaglia polar transform of uniforms built from
/// the top 53 bits of each draw, so streams are identical across standard
/// library implementations (std::normal_distribution is not).
class Rng {
 public:
  explicit Rng(const SeedSpec& seed);

  /// Uniform on the open interval (0, 1).
  double uniform();
  double standard_normal();
  double draw(const InnovationLaw& law);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// n i.i.d. draws from the law.
TimeSeries draw_innovations(const InnovationLaw& law, std::size_t count, const SeedSpec& seed);

}  // namespace acvfur
