#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acvfur/acvf_test.hpp"
#include "acvfur/models.hpp"
#include "acvfur/random.hpp"

namespace acvfur {

/// One simulation setting: a model, its parameters and the half-length N
/// (series length n = 2N).
struct ExperimentCell {
  int model_id = 1;
  ModelParams params;
  InnovationLaw law = GaussianLaw{1.0};
  std::size_t half_length = 100;
  std::size_t replications = 2000;
  bool literal_ma = true;

  /// Canonical text such as "model=5 phi1=0.8 phi2=0.3 law=gaussian:1 N=100 ma=literal"
  /// (the MA convention only appears for models 5-7, where it matters).
  std::string key() const;
  /// Random-stream index derived from key(), so a cell's replications do not
  /// depend on which other cells share the plan.
  std::uint64_t stream_index() const;
};

struct ExperimentPlan {
  std::vector<ExperimentCell> cells;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
  std::vector<std::size_t> k0_values = {0};
  /// Default c_kappa sweep: untruncated, 0.45, 0.55, 0.65.
  std::vector<double> c_kappas = {kUntruncated, 0.45, 0.55, 0.65};
  double phi = 0.05;
  LrvOptions lrv_options{};
};

void validate(const ExperimentPlan& plan);

/// Integer tallies for one cell; percentages are derived on output.
struct CellResult {
  ExperimentCell cell;
  std::size_t replications = 0;
  /// reject[k0 index][c_kappa index]
  std::vector<std::vector<std::size_t>> reject;
  /// Replications where the truncation event held, per c_kappa index.
  std::vector<std::size_t> event_t;
  std::size_t kpss_short_reject = 0;
  std::size_t kpss_long_reject = 0;
  std::size_t ratio_degenerate = 0;
  std::size_t c_star_failure = 0;
  /// Replications where the test could not be formed (degenerate scale);
  /// they count as non-rejections.
  std::size_t failed = 0;

  double percent(std::size_t count) const;
};

struct McReport {
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  std::vector<std::size_t> k0_values;
  std::vector<double> c_kappas;
  double phi = 0.05;
  LrvOptions lrv_options{};
  std::vector<CellResult> cells;
  double runtime_seconds = 0.0;
};

/// Worker count: the request if given, else hardware concurrency; either is
/// capped by the ACVFUR_MAX_WORKERS environment variable when set.
std::size_t resolve_workers(std::optional<std::size_t> requested);

/// Runs every replication of every cell. Results depend only on the plan
/// (including master_seed), never on the worker count.
McReport run_experiment(const ExperimentPlan& plan);

CellResult run_cell(const ExperimentCell& cell, const ExperimentPlan& plan);

std::string format_c_kappa(double c_kappa);
std::string format_law(const InnovationLaw& law);
InnovationLaw parse_law(const std::string& text);
std::string format_params(const ModelParams& params);

/// Long-format CSV, one row per (cell, test). Contains no timing data.
std::string report_csv(const McReport& report);

/// Aligned text table for humans.
std::string report_table(const McReport& report);

}  // namespace acvfur
