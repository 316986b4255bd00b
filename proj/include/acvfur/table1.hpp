#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "acvfur/harness.hpp"

namespace acvfur {

/// Published rejection percentages for one cell of the K0 = 0, unit
/// innovation-variance simulation table.
struct Table1Entry {
  int model_id;
  ModelParams params;
  std::size_t half_length;
  double untruncated;
  double c045;
  double c055;
  double c065;
  double kpss;
  /// Block/row/column position in the table, e.g. "Model 1 block, rho=0.5, N=40".
  std::string provenance;
};

const std::vector<Table1Entry>& table1_reference();

/// Filter expressions: "model=1", "N=100", "model=4,N=40" (all terms must match).
bool matches_filter(const Table1Entry& entry, const std::string& filter);

struct Table1Comparison {
  McReport report;
  std::vector<const Table1Entry*> entries;  // parallel to report.cells
  double max_abs_deviation = 0.0;
  double mean_abs_deviation = 0.0;
  std::size_t flagged_values = 0;
  std::size_t compared_values = 0;
};

/// Allowed |published - reproduced| for a published percentage p: 2 pp plus three
/// Monte Carlo standard errors of the difference (the published table used 2000 reps).
double table1_tolerance(double published_percent, std::size_t replications);

struct Table1Options {
  std::size_t replications = 2000;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
  std::string filter;
  bool literal_ma = true;
  LrvOptions lrv_options{};
};

Table1Comparison reproduce_table1(const Table1Options& options);

/// Wide CSV: reproduced and published percentages side by side.
std::string table1_csv(const Table1Comparison& comparison);
std::string table1_text(const Table1Comparison& comparison);

}  // namespace acvfur
