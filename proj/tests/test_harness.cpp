#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "acvfur/errors.hpp"
#include "acvfur/harness.hpp"
#include "acvfur/table1.hpp"

using namespace acvfur;

namespace {

ExperimentCell cell(int model, ModelParams params, std::size_t N, std::size_t reps) {
  ExperimentCell c;
  c.model_id = model;
  c.params = std::move(params);
  c.half_length = N;
  c.replications = reps;
  return c;
}

}  // namespace

TEST(Harness, ResultsDoNotDependOnWorkerCount) {
  ExperimentPlan plan;
  plan.master_seed = 5;
  plan.k0_values = {0, 2};
  plan.cells = {cell(1, {{"rho", 0.9}}, 40, 150), cell(4, {{"rho", 0.5}}, 40, 150),
                cell(5, {{"phi1", 0.8}, {"phi2", 0.3}}, 40, 150)};
  plan.workers = 1;
  const auto serial = report_csv(run_experiment(plan));
  plan.workers = 4;
  const auto parallel = report_csv(run_experiment(plan));
  EXPECT_EQ(serial, parallel);
}

TEST(Harness, AddingCellsLeavesExistingCellsUnchanged) {
  ExperimentPlan a;
  a.master_seed = 8;
  a.cells = {cell(1, {{"rho", 0.5}}, 40, 200)};
  ExperimentPlan b = a;
  b.cells.insert(b.cells.begin(), cell(4, {{"rho", -0.5}}, 70, 50));
  const auto ra = run_experiment(a);
  const auto rb = run_experiment(b);
  EXPECT_EQ(ra.cells[0].reject, rb.cells[1].reject);
  EXPECT_EQ(ra.cells[0].event_t, rb.cells[1].event_t);
  EXPECT_EQ(ra.cells[0].kpss_short_reject, rb.cells[1].kpss_short_reject);
}

TEST(Harness, MaConventionDoesNotChangeStreamsOfOtherModels) {
  auto literal = cell(1, {{"rho", 0.5}}, 40, 10);
  auto shifted = literal;
  shifted.literal_ma = false;
  EXPECT_EQ(literal.stream_index(), shifted.stream_index());
  auto m5 = cell(5, {{"phi1", 0.8}, {"phi2", 0.3}}, 40, 10);
  auto m5s = m5;
  m5s.literal_ma = false;
  EXPECT_NE(m5.stream_index(), m5s.stream_index());
}

TEST(Harness, CsvSchema) {
  ExperimentPlan plan;
  plan.master_seed = 2;
  plan.cells = {cell(1, {{"rho", 0.5}}, 40, 20)};
  const auto csv = report_csv(run_experiment(plan));
  std::istringstream in(csv);
  std::string first, header;
  std::getline(in, first);
  std::getline(in, header);
  EXPECT_EQ(first, "# acvfur-mc-report v1");
  EXPECT_EQ(header, "model,params,law,N,ma,k0,test,reject_count,replications,reject_pct,event_t_pct,failed");
  std::set<std::string> tests;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 11u) << line;
    tests.insert(cells[6]);
  }
  EXPECT_EQ(tests, (std::set<std::string>{"acvf_cinf", "acvf_c0.45", "acvf_c0.55", "acvf_c0.65",
                                          "kpss_l4", "kpss_l12"}));
  EXPECT_EQ(csv.find("runtime"), std::string::npos);
}

TEST(Harness, StudentTInnovations) {
  ExperimentPlan plan;
  plan.master_seed = 3;
  auto c = cell(1, {{"rho", 0.5}}, 40, 30);
  c.law = StudentTLaw{5};
  plan.cells = {c};
  const auto csv = report_csv(run_experiment(plan));
  EXPECT_NE(csv.find(",t:5,"), std::string::npos);
}

TEST(Harness, LawParsing) {
  EXPECT_EQ(format_law(parse_law("gaussian:2")), "gaussian:2");
  EXPECT_EQ(format_law(parse_law("t:5")), "t:5");
  EXPECT_EQ(format_law(parse_law("normal")), "gaussian:1");
  EXPECT_THROW(parse_law("t:2.5"), InputError);
  EXPECT_THROW(parse_law("cauchy"), InputError);
  EXPECT_THROW(parse_law("gaussian:-1"), InputError);
}

TEST(Harness, PlanValidation) {
  ExperimentPlan plan;
  EXPECT_THROW(run_experiment(plan), InputError);
  plan.cells = {cell(1, {{"rho", 0.5}}, 3, 10)};
  EXPECT_THROW(run_experiment(plan), InputError);
  plan.cells = {cell(1, {{"rho", 0.5}}, 40, 0)};
  EXPECT_THROW(run_experiment(plan), InputError);
}

TEST(Harness, WorkerCapFromEnvironment) {
  ::setenv("ACVFUR_MAX_WORKERS", "2", 1);
  EXPECT_EQ(resolve_workers(8), 2u);
  EXPECT_EQ(resolve_workers(1), 1u);
  ::unsetenv("ACVFUR_MAX_WORKERS");
  EXPECT_EQ(resolve_workers(3), 3u);
  EXPECT_GE(resolve_workers(std::nullopt), 1u);
}

TEST(Table1, ReferenceTableIsComplete) {
  const auto& table = table1_reference();
  ASSERT_EQ(table.size(), 63u);
  std::set<std::string> keys;
  for (const auto& e : table) {
    keys.insert(std::to_string(e.model_id) + format_params(e.params) + std::to_string(e.half_length));
    EXPECT_FALSE(e.provenance.empty());
    for (double v : {e.untruncated, e.c045, e.c055, e.c065, e.kpss}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 100.0);
    }
  }
  EXPECT_EQ(keys.size(), 63u);
}

TEST(Table1, SpotChecks) {
  auto find = [](const std::string& filter) {
    for (const auto& e : table1_reference()) {
      if (matches_filter(e, filter)) return e;
    }
    throw std::runtime_error("missing " + filter);
  };
  const auto a = find("model=1,rho=0.9,N=100");
  EXPECT_EQ(a.untruncated, 8.5);
  EXPECT_EQ(a.c045, 12.7);
  EXPECT_EQ(a.c055, 9.4);
  EXPECT_EQ(a.c065, 8.6);
  EXPECT_EQ(a.kpss, 49.2);
  const auto b = find("model=4,rho=0.5,N=40");
  EXPECT_EQ(b.c055, 88.4);
  const auto c = find("model=4,rho=0.5,N=100");
  EXPECT_EQ(c.untruncated, 11.3);
  EXPECT_EQ(c.c055, 95.5);
  const auto d = find("model=7,phi1=0.8,N=40");
  EXPECT_EQ(d.c055, 100.0);
}

TEST(Table1, Filters) {
  std::size_t model4 = 0, n100 = 0;
  for (const auto& e : table1_reference()) {
    model4 += matches_filter(e, "model=4");
    n100 += matches_filter(e, "N=100");
  }
  EXPECT_EQ(model4, 9u);
  EXPECT_EQ(n100, 21u);
  EXPECT_FALSE(matches_filter(table1_reference()[0], "colour=red"));
  EXPECT_THROW(matches_filter(table1_reference()[0], "model"), InputError);
}

TEST(Table1, Tolerance) {
  EXPECT_DOUBLE_EQ(table1_tolerance(0.0, 2000), 2.0);
  EXPECT_NEAR(table1_tolerance(50.0, 2000), 2.0 + 300.0 * std::sqrt(0.25 * 2.0 / 2000), 1e-12);
}

TEST(Table1, SmallReproduction) {
  Table1Options opt;
  opt.replications = 40;
  opt.filter = "model=1,rho=0.5";
  const auto cmp = reproduce_table1(opt);
  EXPECT_EQ(cmp.entries.size(), 3u);
  EXPECT_EQ(cmp.compared_values, 15u);
  const auto csv = table1_csv(cmp);
  EXPECT_EQ(csv.rfind("# acvfur-table1 v1\n", 0), 0u);
  opt.filter = "model=9";
  EXPECT_THROW(reproduce_table1(opt), InputError);
}
