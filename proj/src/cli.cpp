#include "acvfur/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "acvfur/acvf_test.hpp"
#include "acvfur/csv_input.hpp"
#include "acvfur/errors.hpp"
#include "acvfur/harness.hpp"
#include "acvfur/table1.hpp"

namespace acvfur {

namespace {

double parse_c_kappa(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kUntruncated;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw CLI::ValidationError("--ckappa", "not a number: " + text);
  if (!(value > 1.0 / 6.0)) throw CLI::ValidationError("--ckappa", "must exceed 1/6 or be 'inf'");
  return value;
}

const CLI::Validator kOpenUnitInterval(
    [](std::string& text) -> std::string {
      try {
        const double v = std::stod(text);
        if (v > 0.0 && v < 1.0) return {};
      } catch (const std::exception&) {
      }
      return "must lie strictly between 0 and 1";
    },
    "(0,1)");

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string diagnostics_text(const TestOutcome& o) {
  std::string out;
  for (auto d : o.diagnostics) {
    if (!out.empty()) out += ';';
    out += to_string(d);
  }
  return out;
}

void print_outcomes_text(const std::vector<TestOutcome>& outcomes, std::ostream& out) {
  const auto& first = outcomes.front();
  out << "n = " << first.n << ", N = " << first.half_length << ", phi = " << num(first.phi)
      << ", c_kappa = " << format_c_kappa(first.c_kappa) << "\n";
  out << "R = " << num(first.ratio) << ", C* = " << num(first.c_star)
      << ", C* N^(3/5) = " << num(first.threshold) << ", lambda_hat = " << num(first.lambda_hat)
      << ", rho_hat = " << num(first.rho_hat) << ", event_T = " << (first.event_t ? "yes" : "no")
      << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-3s %14s %14s %14s %10s %14s  %s\n", "K0", "T_n", "cv",
                "cv_naive", "kappa_n", "B_hat", "decision");
  out << line;
  for (const auto& o : outcomes) {
    std::snprintf(line, sizeof line, "%-3zu %14.6g %14.6g %14.6g %10.6g %14.6g  %s\n", o.k0,
                  o.statistic, o.cv, o.cv_naive, o.kappa_n, o.b_hat,
                  o.reject ? "REJECT" : "FAIL-TO-REJECT");
    out << line;
  }
  const auto diag = diagnostics_text(first);
  if (!diag.empty()) out << "diagnostics: " << diag << "\n";
}

void print_outcomes_csv(const std::vector<TestOutcome>& outcomes, std::ostream& out) {
  out << "# acvfur-test v1\n";
  out << "k0,n,N,phi,c_kappa,statistic,cv,cv_naive,kappa_n,event_t,ratio,c_star,threshold,"
         "lambda_hat,rho_hat,sigma_s2,sigma_l2,b_hat,z_quantile,first_half_sum,naive_p_value,"
         "decision,diagnostics\n";
  for (const auto& o : outcomes) {
    out << o.k0 << "," << o.n << "," << o.half_length << "," << num(o.phi) << ","
        << format_c_kappa(o.c_kappa) << "," << num(o.statistic) << "," << num(o.cv) << ","
        << num(o.cv_naive) << "," << num(o.kappa_n) << "," << (o.event_t ? 1 : 0) << ","
        << num(o.ratio) << "," << num(o.c_star) << "," << num(o.threshold) << ","
        << num(o.lambda_hat) << "," << num(o.rho_hat) << "," << num(o.sigma_s2) << ","
        << num(o.sigma_l2) << "," << num(o.b_hat) << "," << num(o.z_quantile) << ","
        << num(o.first_half_sum) << "," << num(o.naive_p_value) << ","
        << (o.reject ? "REJECT" : "FAIL-TO-REJECT") << "," << diagnostics_text(o) << "\n";
  }
}

struct CommonLrvFlags {
  bool prewhiten = false;
  bool no_prewhiten = false;

  void add_to(CLI::App* cmd) {
    cmd->add_flag("--prewhiten", prewhiten, "AR(1)-prewhiten before kernel smoothing");
    cmd->add_flag("--no-prewhiten", no_prewhiten, "Disable prewhitening (the default)");
  }

  LrvOptions options() const {
    LrvOptions o;
    o.prewhiten = prewhiten && !no_prewhiten;
    return o;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample-autocovariance unit-root test and Monte Carlo harness", "acvfur"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with a [subcommand] section of option=value lines; flags override it");

  // test
  auto* test_cmd = app.add_subcommand("test", "Run the test on one column of a CSV file");
  std::string input;
  std::string column;
  double phi = 0.05;
  std::optional<std::size_t> k0;
  std::string c_kappa_text = "0.55";
  bool csv = false;
  CommonLrvFlags test_lrv;
  test_cmd->add_option("--input", input, "CSV file")->required()->check(CLI::ExistingFile);
  test_cmd->add_option("--column", column, "Column name or 1-based index");
  test_cmd->add_option("--phi", phi, "Nominal level")->check(kOpenUnitInterval)->capture_default_str();
  test_cmd->add_option("--k0", k0, "Single max lag K0 (default: report K0 = 0..4)");
  test_cmd->add_option("--ckappa", c_kappa_text, "c_kappa > 1/6, or 'inf'")->capture_default_str();
  test_cmd->add_flag("--csv", csv, "Machine-readable CSV output");
  test_lrv.add_to(test_cmd);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo rejection rates for one model");
  int model = 1;
  std::string params_text;
  std::size_t half_length = 100;
  std::size_t reps = 2000;
  std::uint64_t seed = 1;
  bool sweep_ckappa = false;
  std::string law_text = "gaussian:1";
  std::vector<std::size_t> k0_list;
  std::optional<std::size_t> workers;
  std::string ma_convention = "literal";
  bool sim_csv = false;
  double sim_phi = 0.05;
  std::string sim_c_kappa = "0.55";
  CommonLrvFlags sim_lrv;
  sim_cmd->add_option("--model", model, "Model id 1..7")->required()->check(CLI::Range(1, 7));
  sim_cmd->add_option("--params", params_text, "Model parameters, e.g. rho=0.5 or phi1=0.8,phi2=0.3")
      ->required();
  sim_cmd->add_option("--N", half_length, "Half-length N (series length 2N)")->capture_default_str();
  sim_cmd->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  sim_cmd->add_flag("--sweep-ckappa", sweep_ckappa, "Report c_kappa = inf, 0.45, 0.55, 0.65");
  sim_cmd->add_option("--ckappa", sim_c_kappa, "c_kappa when not sweeping")->capture_default_str();
  sim_cmd->add_option("--law", law_text, "gaussian:VAR or t:DF")->capture_default_str();
  sim_cmd->add_option("--k0", k0_list, "K0 values (default 0)")->delimiter(',');
  sim_cmd->add_option("--phi", sim_phi, "Nominal level")->check(kOpenUnitInterval)->capture_default_str();
  sim_cmd->add_option("--workers", workers, "Worker threads (default: all cores)");
  sim_cmd->add_option("--ma", ma_convention, "MA indexing for models 5-7: literal or shifted")
      ->check(CLI::IsMember({"literal", "shifted"}))
      ->capture_default_str();
  sim_cmd->add_flag("--csv", sim_csv, "CSV output");
  sim_lrv.add_to(sim_cmd);

  // reproduce-table1
  auto* rep_cmd = app.add_subcommand("reproduce-table1", "Reproduce the K0 = 0 simulation table");
  std::size_t rep_reps = 2000;
  std::uint64_t rep_seed = 1;
  std::string filter;
  std::optional<std::size_t> rep_workers;
  bool rep_csv = false;
  std::string rep_ma = "literal";
  CommonLrvFlags rep_lrv;
  rep_cmd->add_option("--reps", rep_reps, "Replications per cell")->check(CLI::PositiveNumber)->capture_default_str();
  rep_cmd->add_option("--seed", rep_seed, "Master seed")->capture_default_str();
  rep_cmd->add_option("--filter", filter, "e.g. model=1 or model=4,N=100");
  rep_cmd->add_option("--workers", rep_workers, "Worker threads (default: all cores)");
  rep_cmd->add_option("--ma", rep_ma, "MA indexing for models 5-7: literal or shifted")
      ->check(CLI::IsMember({"literal", "shifted"}))
      ->capture_default_str();
  rep_cmd->add_flag("--csv", rep_csv, "CSV output");
  rep_lrv.add_to(rep_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*test_cmd) {
      double c_kappa = 0.0;
      try {
        c_kappa = parse_c_kappa(c_kappa_text);
      } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
      }
      const TimeSeries series = ingest_csv(input, column);
      TestConfig config;
      config.phi = phi;
      config.c_kappa = c_kappa;
      config.lrv_options = test_lrv.options();
      std::vector<TestOutcome> outcomes;
      if (k0) {
        config.k0 = *k0;
        outcomes.push_back(run_test(series, config));
      } else {
        outcomes = run_test_sweep(series, config, kDefaultMaxK0);
      }
      if (csv) {
        print_outcomes_csv(outcomes, out);
      } else {
        print_outcomes_text(outcomes, out);
      }
      return 0;
    }

    if (*sim_cmd) {
      ExperimentPlan plan;
      plan.master_seed = seed;
      plan.workers = resolve_workers(workers);
      plan.phi = sim_phi;
      plan.lrv_options = sim_lrv.options();
      if (!k0_list.empty()) plan.k0_values = k0_list;
      if (!sweep_ckappa) {
        try {
          plan.c_kappas = {parse_c_kappa(sim_c_kappa)};
        } catch (const CLI::ValidationError& e) {
          err << e.what() << "\n";
          return 2;
        }
      }
      ExperimentCell cell;
      cell.model_id = model;
      cell.params = parse_model_params(params_text);
      cell.law = parse_law(law_text);
      cell.half_length = half_length;
      cell.replications = reps;
      cell.literal_ma = ma_convention == "literal";
      plan.cells.push_back(cell);
      const McReport report = run_experiment(plan);
      out << (sim_csv ? report_csv(report) : report_table(report));
      return 0;
    }

    if (*rep_cmd) {
      Table1Options options;
      options.replications = rep_reps;
      options.master_seed = rep_seed;
      options.workers = resolve_workers(rep_workers);
      options.filter = filter;
      options.literal_ma = rep_ma == "literal";
      options.lrv_options = rep_lrv.options();
      const auto cmp = reproduce_table1(options);
      out << (rep_csv ? table1_csv(cmp) : table1_text(cmp));
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace acvfur
