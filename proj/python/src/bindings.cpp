#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acvfur/acvf_test.hpp"
#include "acvfur/cli.hpp"
#include "acvfur/errors.hpp"
#include "acvfur/harness.hpp"
#include "acvfur/kpss.hpp"
#include "acvfur/lrv.hpp"
#include "acvfur/models.hpp"
#include "acvfur/normal.hpp"
#include "acvfur/series.hpp"
#include "acvfur/table1.hpp"

namespace py = pybind11;
using namespace acvfur;

namespace {

TimeSeries to_series(const std::vector<double>& values) { return TimeSeries(values); }

py::array_t<double> to_array(const TimeSeries& series) {
  const auto v = series.values();
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

Kernel parse_kernel(const std::string& name) {
  if (name == "qs") return Kernel::QuadraticSpectral;
  if (name == "bartlett") return Kernel::Bartlett;
  if (name == "parzen") return Kernel::Parzen;
  throw InputError("kernel must be one of 'qs', 'bartlett', 'parzen'");
}

LrvOptions make_lrv_options(const std::string& kernel, std::optional<double> bandwidth, bool prewhiten,
                            bool adjust) {
  LrvOptions o;
  o.kernel = parse_kernel(kernel);
  if (bandwidth) o.bandwidth = FixedBandwidth{*bandwidth};
  o.prewhiten = prewhiten;
  o.adjust = adjust;
  return o;
}

py::dict outcome_dict(const TestOutcome& r) {
  py::dict d;
  d["n"] = r.n;
  d["N"] = r.half_length;
  d["k0"] = r.k0;
  d["c_kappa"] = r.c_kappa;
  d["phi"] = r.phi;
  d["statistic"] = r.statistic;
  d["first_half_sum"] = r.first_half_sum;
  d["b_hat"] = r.b_hat;
  d["z_quantile"] = r.z_quantile;
  d["cv_naive"] = r.cv_naive;
  d["kappa_n"] = r.kappa_n;
  d["cv"] = r.cv;
  d["ratio"] = r.ratio;
  d["lambda_hat"] = r.lambda_hat;
  d["rho_hat"] = r.rho_hat;
  d["sigma_s2"] = r.sigma_s2;
  d["sigma_l2"] = r.sigma_l2;
  d["c_star"] = r.c_star;
  d["threshold"] = r.threshold;
  d["event_t"] = r.event_t;
  d["reject"] = r.reject;
  d["naive_p_value"] = r.naive_p_value;
  py::list diags;
  for (auto diag : r.diagnostics) diags.append(std::string(to_string(diag)));
  d["diagnostics"] = diags;
  return d;
}

TestConfig make_config(std::size_t k0, double c_kappa, double phi, bool prewhiten) {
  TestConfig c;
  c.k0 = k0;
  c.c_kappa = c_kappa;
  c.phi = phi;
  c.lrv_options.prewhiten = prewhiten;
  validate(c);
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sample-autocovariance unit-root test, KPSS baseline and Monte Carlo harness";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  py::register_exception<DegenerateScaleError>(m, "DegenerateScaleError", PyExc_ValueError);

  m.def("sample_mean", [](const std::vector<double>& y) { return sample_mean(to_series(y)); }, py::arg("y"));
  m.def("acvf", [](const std::vector<double>& y, std::size_t lag) { return acvf(to_series(y), lag); },
        py::arg("y"), py::arg("lag"), "Sample autocovariance with divisor n.");
  m.def("acvf_split", [](const std::vector<double>& y, std::size_t lag) { return acvf_split(to_series(y), lag); },
        py::arg("y"), py::arg("lag"), "First- and second-half autocovariances (divisor N = n // 2).");
  m.def("acvf_diff", [](const std::vector<double>& y, std::size_t lag) { return acvf_diff(to_series(y), lag); },
        py::arg("y"), py::arg("lag"));
  m.def("difference",
        [](const std::vector<double>& y, int order) { return to_array(difference(to_series(y), order)); },
        py::arg("y"), py::arg("order") = 1);

  m.def("long_run_variance",
        [](const std::vector<double>& u, const std::string& kernel, std::optional<double> bandwidth,
           bool prewhiten, bool adjust) {
          const auto r = long_run_variance_detailed(u, make_lrv_options(kernel, bandwidth, prewhiten, adjust));
          py::dict d;
          d["value"] = r.value;
          d["raw"] = r.raw;
          d["bandwidth"] = r.bandwidth;
          d["ar_coefficient"] = r.ar_coefficient;
          d["floored"] = r.floored;
          d["ar_clamped"] = r.ar_clamped;
          return d;
        },
        py::arg("u"), py::arg("kernel") = "qs", py::arg("bandwidth") = py::none(),
        py::arg("prewhiten") = false, py::arg("adjust") = true,
        "Kernel long-run variance; bandwidth None selects the AR(1) plug-in rule.");

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));

  m.def("run_test",
        [](const std::vector<double>& y, std::size_t k0, double c_kappa, double phi, bool prewhiten) {
          return outcome_dict(run_test(to_series(y), make_config(k0, c_kappa, phi, prewhiten)));
        },
        py::arg("y"), py::arg("k0") = 0, py::arg("c_kappa") = kDefaultCKappa, py::arg("phi") = 0.05,
        py::arg("prewhiten") = false,
        "Runs the autocovariance unit-root test; c_kappa=float('inf') gives the untruncated test.");
  m.def("ratio_r", [](const std::vector<double>& y) { return ratio_r(to_series(y)); }, py::arg("y"));

  m.def("kpss_test",
        [](const std::vector<double>& y, double phi, const std::string& rule, std::optional<std::size_t> lags) {
          KpssResult r;
          if (lags) {
            r = kpss_test_with_lags(to_series(y), phi, *lags);
          } else if (rule == "short") {
            r = kpss_test(to_series(y), phi, KpssLagRule::Short);
          } else if (rule == "long") {
            r = kpss_test(to_series(y), phi, KpssLagRule::Long);
          } else {
            throw InputError("rule must be 'short' or 'long'");
          }
          py::dict d;
          d["statistic"] = r.statistic;
          d["lags"] = r.lags;
          d["bandwidth_used"] = r.bandwidth_used;
          d["critical_value"] = r.critical_value;
          d["reject"] = r.reject;
          return d;
        },
        py::arg("y"), py::arg("phi") = 0.05, py::arg("rule") = "short", py::arg("lags") = py::none());

  m.def("simulate",
        [](int model, const std::map<std::string, double>& params, std::size_t n, std::uint64_t seed,
           std::uint64_t replication, const std::string& law, bool literal_ma) {
          const auto spec = model_table(model, params, parse_law(law), literal_ma);
          return to_array(simulate(spec, n, SeedSpec{seed, replication, 0}));
        },
        py::arg("model"), py::arg("params"), py::arg("n"), py::arg("seed") = 1, py::arg("replication") = 0,
        py::arg("law") = "gaussian:1", py::arg("literal_ma") = true,
        "One path of simulation model 1-7, e.g. simulate(4, {'rho': 0.5}, 200).");

  m.def("reproduce_table1_csv",
        [](std::size_t reps, std::uint64_t seed, const std::string& filter, std::optional<std::size_t> workers,
           bool literal_ma) {
          Table1Options o;
          o.replications = reps;
          o.master_seed = seed;
          o.filter = filter;
          o.workers = resolve_workers(workers);
          o.literal_ma = literal_ma;
          py::gil_scoped_release release;
          return table1_csv(reproduce_table1(o));
        },
        py::arg("reps") = 2000, py::arg("seed") = 1, py::arg("filter") = "", py::arg("workers") = py::none(),
        py::arg("literal_ma") = true);

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "acvfur");
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
