#include "acvfur/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "acvfur/errors.hpp"
#include "acvfur/kpss.hpp"

namespace acvfur {

namespace {

std::string shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

bool kpss_level_supported(double phi) {
  try {
    kpss_critical_value(phi);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

CellResult empty_result(const ExperimentCell& cell, const ExperimentPlan& plan) {
  CellResult r;
  r.cell = cell;
  r.reject.assign(plan.k0_values.size(), std::vector<std::size_t>(plan.c_kappas.size(), 0));
  r.event_t.assign(plan.c_kappas.size(), 0);
  return r;
}

void accumulate(CellResult& into, const CellResult& from) {
  into.replications += from.replications;
  for (std::size_t i = 0; i < into.reject.size(); ++i) {
    for (std::size_t j = 0; j < into.reject[i].size(); ++j) into.reject[i][j] += from.reject[i][j];
  }
  for (std::size_t j = 0; j < into.event_t.size(); ++j) into.event_t[j] += from.event_t[j];
  into.kpss_short_reject += from.kpss_short_reject;
  into.kpss_long_reject += from.kpss_long_reject;
  into.ratio_degenerate += from.ratio_degenerate;
  into.c_star_failure += from.c_star_failure;
  into.failed += from.failed;
}

void run_replication(const ModelSpec& spec, const ExperimentCell& cell,
                     const ExperimentPlan& plan, std::size_t rep, bool with_kpss,
                     CellResult& tally) {
  const SeedSpec seed{plan.master_seed, rep, cell.stream_index()};
  const TimeSeries y = simulate(spec, 2 * cell.half_length, seed);
  ++tally.replications;

  if (with_kpss) {
    tally.kpss_short_reject += kpss_test(y, plan.phi, KpssLagRule::Short).reject;
    tally.kpss_long_reject += kpss_test(y, plan.phi, KpssLagRule::Long).reject;
  }

  TestConfig config;
  config.phi = plan.phi;
  config.lrv_options = plan.lrv_options;
  const std::size_t max_k0 = *std::max_element(plan.k0_values.begin(), plan.k0_values.end());
  std::vector<TestOutcome> sweep;
  try {
    sweep = run_test_sweep(y, config, max_k0);
  } catch (const DegenerateScaleError&) {
    ++tally.failed;
    return;
  } catch (const DegenerateInputError&) {
    ++tally.failed;
    return;
  }

  const TestOutcome& first = sweep[plan.k0_values.front()];
  tally.ratio_degenerate += first.has(Diagnostic::RatioDenominatorDegenerate);
  tally.c_star_failure += first.has(Diagnostic::CStarDenominatorNonPositive);
  for (std::size_t j = 0; j < plan.c_kappas.size(); ++j) {
    tally.event_t[j] += with_c_kappa(first, plan.c_kappas[j]).event_t;
  }
  for (std::size_t i = 0; i < plan.k0_values.size(); ++i) {
    const TestOutcome& base = sweep[plan.k0_values[i]];
    for (std::size_t j = 0; j < plan.c_kappas.size(); ++j) {
      tally.reject[i][j] += with_c_kappa(base, plan.c_kappas[j]).reject;
    }
  }
}

}  // namespace

std::string ExperimentCell::key() const {
  std::string out = "model=" + std::to_string(model_id);
  for (const auto& [name, value] : params) out += " " + name + "=" + shortest(value);
  out += " law=" + format_law(law);
  out += " N=" + std::to_string(half_length);
  if (model_id >= 5) out += literal_ma ? " ma=literal" : " ma=shifted";
  return out;
}

std::uint64_t ExperimentCell::stream_index() const { return fnv1a(key()); }

double CellResult::percent(std::size_t count) const {
  if (replications == 0) return 0.0;
  return 100.0 * static_cast<double>(count) / static_cast<double>(replications);
}

void validate(const ExperimentPlan& plan) {
  if (plan.cells.empty()) throw InputError("experiment plan has no cells");
  if (plan.k0_values.empty()) throw InputError("experiment plan has no K0 values");
  if (plan.c_kappas.empty()) throw InputError("experiment plan has no c_kappa values");
  if (!(plan.phi > 0.0 && plan.phi < 1.0)) throw InputError("phi must lie in (0, 1)");
  for (double c : plan.c_kappas) {
    if (!std::isinf(c) && !(c > 1.0 / 6.0)) throw InputError("c_kappa must exceed 1/6");
  }
  for (const auto& cell : plan.cells) {
    if (cell.replications < 1) throw InputError("replications must be at least 1");
    for (std::size_t k0 : plan.k0_values) {
      if (2 * cell.half_length < std::max<std::size_t>(8, 2 * (k0 + 1))) {
        throw InputError("N = " + std::to_string(cell.half_length) + " is too small for K0 = " +
                         std::to_string(k0));
      }
    }
    model_table(cell.model_id, cell.params, cell.law, cell.literal_ma);
  }
}

std::size_t resolve_workers(std::optional<std::size_t> requested) {
  std::size_t workers = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("ACVFUR_MAX_WORKERS")) {
    std::size_t limit = 0;
    const std::string text(cap);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), limit);
    if (res.ec == std::errc() && limit > 0) workers = std::min(workers, limit);
  }
  return std::max<std::size_t>(workers, 1);
}

CellResult run_cell(const ExperimentCell& cell, const ExperimentPlan& plan) {
  const ModelSpec spec = model_table(cell.model_id, cell.params, cell.law, cell.literal_ma);
  const bool with_kpss = kpss_level_supported(plan.phi);
  const std::size_t workers = std::min(std::max<std::size_t>(plan.workers, 1), cell.replications);

  std::vector<CellResult> partials(workers, empty_result(cell, plan));
  std::atomic<std::size_t> next{0};
  auto work = [&](std::size_t w) {
    for (std::size_t rep = next++; rep < cell.replications; rep = next++) {
      run_replication(spec, cell, plan, rep, with_kpss, partials[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  CellResult total = empty_result(cell, plan);
  for (const auto& p : partials) accumulate(total, p);
  return total;
}

McReport run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  const auto start = std::chrono::steady_clock::now();
  McReport report;
  report.master_seed = plan.master_seed;
  report.workers = plan.workers;
  report.k0_values = plan.k0_values;
  report.c_kappas = plan.c_kappas;
  report.phi = plan.phi;
  report.lrv_options = plan.lrv_options;
  for (const auto& cell : plan.cells) report.cells.push_back(run_cell(cell, plan));
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_c_kappa(double c_kappa) {
  return std::isinf(c_kappa) ? std::string("inf") : shortest(c_kappa);
}

std::string format_law(const InnovationLaw& law) {
  if (const auto* g = std::get_if<GaussianLaw>(&law)) return "gaussian:" + shortest(g->variance);
  return "t:" + std::to_string(std::get<StudentTLaw>(law).dof);
}

InnovationLaw parse_law(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "gaussian" || kind == "normal") {
    double variance = 1.0;
    if (!arg.empty()) {
      const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), variance);
      if (res.ec != std::errc() || res.ptr != arg.data() + arg.size()) {
        throw InputError("bad Gaussian variance '" + arg + "'");
      }
    }
    InnovationLaw law = GaussianLaw{variance};
    validate(law);
    return law;
  }
  if (kind == "t") {
    int dof = 0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), dof);
    if (arg.empty() || res.ec != std::errc() || res.ptr != arg.data() + arg.size()) {
      throw InputError("t law needs integer degrees of freedom, e.g. t:5");
    }
    InnovationLaw law = StudentTLaw{dof};
    validate(law);
    return law;
  }
  throw InputError("unknown innovation law '" + text + "' (expected gaussian:VAR or t:DF)");
}

std::string format_params(const ModelParams& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ';';
    out += name + "=" + shortest(value);
  }
  return out;
}

std::string report_csv(const McReport& report) {
  std::ostringstream out;
  out << "# acvfur-mc-report v1\n";
  out << "model,params,law,N,ma,k0,test,reject_count,replications,reject_pct,event_t_pct,"
         "failed\n";
  char pct[32];
  for (const auto& cell : report.cells) {
    const std::string prefix = std::to_string(cell.cell.model_id) + "," +
                               format_params(cell.cell.params) + "," +
                               format_law(cell.cell.law) + "," +
                               std::to_string(cell.cell.half_length) + "," +
                               (cell.cell.literal_ma ? "literal" : "shifted") + ",";
    for (std::size_t i = 0; i < report.k0_values.size(); ++i) {
      for (std::size_t j = 0; j < report.c_kappas.size(); ++j) {
        const std::size_t count = cell.reject[i][j];
        std::snprintf(pct, sizeof pct, "%.4f", cell.percent(count));
        char ev[32];
        std::snprintf(ev, sizeof ev, "%.4f", cell.percent(cell.event_t[j]));
        out << prefix << report.k0_values[i] << ",acvf_c" << format_c_kappa(report.c_kappas[j])
            << "," << count << "," << cell.replications << "," << pct << "," << ev << ","
            << cell.failed << "\n";
      }
    }
    const std::pair<const char*, std::size_t> kpss[] = {{"kpss_l4", cell.kpss_short_reject},
                                                        {"kpss_l12", cell.kpss_long_reject}};
    if (kpss_level_supported(report.phi)) {
      for (const auto& [name, count] : kpss) {
        std::snprintf(pct, sizeof pct, "%.4f", cell.percent(count));
        out << prefix << "," << name << "," << count << "," << cell.replications << "," << pct
            << ",,\n";
      }
    }
  }
  return out.str();
}

std::string report_table(const McReport& report) {
  std::ostringstream out;
  char line[256];
  out << "seed " << report.master_seed << ", phi " << report.phi << ", prewhiten "
      << (report.lrv_options.prewhiten ? "on" : "off") << "\n";
  std::string header = "model  params                N     K0";
  for (double c : report.c_kappas) {
    std::snprintf(line, sizeof line, "  c=%-6s", format_c_kappa(c).c_str());
    header += line;
  }
  header += "  KPSS-l4  KPSS-l12  event_T";
  out << header << "\n";
  for (const auto& cell : report.cells) {
    for (std::size_t i = 0; i < report.k0_values.size(); ++i) {
      std::snprintf(line, sizeof line, "%-6d %-21s %-5zu %-3zu", cell.cell.model_id,
                    format_params(cell.cell.params).c_str(), cell.cell.half_length,
                    report.k0_values[i]);
      out << line;
      for (std::size_t j = 0; j < report.c_kappas.size(); ++j) {
        std::snprintf(line, sizeof line, "  %8.1f", cell.percent(cell.reject[i][j]));
        out << line;
      }
      // event_T at the first finite c_kappa
      std::size_t ev_index = 0;
      for (std::size_t j = 0; j < report.c_kappas.size(); ++j) {
        if (!std::isinf(report.c_kappas[j])) {
          ev_index = j;
          break;
        }
      }
      std::snprintf(line, sizeof line, "  %7.1f  %8.1f  %7.1f", cell.percent(cell.kpss_short_reject),
                    cell.percent(cell.kpss_long_reject), cell.percent(cell.event_t[ev_index]));
      out << line << "\n";
    }
    if (cell.failed > 0) out << "  (" << cell.failed << " replications with degenerate scale)\n";
  }
  std::snprintf(line, sizeof line, "runtime %.2f s on %zu worker(s)\n", report.runtime_seconds,
                report.workers);
  out << line;
  return out.str();
}

}  // namespace acvfur
