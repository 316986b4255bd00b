#include "acvfur/table1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "acvfur/errors.hpp"

namespace acvfur {

namespace {

struct Row {
  std::size_t n;
  double untruncated, c045, c055, c065, kpss;
};

void add_block(std::vector<Table1Entry>& out, int model, ModelParams params,
               const std::string& label, std::initializer_list<Row> rows) {
  for (const auto& r : rows) {
    out.push_back(Table1Entry{model, params, r.n, r.untruncated, r.c045, r.c055, r.c065, r.kpss,
                              "Model " + std::to_string(model) + " block, " + label +
                                  ", N=" + std::to_string(r.n)});
  }
}

std::vector<Table1Entry> build_reference() {
  std::vector<Table1Entry> t;
  // Columns: c=inf, 0.45, 0.55, 0.65, KPSS.
  add_block(t, 1, {{"rho", 0.5}}, "rho=0.5",
            {{40, 6.0, 6.0, 6.0, 6.0, 10.4}, {70, 6.9, 6.9, 6.9, 6.9, 10.1},
             {100, 6.1, 6.1, 6.1, 6.1, 10.2}});
  add_block(t, 1, {{"rho", 0.9}}, "rho=0.9",
            {{40, 7.2, 41.9, 30.0, 20.3, 51.2}, {70, 7.8, 23.7, 14.6, 10.4, 46.7},
             {100, 8.5, 12.7, 9.4, 8.6, 49.2}});
  add_block(t, 1, {{"rho", -0.5}}, "rho=-0.5",
            {{40, 7.4, 7.4, 7.4, 7.4, 1.8}, {70, 6.9, 6.9, 6.9, 6.9, 2.5},
             {100, 6.4, 6.4, 6.4, 6.4, 1.8}});

  add_block(t, 2, {{"phi1", 0.8}, {"phi2", 0.3}}, "(phi1,phi2)=(0.8,0.3)",
            {{40, 6.2, 6.2, 6.2, 6.2, 7.6}, {70, 6.4, 6.4, 6.4, 6.4, 6.2},
             {100, 7.2, 7.2, 7.2, 7.2, 7.0}});
  add_block(t, 2, {{"phi1", 0.9}, {"phi2", 0.5}}, "(phi1,phi2)=(0.9,0.5)",
            {{40, 6.7, 6.7, 6.7, 6.7, 8.5}, {70, 6.5, 6.5, 6.5, 6.5, 8.1},
             {100, 5.6, 5.6, 5.6, 5.6, 7.4}});
  add_block(t, 2, {{"phi1", 0.95}, {"phi2", 0.9}}, "(phi1,phi2)=(0.95,0.9)",
            {{40, 7.2, 7.2, 7.2, 7.2, 9.0}, {70, 7.1, 7.1, 7.1, 7.1, 7.3},
             {100, 5.5, 5.5, 5.5, 5.5, 8.1}});

  add_block(t, 3, {{"rho1", 0.4}, {"rho2", 0.2}}, "(rho1,rho2)=(0.4,0.2)",
            {{40, 7.2, 8.2, 7.4, 7.3, 22.5}, {70, 7.7, 7.7, 7.7, 7.7, 17.3},
             {100, 7.2, 7.2, 7.2, 7.2, 18.0}});
  add_block(t, 3, {{"rho1", 0.5}, {"rho2", 0.1}}, "(rho1,rho2)=(0.5,0.1)",
            {{40, 8.5, 8.9, 8.5, 8.5, 19.6}, {70, 8.0, 8.0, 8.0, 8.0, 16.6},
             {100, 6.3, 6.3, 6.3, 6.3, 17.4}});
  add_block(t, 3, {{"rho1", 0.6}, {"rho2", 0.1}}, "(rho1,rho2)=(0.6,0.1)",
            {{40, 8.5, 12.7, 9.6, 8.7, 26.2}, {70, 7.3, 7.3, 7.3, 7.3, 22.4},
             {100, 7.6, 7.6, 7.6, 7.6, 20.3}});

  add_block(t, 4, {{"rho", 0.5}}, "rho=0.5",
            {{40, 11.7, 94.2, 88.4, 84.0, 84.2}, {70, 11.7, 96.5, 92.9, 88.4, 90.9},
             {100, 11.3, 98.0, 95.5, 92.2, 95.5}});
  add_block(t, 4, {{"rho", 0.9}}, "rho=0.9",
            {{40, 13.1, 99.2, 97.3, 94.6, 91.1}, {70, 14.8, 99.8, 99.1, 97.9, 95.3},
             {100, 16.4, 99.9, 99.5, 99.1, 97.2}});
  add_block(t, 4, {{"rho", -0.5}}, "rho=-0.5",
            {{40, 5.6, 82.2, 75.1, 67.6, 81.5}, {70, 6.3, 92.1, 86.1, 80.0, 90.1},
             {100, 5.8, 94.2, 89.5, 85.2, 94.5}});

  add_block(t, 5, {{"phi1", 0.8}, {"phi2", 0.3}}, "(phi1,phi2)=(0.8,0.3)",
            {{40, 11.8, 94.3, 88.8, 82.3, 82.0}, {70, 11.8, 96.6, 92.7, 88.3, 90.1},
             {100, 12.1, 98.4, 95.4, 91.8, 95.3}});
  add_block(t, 5, {{"phi1", 0.9}, {"phi2", 0.5}}, "(phi1,phi2)=(0.9,0.5)",
            {{40, 11.8, 95.3, 90.0, 84.2, 83.5}, {70, 12.2, 97.2, 93.8, 89.8, 89.2},
             {100, 11.6, 98.6, 96.4, 92.7, 94.8}});
  add_block(t, 5, {{"phi1", 0.95}, {"phi2", 0.9}}, "(phi1,phi2)=(0.95,0.9)",
            {{40, 13.1, 95.0, 90.0, 83.9, 83.0}, {70, 11.6, 97.3, 93.8, 89.7, 90.2},
             {100, 13.7, 99.0, 96.4, 92.3, 95.2}});

  add_block(t, 6, {{"rho1", 0.4}, {"rho2", 0.2}}, "(rho1,rho2)=(0.4,0.2)",
            {{40, 14.8, 98.0, 95.2, 90.6, 85.9}, {70, 15.4, 99.1, 97.0, 93.8, 92.0},
             {100, 16.6, 99.6, 98.8, 96.5, 96.5}});
  add_block(t, 6, {{"rho1", 0.5}, {"rho2", 0.1}}, "(rho1,rho2)=(0.5,0.1)",
            {{40, 14.2, 99.1, 95.9, 91.3, 84.7}, {70, 14.8, 99.4, 97.2, 94.0, 91.2},
             {100, 15.0, 99.6, 98.5, 96.2, 95.5}});
  add_block(t, 6, {{"rho1", 0.6}, {"rho2", 0.1}}, "(rho1,rho2)=(0.6,0.1)",
            {{40, 14.5, 99.2, 97.1, 93.3, 87.2}, {70, 15.7, 99.7, 98.5, 96.2, 93.5},
             {100, 16.4, 99.8, 99.1, 97.7, 95.7}});

  add_block(t, 7, {{"phi1", 0.8}, {"phi2", 0.3}}, "(phi1,phi2)=(0.8,0.3)",
            {{40, 6.7, 100.0, 100.0, 99.9, 98.5}, {70, 6.3, 100.0, 100.0, 100.0, 99.7},
             {100, 7.0, 100.0, 100.0, 100.0, 99.8}});
  add_block(t, 7, {{"phi1", 0.9}, {"phi2", 0.5}}, "(phi1,phi2)=(0.9,0.5)",
            {{40, 7.0, 100.0, 100.0, 100.0, 98.4}, {70, 5.5, 100.0, 100.0, 100.0, 99.5},
             {100, 5.9, 100.0, 100.0, 100.0, 99.9}});
  add_block(t, 7, {{"phi1", 0.95}, {"phi2", 0.9}}, "(phi1,phi2)=(0.95,0.9)",
            {{40, 8.0, 100.0, 100.0, 100.0, 98.5}, {70, 7.3, 100.0, 100.0, 100.0, 99.2},
             {100, 6.1, 100.0, 100.0, 100.0, 99.9}});
  return t;
}

bool term_matches(const Table1Entry& e, const std::string& term) {
  const auto eq = term.find('=');
  if (eq == std::string::npos) throw InputError("filter term '" + term + "' lacks '='");
  const std::string key = term.substr(0, eq);
  const std::string value = term.substr(eq + 1);
  if (key == "model") return std::to_string(e.model_id) == value;
  if (key == "N") return std::to_string(e.half_length) == value;
  const auto it = e.params.find(key);
  if (it == e.params.end()) return false;
  try {
    return std::stod(value) == it->second;
  } catch (const std::exception&) {
    throw InputError("filter value '" + value + "' is not a number");
  }
}

std::string pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

}  // namespace

const std::vector<Table1Entry>& table1_reference() {
  static const std::vector<Table1Entry> table = build_reference();
  return table;
}

bool matches_filter(const Table1Entry& entry, const std::string& filter) {
  std::stringstream stream(filter);
  std::string term;
  while (std::getline(stream, term, ',')) {
    if (term.empty()) continue;
    if (!term_matches(entry, term)) return false;
  }
  return true;
}

double table1_tolerance(double published_percent, std::size_t replications) {
  const double p = std::clamp(published_percent / 100.0, 0.0, 1.0);
  const double se = std::sqrt(p * (1.0 - p) * (1.0 / static_cast<double>(replications) + 1.0 / 2000.0));
  return 2.0 + 3.0 * 100.0 * se;
}

Table1Comparison reproduce_table1(const Table1Options& options) {
  ExperimentPlan plan;
  plan.master_seed = options.master_seed;
  plan.workers = options.workers;
  plan.k0_values = {0};
  plan.c_kappas = {kUntruncated, 0.45, 0.55, 0.65};
  plan.phi = 0.05;
  plan.lrv_options = options.lrv_options;

  Table1Comparison cmp;
  for (const auto& entry : table1_reference()) {
    if (!matches_filter(entry, options.filter)) continue;
    ExperimentCell cell;
    cell.model_id = entry.model_id;
    cell.params = entry.params;
    cell.half_length = entry.half_length;
    cell.replications = options.replications;
    cell.literal_ma = options.literal_ma;
    plan.cells.push_back(cell);
    cmp.entries.push_back(&entry);
  }
  if (plan.cells.empty()) throw InputError("filter '" + options.filter + "' matches no cell");

  cmp.report = run_experiment(plan);
  double total = 0.0;
  for (std::size_t i = 0; i < cmp.entries.size(); ++i) {
    const auto& e = *cmp.entries[i];
    const auto& c = cmp.report.cells[i];
    const double published[] = {e.untruncated, e.c045, e.c055, e.c065, e.kpss};
    const double ours[] = {c.percent(c.reject[0][0]), c.percent(c.reject[0][1]),
                           c.percent(c.reject[0][2]), c.percent(c.reject[0][3]),
                           c.percent(c.kpss_short_reject)};
    for (std::size_t j = 0; j < 5; ++j) {
      const double dev = std::fabs(published[j] - ours[j]);
      total += dev;
      cmp.max_abs_deviation = std::max(cmp.max_abs_deviation, dev);
      cmp.flagged_values += dev > table1_tolerance(published[j], c.replications);
      ++cmp.compared_values;
    }
  }
  cmp.mean_abs_deviation = total / static_cast<double>(cmp.compared_values);
  return cmp;
}

std::string table1_csv(const Table1Comparison& cmp) {
  std::ostringstream out;
  out << "# acvfur-table1 v1\n";
  out << "model,params,N,replications,ma,"
         "ours_cinf,ours_c0.45,ours_c0.55,ours_c0.65,ours_kpss_l4,ours_kpss_l12,"
         "published_cinf,published_c0.45,published_c0.55,published_c0.65,published_kpss,"
         "event_t_pct_c0.55,failed,max_abs_dev,flagged\n";
  for (std::size_t i = 0; i < cmp.entries.size(); ++i) {
    const auto& e = *cmp.entries[i];
    const auto& c = cmp.report.cells[i];
    const double published[] = {e.untruncated, e.c045, e.c055, e.c065, e.kpss};
    const double ours[] = {c.percent(c.reject[0][0]), c.percent(c.reject[0][1]),
                           c.percent(c.reject[0][2]), c.percent(c.reject[0][3]),
                           c.percent(c.kpss_short_reject)};
    double max_dev = 0.0;
    int flagged = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      const double dev = std::fabs(published[j] - ours[j]);
      max_dev = std::max(max_dev, dev);
      flagged += dev > table1_tolerance(published[j], c.replications);
    }
    out << e.model_id << "," << format_params(e.params) << "," << e.half_length << ","
        << c.replications << "," << (c.cell.literal_ma ? "literal" : "shifted");
    for (double v : ours) out << "," << pct(v);
    out << "," << pct(c.percent(c.kpss_long_reject));
    for (double v : published) out << "," << pct(v);
    out << "," << pct(c.percent(c.event_t[2])) << "," << c.failed << "," << pct(max_dev) << ","
        << flagged << "\n";
  }
  return out.str();
}

std::string table1_text(const Table1Comparison& cmp) {
  std::ostringstream out;
  char line[320];
  std::snprintf(line, sizeof line, "%-5s %-18s %-4s %13s %13s %13s %13s %13s %8s\n", "model",
                "params", "N", "c=inf", "c=0.45", "c=0.55", "c=0.65", "KPSS-l4", "KPSS-l12");
  out << line;
  out << "      (each cell: published / reproduced)\n";
  for (std::size_t i = 0; i < cmp.entries.size(); ++i) {
    const auto& e = *cmp.entries[i];
    const auto& c = cmp.report.cells[i];
    const double published[] = {e.untruncated, e.c045, e.c055, e.c065, e.kpss};
    const double ours[] = {c.percent(c.reject[0][0]), c.percent(c.reject[0][1]),
                           c.percent(c.reject[0][2]), c.percent(c.reject[0][3]),
                           c.percent(c.kpss_short_reject)};
    std::snprintf(line, sizeof line, "%-5d %-18s %-4zu", e.model_id,
                  format_params(e.params).c_str(), e.half_length);
    out << line;
    for (std::size_t j = 0; j < 5; ++j) {
      const bool flag = std::fabs(published[j] - ours[j]) > table1_tolerance(published[j], c.replications);
      std::snprintf(line, sizeof line, " %5.1f/%5.1f%c", published[j], ours[j], flag ? '*' : ' ');
      out << line;
    }
    std::snprintf(line, sizeof line, " %8.1f\n", c.percent(c.kpss_long_reject));
    out << line;
  }
  std::snprintf(line, sizeof line,
                "deviation: max %.2f pp, mean %.2f pp, %zu of %zu values outside tolerance (*)\n",
                cmp.max_abs_deviation, cmp.mean_abs_deviation, cmp.flagged_values,
                cmp.compared_values);
  out << line;
  std::snprintf(line, sizeof line, "replications %zu, seed %llu, runtime %.2f s\n",
                cmp.report.cells.front().replications,
                static_cast<unsigned long long>(cmp.report.master_seed),
                cmp.report.runtime_seconds);
  out << line;
  return out.str();
}

}  // namespace acvfur
