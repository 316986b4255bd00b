#include "acvfur/csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <vector>

#include "acvfur/errors.hpp"

namespace acvfur {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(first, last - first + 1);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto res = std::from_chars(begin, cell.data() + cell.size(), value);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

TimeSeries ingest_csv(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (lines.empty() && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw InputError("input file '" + path.string() + "' has no data");

  const auto first = split_row(lines.front());
  bool has_header = false;
  for (const auto& cell : first) has_header = has_header || !parse_number(cell);

  std::size_t index = 0;
  if (column.empty()) {
    if (first.size() != 1) {
      throw InputError("input has " + std::to_string(first.size()) +
                       " columns; select one by name or 1-based index");
    }
  } else {
    bool found = false;
    if (has_header) {
      for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i] == column) {
          index = i;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      std::size_t one_based = 0;
      const auto res = std::from_chars(column.data(), column.data() + column.size(), one_based);
      if (res.ec != std::errc() || res.ptr != column.data() + column.size() || one_based < 1 ||
          one_based > first.size()) {
        throw InputError("no column '" + column + "' in '" + path.string() + "'");
      }
      index = one_based - 1;
    }
  }

  std::vector<double> values;
  for (std::size_t row = has_header ? 1 : 0; row < lines.size(); ++row) {
    const auto cells = split_row(lines[row]);
    const std::string line_no = std::to_string(row + 1);
    if (index >= cells.size()) {
      throw InputError("line " + line_no + ": missing column " + std::to_string(index + 1));
    }
    const auto value = parse_number(cells[index]);
    if (!value) {
      throw InputError("line " + line_no + ": '" + cells[index] + "' is not a finite number");
    }
    values.push_back(*value);
  }
  if (values.empty()) throw InputError("column '" + column + "' is empty");
  return TimeSeries(std::move(values));
}

}  // namespace acvfur
