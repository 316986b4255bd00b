#pragma once

#include <filesystem>
#include <string>

#include "acvfur/series.hpp"

namespace acvfur {

/// Reads one column of a comma-separated file as a time series, in file
/// order. A header row is recognised when any of its cells is non-numeric.
/// `column` is a header name or a 1-based index; it may be empty when the
/// file has a single column. Trailing blank lines are ignored; any other
/// unparseable cell is an InputError naming its line.
TimeSeries ingest_csv(const std::filesystem::path& path, const std::string& column = "");

}  // namespace acvfur
