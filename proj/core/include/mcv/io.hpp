#pragma once

#include <iosfwd>
#include <string>

#include "mcv/dataset.hpp"
#include "mcv/moments.hpp"

namespace mcv::io {

/// Comma-separated, one header row of column names, then one numeric row per
/// observation. Blank lines are skipped. Parse errors name the line.
DataSet read_csv(std::istream& in);
DataSet read_csv_file(const std::string& path);
/// Values printed with 17 significant digits.
void write_csv(std::ostream& out, const DataSet& data);

/// {"mean": [...], "cov": [[...], ...], "convention": "population"}.
/// "convention" is optional and defaults to analytic.
MomentSummary read_summary_json(std::istream& in);
MomentSummary read_summary_json_file(const std::string& path);
void write_summary_json(std::ostream& out, const MomentSummary& ms);
std::string summary_to_json(const MomentSummary& ms);

/// True when the file's first non-blank character is '{'.
bool looks_like_json(const std::string& path);

}  // namespace mcv::io
