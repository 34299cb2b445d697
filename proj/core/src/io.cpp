#include "mcv/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcv/errors.hpp"

namespace mcv::io {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t comma = line.find(',', begin);
    fields.push_back(trim(line.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no, std::size_t col) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                                      ": '" + std::string(field) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFinite,
                "line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) + " is not finite");
  }
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return in;
}

Vector to_vector(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::Parse, std::string(what) + " entries must be numbers");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

}  // namespace

DataSet read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (names.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto f : split(line)) names.emplace_back(f);
  }
  if (names.empty()) throw Error(ErrorCode::Parse, "CSV input has no header row");

  const std::size_t n = names.size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + " has " +
                                                    std::to_string(fields.size()) + " fields, header has " +
                                                    std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) values.push_back(parse_number(fields[c], line_no, c));
    ++rows;
  }
  Matrix x(static_cast<Index>(rows), static_cast<Index>(n));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) x(static_cast<Index>(r), static_cast<Index>(c)) = values[r * n + c];
  }
  return DataSet(std::move(x), std::move(names));
}

DataSet read_csv_file(const std::string& path) {
  auto in = open(path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const DataSet& data) {
  const auto& names = data.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  char buf[32];
  for (Index i = 0; i < data.observations(); ++i) {
    for (Index j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data.values()(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

MomentSummary read_summary_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!j.is_object() || !j.contains("mean") || !j.contains("cov")) {
    throw Error(ErrorCode::Parse, "moment summary needs \"mean\" and \"cov\" fields");
  }
  Vector mean = to_vector(j["mean"], "mean");
  const json& rows = j["cov"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(mean.size())) {
    throw Error(ErrorCode::DimensionMismatch, "cov must have one row per mean entry");
  }
  Matrix cov(mean.size(), mean.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vector row = to_vector(rows[i], "cov row");
    if (row.size() != mean.size()) throw Error(ErrorCode::DimensionMismatch, "cov must be square");
    cov.row(static_cast<Index>(i)) = row.transpose();
  }
  Convention convention = Convention::analytic;
  if (j.contains("convention")) {
    if (!j["convention"].is_string()) throw Error(ErrorCode::Parse, "convention must be a string");
    convention = parse_convention(j["convention"].get<std::string>());
  }
  return make_summary(std::move(mean), std::move(cov), convention);
}

MomentSummary read_summary_json_file(const std::string& path) {
  auto in = open(path);
  return read_summary_json(in);
}

std::string summary_to_json(const MomentSummary& ms) {
  json j;
  j["mean"] = std::vector<double>(ms.mean.data(), ms.mean.data() + ms.mean.size());
  json rows = json::array();
  for (Index i = 0; i < ms.dim(); ++i) {
    const Vector row = ms.cov.row(i).transpose();
    rows.push_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  j["cov"] = std::move(rows);
  j["convention"] = std::string(to_string(ms.convention));
  return j.dump(2);
}

void write_summary_json(std::ostream& out, const MomentSummary& ms) { out << summary_to_json(ms) << '\n'; }

bool looks_like_json(const std::string& path) {
  auto in = open(path);
  char c = 0;
  while (in.get(c)) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

}  // namespace mcv::io
