#include <charconv>

#include "ispear/stats.hpp"

namespace ispear::stats {

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

void DataTable::add_numeric(const std::string& name, std::vector<double> values) {
  if (!columns_.empty() && values.size() != rows_)
    throw Error(ErrorCode::ParseError, "column " + name + " has mismatched length");
  rows_ = values.size();
  Column col;
  col.is_numeric = true;
  col.nums = std::move(values);
  columns_.emplace_back(name, std::move(col));
}

void DataTable::add_categorical(const std::string& name, std::vector<std::string> values) {
  if (!columns_.empty() && values.size() != rows_)
    throw Error(ErrorCode::ParseError, "column " + name + " has mismatched length");
  rows_ = values.size();
  Column col;
  col.is_numeric = false;
  col.cats = std::move(values);
  columns_.emplace_back(name, std::move(col));
}

DataTable DataTable::read_csv(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.size() < 2) throw Error(ErrorCode::ParseError, path + ": no data rows");

  auto header = split_csv_line(lines[0]);
  const std::size_t ncol = header.size();
  std::vector<std::vector<std::string>> raw(ncol);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != ncol)
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(ncol));
    for (std::size_t c = 0; c < ncol; ++c) raw[c].push_back(fields[c]);
  }

  DataTable table;
  for (std::size_t c = 0; c < ncol; ++c) {
    std::vector<double> nums(raw[c].size());
    bool numeric = true;
    for (std::size_t r = 0; r < raw[c].size(); ++r) {
      if (!parse_double(raw[c][r], nums[r])) {
        numeric = false;
        break;
      }
    }
    if (numeric)
      table.add_numeric(header[c], std::move(nums));
    else
      table.add_categorical(header[c], std::move(raw[c]));
  }
  return table;
}

const DataTable::Column& DataTable::find(const std::string& name) const {
  for (const auto& [n, col] : columns_)
    if (n == name) return col;
  throw Error(ErrorCode::UnknownColumn, "no column named '" + name + "'");
}

bool DataTable::has_column(const std::string& name) const {
  for (const auto& [n, col] : columns_)
    if (n == name) return true;
  return false;
}

const std::vector<double>& DataTable::numeric(const std::string& name) const {
  const Column& col = find(name);
  if (!col.is_numeric)
    throw Error(ErrorCode::UnknownColumn, "column '" + name + "' is not numeric");
  return col.nums;
}

const std::vector<std::string>& DataTable::categorical(const std::string& name) const {
  const Column& col = find(name);
  if (col.is_numeric)
    throw Error(ErrorCode::UnknownColumn, "column '" + name + "' is not categorical");
  return col.cats;
}

std::vector<std::string> DataTable::levels(const std::string& name) const {
  const auto& values = categorical(name);
  std::vector<std::string> out;
  for (const auto& v : values) {
    bool seen = false;
    for (const auto& u : out)
      if (u == v) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(v);
  }
  return out;
}

}  // namespace ispear::stats
