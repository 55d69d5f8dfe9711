#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "loadsense/types.hpp"

namespace loadsense::detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline bool parse_number(std::string_view field, double& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

inline bool parse_int(std::string_view field, int& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

/// Line-oriented CSV table with a fixed header. Comment lines starting with
/// '#' and blank lines are ignored; a trailing '\r' is tolerated.
class CsvTable {
public:
  CsvTable(const std::filesystem::path& path, std::string_view expected_header)
      : path_(path), text_(read_file(path)) {
    std::string_view all(text_);
    std::size_t pos = 0;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (pos < all.size()) {
      std::size_t end = all.find('\n', pos);
      if (end == std::string_view::npos) end = all.size();
      std::string_view line = all.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      if (!header_seen) {
        if (line != expected_header)
          throw DataError(path_.string() + ": expected header '" + std::string(expected_header) +
                          "', found '" + std::string(line) + "'");
        header_seen = true;
        arity_ = split(expected_header, ',').size();
        continue;
      }
      auto fields = split(line, ',');
      if (fields.size() != arity_)
        throw DataError(path_.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(arity_) + " fields, found " + std::to_string(fields.size()));
      rows_.push_back({line_no, std::move(fields)});
    }
    if (!header_seen) throw DataError(path_.string() + ": missing header");
  }

  CsvTable(const CsvTable&) = delete;
  CsvTable& operator=(const CsvTable&) = delete;

  struct Row {
    std::size_t line_no;
    std::vector<std::string_view> fields;
  };

  const std::vector<Row>& rows() const { return rows_; }

  double number(const Row& row, std::size_t col, std::string_view name) const {
    double v = 0.0;
    if (!parse_number(row.fields[col], v))
      throw DataError(path_.string() + ":" + std::to_string(row.line_no) + ": field '" +
                      std::string(name) + "' is not numeric: '" + std::string(row.fields[col]) + "'");
    return v;
  }

  int integer(const Row& row, std::size_t col, std::string_view name) const {
    int v = 0;
    if (!parse_int(row.fields[col], v))
      throw DataError(path_.string() + ":" + std::to_string(row.line_no) + ": field '" +
                      std::string(name) + "' is not an integer: '" + std::string(row.fields[col]) +
                      "'");
    return v;
  }

  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
  std::string text_;
  std::size_t arity_ = 0;
  std::vector<Row> rows_;
};

}  // namespace loadsense::detail
