#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sensornet::tools {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_number(double value);
std::string format_number(long long value);

/// Fixed-schema CSV table. Cells are pre-formatted strings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `contents` to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Effective parameters of one run, keyed by option name.
using ParameterMap = std::map<std::string, std::string>;

/// FNV-1a 64 over the sorted "key=value\n" lines, as 16 hex digits.
std::string config_hash(const ParameterMap& params);

}  // namespace sensornet::tools
