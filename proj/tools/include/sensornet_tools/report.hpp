#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sensornet::tools {

struct ReportOptions {
  std::uint64_t seed = 20240601;  ///< base seed; criterion k uses seed + 1000 k
  int threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;              ///< one line of measured values
  std::vector<std::string> detail;  ///< markdown lines (tables, per-case values)
  double seconds = 0.0;             ///< wall time, reporting only
};

inline constexpr int kCriterionCount = 12;

/// Runs acceptance criterion `id` (1..12). Never throws for a failed check;
/// an unexpected exception is reported as a failure with its message.
CriterionResult run_criterion(int id, const ReportOptions& options);

std::vector<CriterionResult> run_all(const ReportOptions& options);

/// "PASS [k] title: summary" / "FAIL ...".
std::string status_line(const CriterionResult& result);

std::string to_markdown(const std::vector<CriterionResult>& results, const ReportOptions& options);

}  // namespace sensornet::tools
