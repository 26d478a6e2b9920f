#ifndef RELLICH_REPORT_HPP
#define RELLICH_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace rellich {

/// One verification record.  `claim` states the mathematical fact being
/// checked in plain words; `status` is "pass", "fail" or "inconclusive".
struct CheckRecord {
  std::string name;
  std::string claim;
  std::string status;
  std::optional<double> value;
  std::optional<double> expected;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<std::string> value_exact;  // rational values, printed exactly
  std::string detail;
};

struct Report {
  int schema = 1;
  std::string tool;
  std::string command;
  std::vector<CheckRecord> records;
  std::optional<double> elapsed_ms;  // omitted from golden comparisons

  /// 0 if every record passed, 1 otherwise.
  int exit_code() const;
  /// Records sorted by name; numbers with 17 significant digits.
  std::string to_json() const;
};

std::string format_double(double v);

}  // namespace rellich

#endif
