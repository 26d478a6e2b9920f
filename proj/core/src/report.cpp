#include "rellich/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rellich {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int Report::exit_code() const {
  for (const auto& r : records)
    if (r.status != "pass") return 1;
  return 0;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string Report::to_json() const {
  std::vector<CheckRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  std::ostringstream os;
  os << "{\n";
  os << "  \"schema\": " << schema << ",\n";
  os << "  \"tool\": \"" << json_escape(tool) << "\",\n";
  os << "  \"command\": \"" << json_escape(command) << "\",\n";
  if (elapsed_ms) os << "  \"elapsed_ms\": " << format_double(*elapsed_ms) << ",\n";
  os << "  \"records\": [\n";
  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto& r = sorted[i];
    os << "    {\"name\": \"" << json_escape(r.name) << "\", \"claim\": \""
       << json_escape(r.claim) << "\", \"status\": \"" << r.status << "\"";
    if (r.value) os << ", \"value\": " << format_double(*r.value);
    if (r.value_exact) os << ", \"value_exact\": \"" << json_escape(*r.value_exact) << "\"";
    if (r.expected) os << ", \"expected\": " << format_double(*r.expected);
    if (r.residual) os << ", \"residual\": " << format_double(*r.residual);
    if (r.tolerance) os << ", \"tolerance\": " << format_double(*r.tolerance);
    if (!r.detail.empty()) os << ", \"detail\": \"" << json_escape(r.detail) << "\"";
    os << "}" << (i + 1 < sorted.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
  os << "  \"exit\": " << exit_code() << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace rellich
