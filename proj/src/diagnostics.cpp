#include "fuzzrisk/diagnostics.hpp"

#include <sstream>

namespace fuzzrisk {

namespace {

const char* severity_name(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

}  // namespace

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(severity_name(d.severity)) + ": " + d.message;
}

std::string format_diagnostic(const ParseDiagnostic& d) {
  std::ostringstream out;
  out << severity_name(d.severity) << ": " << d.line << ":" << d.column << ": " << d.message;
  return out.str();
}

}  // namespace fuzzrisk
