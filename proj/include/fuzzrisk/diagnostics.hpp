#pragma once

#include <string>

namespace fuzzrisk {

enum class Severity { error, warning };

/// Structural finding about a model, produced by validate_fis.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

/// Finding tied to a position in a model document. Line and column are
/// 1-based.
struct ParseDiagnostic {
  Severity severity = Severity::error;
  int line = 0;
  int column = 0;
  std::string message;

  bool operator==(const ParseDiagnostic&) const = default;
};

std::string format_diagnostic(const Diagnostic& d);
std::string format_diagnostic(const ParseDiagnostic& d);

}  // namespace fuzzrisk
