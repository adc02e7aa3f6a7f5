#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzrisk/diagnostics.hpp"
#include "fuzzrisk/fis.hpp"

namespace fuzzrisk {

struct ParseResult {
  /// Engaged iff no error-severity diagnostic was produced. Warnings (e.g. an
  /// incomplete rule base) still yield a definition.
  std::optional<FisDefinition> model;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Parses the line-oriented model text. Never throws on malformed input; all
/// findings are reported as positioned diagnostics.
ParseResult parse_model(std::string_view source);

/// Canonical text form: header, inputs with indented terms, output, a blank
/// line, then one line per rule. Numbers use the shortest round-trip decimal
/// form. parse_model(serialize_model(m)) reproduces m exactly.
std::string serialize_model(const FisDefinition& fis);

}  // namespace fuzzrisk
