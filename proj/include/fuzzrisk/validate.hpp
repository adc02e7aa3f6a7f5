#pragma once

#include <vector>

#include "fuzzrisk/diagnostics.hpp"
#include "fuzzrisk/fis.hpp"

namespace fuzzrisk {

/// Structural checks on a definition:
///   - error:   rule references an unknown input/output term label
///   - error:   two rules share the same antecedent combination
///   - error:   some point of a variable's universe is covered by no term
///   - warning: rule base is incomplete (one warning per missing input-term
///              combination, naming it)
/// A clean model yields an empty vector.
std::vector<Diagnostic> validate_fis(const FisDefinition& fis);

}  // namespace fuzzrisk
