#include "fuzzrisk/validate.hpp"

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fuzzrisk {

namespace {

constexpr int kCoverageSamples = 1001;
// Completeness enumeration is skipped above this many combinations; the
// built-in models have 27 and 81.
constexpr long long kMaxCombinations = 1'000'000;

void check_coverage(const LinguisticVariable& var, bool is_input, std::vector<Diagnostic>& out) {
  // Sample subinterval midpoints: coverage is an almost-everywhere property.
  // A membership of exactly zero at an isolated point (e.g. the foot of a
  // triangle on the universe bound) never affects inference, so it is not a
  // structural defect; a gap of positive width is.
  const double step = (var.hi() - var.lo()) / static_cast<double>(kCoverageSamples);
  for (int g = 0; g < kCoverageSamples; ++g) {
    const double x = var.lo() + step * (static_cast<double>(g) + 0.5);
    double best = 0.0;
    for (const Term& term : var.terms()) {
      best = std::max(best, term.mf.evaluate(x));
      if (best > 0.0) break;
    }
    if (best <= 0.0) {
      std::ostringstream msg;
      msg << (is_input ? "input" : "output") << " '" << var.name()
          << "': no term covers the universe near " << x;
      out.push_back({Severity::error, msg.str()});
      return;  // one gap report per variable is enough
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_fis(const FisDefinition& fis) {
  std::vector<Diagnostic> out;

  if (fis.rules.empty()) {
    out.push_back({Severity::error, "model has no rules"});
  }

  // Unresolved labels and arity mismatches.
  std::vector<const Rule*> resolved;  // rules usable for duplicate/completeness checks
  for (const Rule& rule : fis.rules) {
    bool ok = true;
    if (rule.antecedents.size() != fis.inputs.size()) {
      std::ostringstream msg;
      msg << "rule " << rule.index << " has " << rule.antecedents.size() << " antecedents for "
          << fis.inputs.size() << " inputs";
      out.push_back({Severity::error, msg.str()});
      ok = false;
    } else {
      for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
        if (fis.inputs[i].term_index(rule.antecedents[i]) < 0) {
          std::ostringstream msg;
          msg << "rule " << rule.index << " references unknown term '" << rule.antecedents[i]
              << "' of input '" << fis.inputs[i].name() << "'";
          out.push_back({Severity::error, msg.str()});
          ok = false;
        }
      }
    }
    if (fis.output.term_index(rule.consequent) < 0) {
      std::ostringstream msg;
      msg << "rule " << rule.index << " references unknown term '" << rule.consequent
          << "' of output '" << fis.output.name() << "'";
      out.push_back({Severity::error, msg.str()});
      ok = false;
    }
    if (ok) resolved.push_back(&rule);
  }

  // Duplicate antecedent combinations.
  std::map<std::vector<std::string>, int> first_seen;
  for (const Rule* rule : resolved) {
    auto [it, inserted] = first_seen.emplace(rule->antecedents, rule->index);
    if (!inserted) {
      std::ostringstream msg;
      msg << "rules " << it->second << " and " << rule->index
          << " share the same antecedent combination";
      out.push_back({Severity::error, msg.str()});
    }
  }

  // Universe coverage.
  for (const LinguisticVariable& input : fis.inputs) {
    check_coverage(input, /*is_input=*/true, out);
  }
  check_coverage(fis.output, /*is_input=*/false, out);

  // Rule-base completeness: one warning per missing input-term combination.
  long long combinations = 1;
  for (const LinguisticVariable& input : fis.inputs) {
    combinations *= static_cast<long long>(input.terms().size());
    if (combinations > kMaxCombinations) break;
  }
  if (!fis.inputs.empty() && combinations <= kMaxCombinations) {
    std::vector<std::size_t> odometer(fis.inputs.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<std::string> combo;
      combo.reserve(fis.inputs.size());
      for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
        combo.push_back(fis.inputs[i].terms()[odometer[i]].label);
      }
      if (!first_seen.contains(combo)) {
        std::ostringstream msg;
        msg << "incomplete rule base: no rule for (";
        for (std::size_t i = 0; i < combo.size(); ++i) {
          if (i > 0) msg << ", ";
          msg << fis.inputs[i].name() << "=" << combo[i];
        }
        msg << ")";
        out.push_back({Severity::warning, msg.str()});
      }
      // Advance the odometer, last input fastest.
      done = true;
      for (std::size_t i = fis.inputs.size(); i-- > 0;) {
        if (++odometer[i] < fis.inputs[i].terms().size()) {
          done = false;
          break;
        }
        odometer[i] = 0;
      }
    }
  }

  return out;
}

}  // namespace fuzzrisk
