#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuzzrisk/fis.hpp"

namespace fuzzrisk {

/// Default resolution of the discrete output universe used for
/// defuzzification: inclusive endpoints, uniform spacing.
inline constexpr int kDefaultGridSize = 1001;

/// Thrown when no rule fires: the aggregated output set has zero area and the
/// centroid is undefined.
class EmptyAggregateError : public std::runtime_error {
 public:
  explicit EmptyAggregateError(const std::string& what) : std::runtime_error(what) {}
};

struct FuzzifiedInput {
  std::string variable;
  // (term label, degree) in term declaration order.
  std::vector<std::pair<std::string, double>> degrees;
};

struct EvaluationTrace {
  // Inputs as given, before clamping, in declaration order.
  std::vector<std::pair<std::string, double>> inputs;
  // Names of inputs whose value fell outside the universe and was clamped.
  std::vector<std::string> clamped;
  std::vector<FuzzifiedInput> fuzzified;
  // Firing strength per rule, positionally aligned with the rule base.
  std::vector<double> strengths;
  // Output universe samples and the aggregated membership at each sample.
  std::vector<double> grid;
  std::vector<double> aggregate;
  // 1-based index of the rule with the highest firing strength; ties resolve
  // to the lowest index.
  int main_active_rule = 0;
  double crisp = 0.0;
};

struct EvaluationResult {
  double crisp = 0.0;
  EvaluationTrace trace;
};

/// Mamdani pipeline over a fixed definition: min conjunction, min
/// implication, max aggregation, discrete centroid defuzzification. Rule
/// labels are resolved to indices once at construction; the definition must
/// outlive the evaluator. Const use is thread safe.
class Evaluator {
 public:
  explicit Evaluator(const FisDefinition& fis, int grid_size = kDefaultGridSize);

  /// Crisp output only; skips trace assembly but shares the exact arithmetic
  /// of evaluate().
  double crisp(std::span<const double> inputs) const;

  EvaluationResult evaluate(std::span<const double> inputs) const;

  const FisDefinition& fis() const { return *fis_; }
  int grid_size() const { return grid_size_; }

 private:
  double run(std::span<const double> inputs, EvaluationTrace* trace) const;

  const FisDefinition* fis_;
  int grid_size_;
  std::vector<std::vector<int>> rule_antecedents_;  // term index per input, per rule
  std::vector<int> rule_consequents_;               // output term index per rule
};

/// One-shot convenience wrapper around Evaluator.
EvaluationResult evaluate(const FisDefinition& fis, std::span<const double> inputs,
                          int grid_size = kDefaultGridSize);

/// Minimum of the rule's antecedent degrees. `degrees` holds the fuzzified
/// degrees of each input in term declaration order (as LinguisticVariable::
/// fuzzify returns them).
double firing_strength(const FisDefinition& fis, const Rule& rule,
                       std::span<const std::vector<double>> degrees);

/// Stable JSON document for a trace: fuzzified degrees per input, clamped
/// inputs, nonzero rule strengths keyed by rule index, the main active rule
/// and the crisp output. No timestamps, locale-independent numbers.
std::string trace_to_json(const FisDefinition& fis, const EvaluationTrace& trace);

}  // namespace fuzzrisk
