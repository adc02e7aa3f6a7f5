#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fuzzrisk/membership.hpp"

namespace fuzzrisk {

struct Term {
  std::string label;
  MembershipFunction mf;

  bool operator==(const Term&) const = default;
};

/// A named variable over a closed universe [lo, hi] with labelled terms.
/// The constructor enforces lo < hi, at least one term and unique labels.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Position of the term with the given label, or -1 when unknown.
  int term_index(std::string_view label) const;

  double clamp(double x) const;

  /// Membership degree of clamp(x) in every term, in declaration order.
  std::vector<double> fuzzify(double x) const;

  bool operator==(const LinguisticVariable&) const = default;

 private:
  std::string name_;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<Term> terms_;
};

/// One rule: every antecedent label belongs to the input at the same
/// position, the consequent labels an output term. `index` is the 1-based
/// position of the rule in the rule base.
struct Rule {
  std::vector<std::string> antecedents;
  std::string consequent;
  int index = 0;

  bool operator==(const Rule&) const = default;
};

struct FisDefinition {
  std::string name;
  std::vector<LinguisticVariable> inputs;
  LinguisticVariable output;
  std::vector<Rule> rules;

  /// Position of the input with the given name, or -1 when unknown.
  int input_index(std::string_view variable) const;

  bool operator==(const FisDefinition&) const = default;
};

}  // namespace fuzzrisk
