#include "fuzzrisk/fis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace fuzzrisk {

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
  if (name_.empty()) {
    throw std::invalid_argument("variable name must not be empty");
  }
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
    throw std::invalid_argument("variable '" + name_ + "': universe must satisfy lo < hi");
  }
  if (terms_.empty()) {
    throw std::invalid_argument("variable '" + name_ + "': at least one term required");
  }
  std::unordered_set<std::string> seen;
  for (const Term& term : terms_) {
    if (term.label.empty()) {
      throw std::invalid_argument("variable '" + name_ + "': term labels must not be empty");
    }
    if (!seen.insert(term.label).second) {
      throw std::invalid_argument("variable '" + name_ + "': duplicate term '" + term.label + "'");
    }
  }
}

int LinguisticVariable::term_index(std::string_view label) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

double LinguisticVariable::clamp(double x) const {
  return std::min(std::max(x, lo_), hi_);
}

std::vector<double> LinguisticVariable::fuzzify(double x) const {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("variable '" + name_ + "': input must be finite");
  }
  const double clamped = clamp(x);
  std::vector<double> degrees;
  degrees.reserve(terms_.size());
  for (const Term& term : terms_) {
    degrees.push_back(term.mf.evaluate(clamped));
  }
  return degrees;
}

int FisDefinition::input_index(std::string_view variable) const {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].name() == variable) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace fuzzrisk
