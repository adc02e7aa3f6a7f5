#include "fuzzrisk/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fuzzrisk {

Evaluator::Evaluator(const FisDefinition& fis, int grid_size)
    : fis_(&fis), grid_size_(grid_size) {
  if (grid_size_ < 2) {
    throw std::invalid_argument("grid size must be at least 2");
  }
  if (fis.rules.empty()) {
    throw std::invalid_argument("model '" + fis.name + "' has no rules");
  }
  rule_antecedents_.reserve(fis.rules.size());
  rule_consequents_.reserve(fis.rules.size());
  for (const Rule& rule : fis.rules) {
    if (rule.antecedents.size() != fis.inputs.size()) {
      throw std::invalid_argument("rule " + std::to_string(rule.index) + " has " +
                                  std::to_string(rule.antecedents.size()) +
                                  " antecedents for " + std::to_string(fis.inputs.size()) +
                                  " inputs");
    }
    std::vector<int> antecedents(fis.inputs.size());
    for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
      antecedents[i] = fis.inputs[i].term_index(rule.antecedents[i]);
      if (antecedents[i] < 0) {
        throw std::invalid_argument("rule " + std::to_string(rule.index) +
                                    " references unknown term '" + rule.antecedents[i] +
                                    "' of input '" + fis.inputs[i].name() + "'");
      }
    }
    const int consequent = fis.output.term_index(rule.consequent);
    if (consequent < 0) {
      throw std::invalid_argument("rule " + std::to_string(rule.index) +
                                  " references unknown term '" + rule.consequent +
                                  "' of output '" + fis.output.name() + "'");
    }
    rule_antecedents_.push_back(std::move(antecedents));
    rule_consequents_.push_back(consequent);
  }
}

double Evaluator::crisp(std::span<const double> inputs) const {
  return run(inputs, nullptr);
}

EvaluationResult Evaluator::evaluate(std::span<const double> inputs) const {
  EvaluationResult result;
  result.crisp = run(inputs, &result.trace);
  return result;
}

double Evaluator::run(std::span<const double> inputs, EvaluationTrace* trace) const {
  const FisDefinition& fis = *fis_;
  if (inputs.size() != fis.inputs.size()) {
    throw std::invalid_argument("model '" + fis.name + "' expects " +
                                std::to_string(fis.inputs.size()) + " inputs, got " +
                                std::to_string(inputs.size()));
  }

  // Fuzzification. Inputs are clamped to the universe first.
  std::vector<std::vector<double>> degrees(fis.inputs.size());
  for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
    degrees[i] = fis.inputs[i].fuzzify(inputs[i]);
  }

  // Firing strength of each rule: min over the antecedent degrees.
  const std::size_t rule_count = fis.rules.size();
  std::vector<double> strengths(rule_count);
  for (std::size_t r = 0; r < rule_count; ++r) {
    double strength = 1.0;
    const std::vector<int>& antecedents = rule_antecedents_[r];
    for (std::size_t i = 0; i < antecedents.size(); ++i) {
      strength = std::min(strength, degrees[i][static_cast<std::size_t>(antecedents[i])]);
    }
    strengths[r] = strength;
  }

  // Implication clips each rule's consequent set at its strength; aggregation
  // takes the pointwise max. Grouping rules by consequent term first and
  // keeping the max strength per term gives the same surface (min and max are
  // selections, so the order of taking them commutes) with far fewer
  // pointwise operations.
  const std::vector<Term>& out_terms = fis.output.terms();
  std::vector<double> term_heights(out_terms.size(), 0.0);
  for (std::size_t r = 0; r < rule_count; ++r) {
    const auto t = static_cast<std::size_t>(rule_consequents_[r]);
    term_heights[t] = std::max(term_heights[t], strengths[r]);
  }

  int main_rule = 0;
  double best_strength = 0.0;
  for (std::size_t r = 0; r < rule_count; ++r) {
    if (strengths[r] > best_strength) {
      best_strength = strengths[r];
      main_rule = fis.rules[r].index;
    }
  }

  // Discrete centroid over the inclusive uniform grid.
  const double lo = fis.output.lo();
  const double hi = fis.output.hi();
  const double step = (hi - lo) / static_cast<double>(grid_size_ - 1);
  double weighted = 0.0;
  double area = 0.0;
  std::vector<double>* grid_out = trace ? &trace->grid : nullptr;
  std::vector<double>* aggregate_out = trace ? &trace->aggregate : nullptr;
  if (grid_out) {
    grid_out->resize(static_cast<std::size_t>(grid_size_));
    aggregate_out->resize(static_cast<std::size_t>(grid_size_));
  }
  for (int g = 0; g < grid_size_; ++g) {
    const double x = lo + step * static_cast<double>(g);
    double mu = 0.0;
    for (std::size_t t = 0; t < out_terms.size(); ++t) {
      const double height = term_heights[t];
      if (height <= mu) continue;  // cannot raise the max
      mu = std::max(mu, std::min(height, out_terms[t].mf.evaluate(x)));
    }
    weighted += x * mu;
    area += mu;
    if (grid_out) {
      (*grid_out)[static_cast<std::size_t>(g)] = x;
      (*aggregate_out)[static_cast<std::size_t>(g)] = mu;
    }
  }

  if (area <= 0.0) {
    throw EmptyAggregateError("model '" + fis.name +
                              "': no rule fired, aggregated output set is empty");
  }
  const double crisp = weighted / area;

  if (trace) {
    trace->inputs.clear();
    trace->clamped.clear();
    trace->fuzzified.clear();
    for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
      const LinguisticVariable& var = fis.inputs[i];
      trace->inputs.emplace_back(var.name(), inputs[i]);
      if (inputs[i] < var.lo() || inputs[i] > var.hi()) {
        trace->clamped.push_back(var.name());
      }
      FuzzifiedInput fuzzified;
      fuzzified.variable = var.name();
      for (std::size_t t = 0; t < var.terms().size(); ++t) {
        fuzzified.degrees.emplace_back(var.terms()[t].label, degrees[i][t]);
      }
      trace->fuzzified.push_back(std::move(fuzzified));
    }
    trace->strengths = std::move(strengths);
    trace->main_active_rule = main_rule;
    trace->crisp = crisp;
  }
  return crisp;
}

EvaluationResult evaluate(const FisDefinition& fis, std::span<const double> inputs,
                          int grid_size) {
  return Evaluator(fis, grid_size).evaluate(inputs);
}

double firing_strength(const FisDefinition& fis, const Rule& rule,
                       std::span<const std::vector<double>> degrees) {
  if (rule.antecedents.size() != fis.inputs.size() || degrees.size() != fis.inputs.size()) {
    throw std::invalid_argument("firing_strength: antecedent/degree arity mismatch");
  }
  double strength = 1.0;
  for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
    const int t = fis.inputs[i].term_index(rule.antecedents[i]);
    if (t < 0) {
      throw std::invalid_argument("firing_strength: unknown term '" + rule.antecedents[i] +
                                  "' of input '" + fis.inputs[i].name() + "'");
    }
    if (static_cast<std::size_t>(t) >= degrees[i].size()) {
      throw std::invalid_argument("firing_strength: degree vector for input '" +
                                  fis.inputs[i].name() + "' is too short");
    }
    strength = std::min(strength, degrees[i][static_cast<std::size_t>(t)]);
  }
  return strength;
}

}  // namespace fuzzrisk
