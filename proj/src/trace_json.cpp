#include <string>

#include "fuzzrisk/inference.hpp"
#include "json.hpp"

namespace fuzzrisk {

std::string trace_to_json(const FisDefinition& fis, const EvaluationTrace& trace) {
  nlohmann::ordered_json doc;
  doc["model"] = fis.name;

  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [name, value] : trace.inputs) {
    inputs[name] = value;
  }
  doc["inputs"] = std::move(inputs);

  doc["clamped"] = trace.clamped;

  nlohmann::ordered_json fuzzified = nlohmann::ordered_json::object();
  for (const FuzzifiedInput& input : trace.fuzzified) {
    nlohmann::ordered_json degrees = nlohmann::ordered_json::object();
    for (const auto& [label, degree] : input.degrees) {
      degrees[label] = degree;
    }
    fuzzified[input.variable] = std::move(degrees);
  }
  doc["fuzzified"] = std::move(fuzzified);

  // Strengths are positional in the trace; report the nonzero ones keyed by
  // rule index so sparse rule bases stay readable.
  nlohmann::ordered_json strengths = nlohmann::ordered_json::object();
  for (std::size_t r = 0; r < trace.strengths.size() && r < fis.rules.size(); ++r) {
    if (trace.strengths[r] > 0.0) {
      strengths[std::to_string(fis.rules[r].index)] = trace.strengths[r];
    }
  }
  doc["strengths"] = std::move(strengths);

  doc["main_active_rule"] = trace.main_active_rule;
  doc["crisp"] = trace.crisp;
  return doc.dump(2);
}

}  // namespace fuzzrisk
