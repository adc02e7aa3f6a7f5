#include "fuzzrisk/models.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fuzzrisk {

namespace {

constexpr std::array<Level, 3> kLevels = {Level::small, Level::medium, Level::big};

MembershipFunction tri(double a, double b, double c) {
  return MembershipFunction::triangular(a, b, c);
}

MembershipFunction trap(double a, double b, double c, double d) {
  return MembershipFunction::trapezoidal(a, b, c, d);
}

std::vector<Term> output_terms() {
  return {{"very_small", tri(-0.25, 0.0, 0.25)},
          {"small", tri(0.0, 0.25, 0.5)},
          {"medium", tri(0.25, 0.5, 0.75)},
          {"big", tri(0.5, 0.75, 1.0)},
          {"very_big", tri(0.75, 1.0, 1.25)}};
}

struct Anchor {
  int index;
  OutputLevel consequent;
};

// Calibration rows the rule bases must reproduce; the builders refuse to hand
// out a model that violates them.
constexpr Anchor kAttackerAnchors[] = {
    {1, OutputLevel::very_small}, {4, OutputLevel::small},    {8, OutputLevel::medium},
    {14, OutputLevel::medium},    {26, OutputLevel::very_big}, {27, OutputLevel::very_big},
};

constexpr Anchor kSuccessAnchors[] = {
    {1, OutputLevel::very_small}, {2, OutputLevel::small},     {6, OutputLevel::medium},
    {10, OutputLevel::very_small}, {15, OutputLevel::small},   {20, OutputLevel::very_small},
    {27, OutputLevel::small},     {35, OutputLevel::big},      {40, OutputLevel::small},
    {45, OutputLevel::big},       {60, OutputLevel::very_big}, {70, OutputLevel::big},
    {81, OutputLevel::very_big},
};

void check_anchors(const FisDefinition& fis, std::span<const Anchor> anchors) {
  for (const Anchor& anchor : anchors) {
    const Rule& rule = fis.rules.at(static_cast<std::size_t>(anchor.index - 1));
    if (rule.index != anchor.index || rule.consequent != to_label(anchor.consequent)) {
      std::ostringstream msg;
      msg << "model '" << fis.name << "': rule " << anchor.index << " must conclude '"
          << to_label(anchor.consequent) << "', got '" << rule.consequent << "'";
      throw std::logic_error(msg.str());
    }
  }
}

constexpr AttackerPreset kPresets[] = {
    {"script_kiddie", {Level::small, Level::small, Level::small}, 1},
    {"hacker", {Level::small, Level::medium, Level::small}, 4},
    {"disgruntled_employee", {Level::small, Level::big, Level::medium}, 8},
    {"terrorist", {Level::medium, Level::medium, Level::medium}, 14},
    {"industrial_spy", {Level::big, Level::big, Level::medium}, 26},
    {"cyber_warrior", {Level::big, Level::big, Level::big}, 27},
};

}  // namespace

std::string_view to_label(Level level) {
  switch (level) {
    case Level::small: return "small";
    case Level::medium: return "medium";
    case Level::big: return "big";
  }
  throw std::invalid_argument("invalid level");
}

std::string_view to_label(OutputLevel level) {
  switch (level) {
    case OutputLevel::very_small: return "very_small";
    case OutputLevel::small: return "small";
    case OutputLevel::medium: return "medium";
    case OutputLevel::big: return "big";
    case OutputLevel::very_big: return "very_big";
  }
  throw std::invalid_argument("invalid output level");
}

double level_crisp(Level level) {
  switch (level) {
    case Level::small: return 0.1;
    case Level::medium: return 0.5;
    case Level::big: return 0.9;
  }
  throw std::invalid_argument("invalid level");
}

int rule_index(std::span<const Level> levels) {
  int index = 1;
  for (Level level : levels) {
    index = index * 3 + static_cast<int>(level);
  }
  // The loop computed 3^n + offset; shift back to 1-based.
  const int arity = static_cast<int>(levels.size());
  int power = 1;
  for (int i = 0; i < arity; ++i) power *= 3;
  return index - power + 1;
}

OutputLevel attacker_consequent(Level resources, Level knowledge, Level motivation) {
  // Weighted level sum, rounded half-up: knowledge 1.00, resources 0.75,
  // motivation 0.25. Computed in quarters so the rounding is exact.
  const int quarters = 4 * static_cast<int>(knowledge) + 3 * static_cast<int>(resources) +
                       static_cast<int>(motivation) + 2;
  return static_cast<OutputLevel>(std::min(quarters / 4, 4));
}

OutputLevel success_consequent(Level profile, Level protection, Level vulnerabilities,
                               Level restore_cost) {
  // Weighted level sum, rounded half-up: profile 1.3, protection -0.8,
  // vulnerabilities 0.7, restore cost 0.7. Computed in tenths so boundary
  // sums (exact halves) round up instead of drifting with floating point.
  const int tenths = 13 * static_cast<int>(profile) - 8 * static_cast<int>(protection) +
                     7 * static_cast<int>(vulnerabilities) + 7 * static_cast<int>(restore_cost) +
                     5;
  if (tenths < 0) return OutputLevel::very_small;
  return static_cast<OutputLevel>(std::min(tenths / 10, 4));
}

std::vector<Rule> complete_attacker_rule_base() {
  std::vector<Rule> rules;
  rules.reserve(27);
  for (Level r : kLevels) {
    for (Level k : kLevels) {
      for (Level m : kLevels) {
        const std::array<Level, 3> levels = {r, k, m};
        rules.push_back({{std::string(to_label(r)), std::string(to_label(k)),
                          std::string(to_label(m))},
                         std::string(to_label(attacker_consequent(r, k, m))),
                         rule_index(levels)});
      }
    }
  }
  return rules;
}

std::vector<Rule> complete_success_rule_base() {
  std::vector<Rule> rules;
  rules.reserve(81);
  for (Level a : kLevels) {
    for (Level p : kLevels) {
      for (Level v : kLevels) {
        for (Level c : kLevels) {
          const std::array<Level, 4> levels = {a, p, v, c};
          rules.push_back({{std::string(to_label(a)), std::string(to_label(p)),
                            std::string(to_label(v)), std::string(to_label(c))},
                           std::string(to_label(success_consequent(a, p, v, c))),
                           rule_index(levels)});
        }
      }
    }
  }
  return rules;
}

FisDefinition build_attacker_profile_fis() {
  FisDefinition fis{
      "attacker-profile",
      {
          LinguisticVariable("resources", 0.0, 1.0,
                             {{"small", trap(-0.225, -0.025, 0.1, 0.5)},
                              {"medium", tri(0.3, 0.6, 0.9)},
                              {"big", trap(0.7, 0.9, 1.06, 1.26)}}),
          LinguisticVariable("knowledge", 0.0, 1.0,
                             {{"small", tri(-0.4, 0.0, 0.5)},
                              {"medium", tri(0.0, 0.5, 1.0)},
                              {"big", tri(0.5, 1.0, 1.4)}}),
          LinguisticVariable("motivation", 0.0, 1.0,
                             {{"small", trap(-0.45, -0.05, 0.1, 0.4)},
                              {"medium", tri(0.2, 0.5, 0.8)},
                              {"big", trap(0.6, 0.95, 1.05, 1.45)}}),
      },
      LinguisticVariable("score", 0.0, 1.0, output_terms()),
      complete_attacker_rule_base()};
  check_anchors(fis, kAttackerAnchors);
  return fis;
}

FisDefinition build_success_rate_fis() {
  FisDefinition fis{
      "attack-success-rate",
      {
          LinguisticVariable("profile", 0.0, 1.0,
                             {{"small", tri(-0.5, 0.0, 0.5)},
                              {"medium", tri(0.0, 0.5, 1.0)},
                              {"big", tri(0.5, 1.0, 1.5)}}),
          LinguisticVariable("protection", 0.0, 1.0,
                             {{"small", tri(-0.4, 0.0, 0.3)},
                              {"medium", tri(0.1, 0.4, 0.7)},
                              {"big", tri(0.4, 1.0, 1.4)}}),
          LinguisticVariable("vulnerabilities", 0.0, 1.0,
                             {{"small", tri(-0.4, 0.0, 0.4)},
                              {"medium", tri(0.1, 0.5, 0.8)},
                              {"big", tri(0.6, 1.0, 1.4)}}),
          LinguisticVariable("restore_cost", 0.0, 1.0,
                             {{"small", tri(-0.4, 0.0, 0.4)},
                              {"medium", tri(0.1, 0.5, 0.8)},
                              {"big", tri(0.7, 1.0, 1.4)}}),
      },
      LinguisticVariable("successrate", 0.0, 1.0, output_terms()),
      complete_success_rule_base()};
  check_anchors(fis, kSuccessAnchors);
  return fis;
}

const FisDefinition& attacker_profile_fis() {
  static const FisDefinition fis = build_attacker_profile_fis();
  return fis;
}

const FisDefinition& success_rate_fis() {
  static const FisDefinition fis = build_success_rate_fis();
  return fis;
}

const FisDefinition* builtin_model(std::string_view name) {
  if (name == "attacker" || name == "attacker-profile") return &attacker_profile_fis();
  if (name == "success" || name == "attack-success-rate") return &success_rate_fis();
  return nullptr;
}

std::array<double, 3> AttackerPreset::crisp_inputs() const {
  return {level_crisp(levels[0]), level_crisp(levels[1]), level_crisp(levels[2])};
}

std::span<const AttackerPreset> attacker_presets() {
  return kPresets;
}

const AttackerPreset& preset(std::string_view name) {
  for (const AttackerPreset& p : kPresets) {
    if (p.name == name) return p;
  }
  std::ostringstream msg;
  msg << "unknown preset '" << name << "'; known presets:";
  for (const AttackerPreset& p : kPresets) msg << " " << p.name;
  throw std::invalid_argument(msg.str());
}

namespace {

EvaluationResult evaluate_builtin(const FisDefinition& fis, std::span<const double> inputs,
                                  int grid_size) {
  if (grid_size == kDefaultGridSize) {
    // Reuse the resolved evaluator for the common case.
    if (&fis == &attacker_profile_fis()) {
      static const Evaluator ev(attacker_profile_fis());
      return ev.evaluate(inputs);
    }
    static const Evaluator ev(success_rate_fis());
    return ev.evaluate(inputs);
  }
  return Evaluator(fis, grid_size).evaluate(inputs);
}

}  // namespace

EvaluationResult score_attacker(double resources, double knowledge, double motivation,
                                int grid_size) {
  const std::array<double, 3> inputs = {resources, knowledge, motivation};
  return evaluate_builtin(attacker_profile_fis(), inputs, grid_size);
}

EvaluationResult attack_success_rate(double profile_score, double protection,
                                     double vulnerabilities, double restore_cost, int grid_size) {
  const std::array<double, 4> inputs = {profile_score, protection, vulnerabilities, restore_cost};
  return evaluate_builtin(success_rate_fis(), inputs, grid_size);
}

PipelineResult run_pipeline(double resources, double knowledge, double motivation,
                            double protection, double vulnerabilities, double restore_cost,
                            int grid_size) {
  PipelineResult result;
  EvaluationResult score = score_attacker(resources, knowledge, motivation, grid_size);
  result.score = score.crisp;
  result.score_trace = std::move(score.trace);
  EvaluationResult rate =
      attack_success_rate(result.score, protection, vulnerabilities, restore_cost, grid_size);
  result.rate = rate.crisp;
  result.rate_trace = std::move(rate.trace);
  return result;
}

std::vector<ReferenceSweep> reference_sweeps() {
  std::vector<ReferenceSweep> sweeps;
  const auto surface = [&](std::string_view name, double motivation) {
    SweepRequest request;
    request.axes = {"knowledge", "resources"};
    request.fixed = {{"motivation", motivation}};
    sweeps.push_back({name, "attacker", std::move(request)});
  };
  surface("attacker_surface_small_motivation", 0.1);
  surface("attacker_surface_medium_motivation", 0.5);
  surface("attacker_surface_big_motivation", 0.9);

  // Knowledge response at six (resources, motivation) operating points named
  // after the closest preset.
  const auto slice = [&](std::string_view name, double resources, double motivation) {
    SweepRequest request;
    request.axes = {"knowledge"};
    request.fixed = {{"resources", resources}, {"motivation", motivation}};
    sweeps.push_back({name, "attacker", std::move(request)});
  };
  slice("script_kiddie_knowledge_slice", 0.1, 0.1);
  slice("hacker_knowledge_slice", 0.5, 0.1);
  slice("disgruntled_employee_knowledge_slice", 0.1, 0.5);
  slice("terrorist_knowledge_slice", 0.5, 0.5);
  slice("industrial_spy_knowledge_slice", 0.9, 0.5);
  slice("cyber_warrior_knowledge_slice", 0.9, 0.9);

  {
    SweepRequest request;
    request.axes = {"resources"};
    request.fixed = {{"knowledge", 0.9}, {"motivation", 0.5}};
    sweeps.push_back({"attacker_resources_slice", "attacker", std::move(request)});
  }
  {
    SweepRequest request;
    request.axes = {"profile", "protection"};
    request.fixed = {{"vulnerabilities", 0.5}, {"restore_cost", 0.9}};
    sweeps.push_back({"success_protection_surface", "success", std::move(request)});
  }
  return sweeps;
}

}  // namespace fuzzrisk
