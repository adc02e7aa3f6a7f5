#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzrisk/models.hpp"
#include "fuzzrisk/validate.hpp"

using namespace fuzzrisk;

namespace {

constexpr double kFrozenTol = 1e-9;

// Consequent labels of the whole rule base as one digit string,
// 0 = very_small .. 4 = very_big, rule index order.
std::string consequent_digits(const FisDefinition& fis) {
  const std::map<std::string, char> digit = {{"very_small", '0'},
                                             {"small", '1'},
                                             {"medium", '2'},
                                             {"big", '3'},
                                             {"very_big", '4'}};
  std::string out;
  for (const Rule& rule : fis.rules) out += digit.at(rule.consequent);
  return out;
}

double att(double r, double k, double m) { return score_attacker(r, k, m).crisp; }

double suc(double a, double p, double v, double c) {
  return attack_success_rate(a, p, v, c).crisp;
}

}  // namespace

TEST_CASE("attacker model structure") {
  const FisDefinition& fis = attacker_profile_fis();
  CHECK(fis.name == "attacker-profile");
  REQUIRE(fis.inputs.size() == 3);
  CHECK(fis.inputs[0].name() == "resources");
  CHECK(fis.inputs[1].name() == "knowledge");
  CHECK(fis.inputs[2].name() == "motivation");
  for (const LinguisticVariable& input : fis.inputs) {
    CHECK(input.lo() == 0.0);
    CHECK(input.hi() == 1.0);
    REQUIRE(input.terms().size() == 3);
    CHECK(input.terms()[0].label == "small");
    CHECK(input.terms()[1].label == "medium");
    CHECK(input.terms()[2].label == "big");
  }
  CHECK(fis.output.name() == "score");
  REQUIRE(fis.output.terms().size() == 5);
  CHECK(fis.rules.size() == 27);
  CHECK(fis.input_index("knowledge") == 1);
  CHECK(fis.input_index("nonesuch") == -1);

  CHECK(fis.inputs[0].terms()[0].mf == MembershipFunction::trapezoidal(-0.225, -0.025, 0.1, 0.5));
  CHECK(fis.inputs[0].terms()[1].mf == MembershipFunction::triangular(0.3, 0.6, 0.9));
  CHECK(fis.inputs[2].terms()[2].mf == MembershipFunction::trapezoidal(0.6, 0.95, 1.05, 1.45));
  CHECK(fis.output.terms()[0].mf == MembershipFunction::triangular(-0.25, 0.0, 0.25));
  CHECK(fis.output.terms()[4].mf == MembershipFunction::triangular(0.75, 1.0, 1.25));
}

TEST_CASE("success model structure") {
  const FisDefinition& fis = success_rate_fis();
  CHECK(fis.name == "attack-success-rate");
  REQUIRE(fis.inputs.size() == 4);
  CHECK(fis.inputs[0].name() == "profile");
  CHECK(fis.inputs[1].name() == "protection");
  CHECK(fis.inputs[2].name() == "vulnerabilities");
  CHECK(fis.inputs[3].name() == "restore_cost");
  CHECK(fis.output.name() == "successrate");
  CHECK(fis.rules.size() == 81);
  CHECK(fis.inputs[1].terms()[1].mf == MembershipFunction::triangular(0.1, 0.4, 0.7));
  CHECK(fis.inputs[3].terms()[2].mf == MembershipFunction::triangular(0.7, 1.0, 1.4));
}

TEST_CASE("rule_index is lexicographic with the first input most significant") {
  using L = Level;
  const auto idx = [](std::initializer_list<Level> levels) {
    return rule_index(std::vector<Level>(levels));
  };
  CHECK(idx({L::small, L::small, L::small}) == 1);
  CHECK(idx({L::small, L::medium, L::small}) == 4);
  CHECK(idx({L::small, L::big, L::medium}) == 8);
  CHECK(idx({L::medium, L::medium, L::medium}) == 14);
  CHECK(idx({L::big, L::big, L::medium}) == 26);
  CHECK(idx({L::big, L::big, L::big}) == 27);
  CHECK(idx({L::small, L::small, L::small, L::small}) == 1);
  CHECK(idx({L::medium, L::small, L::big, L::small}) == 34);
  CHECK(idx({L::big, L::big, L::big, L::big}) == 81);

  // The rule base is stored in exactly this order.
  const FisDefinition& fis = attacker_profile_fis();
  for (std::size_t r = 0; r < fis.rules.size(); ++r) {
    CHECK(fis.rules[r].index == static_cast<int>(r) + 1);
  }
}

TEST_CASE("anchor rules hold in both rule bases") {
  const FisDefinition& attacker = attacker_profile_fis();
  const struct {
    int index;
    const char* antecedents[3];
    const char* consequent;
  } attacker_anchors[] = {
      {1, {"small", "small", "small"}, "very_small"},
      {4, {"small", "medium", "small"}, "small"},
      {8, {"small", "big", "medium"}, "medium"},
      {14, {"medium", "medium", "medium"}, "medium"},
      {26, {"big", "big", "medium"}, "very_big"},
      {27, {"big", "big", "big"}, "very_big"},
  };
  for (const auto& a : attacker_anchors) {
    const Rule& rule = attacker.rules[static_cast<std::size_t>(a.index - 1)];
    CHECK(rule.index == a.index);
    CHECK(rule.antecedents ==
          std::vector<std::string>{a.antecedents[0], a.antecedents[1], a.antecedents[2]});
    CHECK(rule.consequent == a.consequent);
  }

  const FisDefinition& success = success_rate_fis();
  const struct {
    int index;
    const char* consequent;
  } success_anchors[] = {
      {1, "very_small"}, {2, "small"},   {6, "medium"},    {10, "very_small"}, {15, "small"},
      {20, "very_small"}, {27, "small"}, {35, "big"},      {40, "small"},      {45, "big"},
      {60, "very_big"},  {70, "big"},    {81, "very_big"},
  };
  for (const auto& a : success_anchors) {
    const Rule& rule = success.rules[static_cast<std::size_t>(a.index - 1)];
    CHECK(rule.index == a.index);
    CHECK(rule.consequent == a.consequent);
  }
}

TEST_CASE("full consequent tables match the frozen expansion") {
  CHECK(consequent_digits(attacker_profile_fis()) == "001112223111222333222333444");
  CHECK(consequent_digits(success_rate_fis()) ==
        "011112123001011112000001011123233334112123233001012123334344444233334344122223234");
}

TEST_CASE("boundary combinations round half up") {
  using L = Level;
  // These six sit exactly on a rounding boundary; naive floating-point
  // accumulation of the weights would push three of them down a level.
  CHECK(success_consequent(L::small, L::big, L::medium, L::big) == OutputLevel::small);
  CHECK(success_consequent(L::small, L::big, L::big, L::medium) == OutputLevel::small);
  CHECK(success_consequent(L::medium, L::medium, L::small, L::small) == OutputLevel::small);
  CHECK(success_consequent(L::medium, L::big, L::big, L::big) == OutputLevel::big);
  CHECK(success_consequent(L::big, L::medium, L::small, L::medium) == OutputLevel::big);
  CHECK(success_consequent(L::big, L::medium, L::medium, L::small) == OutputLevel::big);

  CHECK(attacker_consequent(L::small, L::small, L::small) == OutputLevel::very_small);
  CHECK(attacker_consequent(L::big, L::big, L::big) == OutputLevel::very_big);
  CHECK(attacker_consequent(L::small, L::big, L::medium) == OutputLevel::medium);
}

TEST_CASE("builders produce clean models and the accessors cache") {
  CHECK(validate_fis(build_attacker_profile_fis()).empty());
  CHECK(validate_fis(build_success_rate_fis()).empty());
  CHECK(build_attacker_profile_fis() == attacker_profile_fis());
  CHECK(build_success_rate_fis() == success_rate_fis());
  CHECK(&attacker_profile_fis() == &attacker_profile_fis());
  CHECK(&success_rate_fis() == &success_rate_fis());
}

TEST_CASE("builtin_model resolves the documented names") {
  CHECK(builtin_model("attacker") == &attacker_profile_fis());
  CHECK(builtin_model("attacker-profile") == &attacker_profile_fis());
  CHECK(builtin_model("success") == &success_rate_fis());
  CHECK(builtin_model("attack-success-rate") == &success_rate_fis());
  CHECK(builtin_model("ATTACKER") == nullptr);
  CHECK(builtin_model("") == nullptr);
  CHECK(builtin_model("threat") == nullptr);
}

TEST_CASE("presets carry their frozen scores and dominant rules") {
  const auto presets = attacker_presets();
  REQUIRE(presets.size() == 6);

  const struct {
    const char* name;
    double score;
    int main_rule;
  } expected[] = {
      {"script_kiddie", 0.1633403755868545, 1},
      {"hacker", 0.25000000000000006, 4},
      {"disgruntled_employee", 0.43965517241379304, 8},
      {"terrorist", 0.5, 14},
      {"industrial_spy", 0.8366596244131453, 26},
      {"cyber_warrior", 0.8366596244131453, 27},
  };
  for (std::size_t i = 0; i < presets.size(); ++i) {
    CAPTURE(expected[i].name);
    CHECK(presets[i].name == expected[i].name);
    CHECK(presets[i].expected_main_rule == expected[i].main_rule);
    const std::array<double, 3> inputs = presets[i].crisp_inputs();
    const EvaluationResult result = score_attacker(inputs[0], inputs[1], inputs[2]);
    CHECK(result.crisp == doctest::Approx(expected[i].score).epsilon(kFrozenTol));
    CHECK(result.trace.main_active_rule == expected[i].main_rule);
  }

  CHECK(preset("terrorist").levels ==
        std::array<Level, 3>{Level::medium, Level::medium, Level::medium});
  CHECK(preset("script_kiddie").crisp_inputs() == std::array<double, 3>{0.1, 0.1, 0.1});
  CHECK_THROWS_WITH_AS(preset("nobody"),
                       "unknown preset 'nobody'; known presets: script_kiddie hacker "
                       "disgruntled_employee terrorist industrial_spy cyber_warrior",
                       std::invalid_argument);
}

TEST_CASE("extreme corners approach the centroid limits of the edge terms") {
  // The outermost output terms are clipped at the universe bounds, so a fully
  // fired edge term has centroid 1/12 or 11/12.
  CHECK(att(0.0, 0.0, 0.0) == doctest::Approx(1.0 / 12.0).epsilon(0.03));
  CHECK(att(1.0, 1.0, 1.0) == doctest::Approx(11.0 / 12.0).epsilon(0.003));
  CHECK(std::fabs(att(0.0, 0.0, 0.0) - 1.0 / 12.0) < 0.002);
  CHECK(std::fabs(att(1.0, 1.0, 1.0) - 11.0 / 12.0) < 0.002);
  CHECK(std::fabs(suc(1.0, 0.0, 1.0, 1.0) - 11.0 / 12.0) < 0.002);
  CHECK(std::fabs(suc(0.0, 1.0, 0.0, 0.0) - 1.0 / 12.0) < 0.002);

  CHECK(att(0.0, 0.0, 0.0) == doctest::Approx(0.08300000000000002).epsilon(kFrozenTol));
  CHECK(att(1.0, 1.0, 1.0) == doctest::Approx(0.9169999999999999).epsilon(kFrozenTol));
  CHECK(suc(1.0, 0.0, 1.0, 1.0) == doctest::Approx(0.9169999999999999).epsilon(kFrozenTol));
  CHECK(suc(0.0, 1.0, 0.0, 0.0) == doctest::Approx(0.08300000000000002).epsilon(kFrozenTol));
}

TEST_CASE("frozen cross-check points") {
  CHECK(att(0.1, 0.1, 0.1) == doctest::Approx(0.1633403755868545).epsilon(kFrozenTol));
  CHECK(att(0.3, 0.7, 0.2) == doctest::Approx(0.3630434782608695).epsilon(kFrozenTol));
  CHECK(att(0.25, 0.5, 0.75) == doctest::Approx(0.42974058109544405).epsilon(kFrozenTol));
  CHECK(att(0.9, 0.9, 0.5) == doctest::Approx(0.8366596244131453).epsilon(kFrozenTol));
  CHECK(att(0.62, 0.33, 0.44) == doctest::Approx(0.40766906239790923).epsilon(kFrozenTol));

  const EvaluationResult s1 = attack_success_rate(0.5, 0.4, 0.5, 0.5);
  CHECK(s1.crisp == doctest::Approx(0.5000000000000001).epsilon(kFrozenTol));
  CHECK(s1.trace.main_active_rule == 41);
  const EvaluationResult s2 = attack_success_rate(0.16334, 0.2, 0.8, 0.9);
  CHECK(s2.crisp == doctest::Approx(0.6449417450790985).epsilon(kFrozenTol));
  CHECK(s2.trace.main_active_rule == 18);
  const EvaluationResult s3 = attack_success_rate(0.7, 0.5, 0.75, 0.7);
  CHECK(s3.crisp == doctest::Approx(0.594241862669857).epsilon(kFrozenTol));
  CHECK(s3.trace.main_active_rule == 44);
  const EvaluationResult s4 = attack_success_rate(0.33, 0.77, 0.21, 0.58);
  CHECK(s4.crisp == doctest::Approx(0.2026344791705844).epsilon(kFrozenTol));
  CHECK(s4.trace.main_active_rule == 47);
}

TEST_CASE("the pipeline feeds the attacker score into the profile input unchanged") {
  const PipelineResult result = run_pipeline(0.0, 0.0, 0.0, 1.0, 0.0, 0.0);
  CHECK(result.score == doctest::Approx(0.08300000000000002).epsilon(kFrozenTol));
  CHECK(result.rate == doctest::Approx(0.08501014987046208).epsilon(kFrozenTol));
  CHECK(result.score_trace.crisp == result.score);
  CHECK(result.rate_trace.crisp == result.rate);
  CHECK(result.rate_trace.inputs[0].second == result.score);  // bitwise composition
  CHECK(result.rate == attack_success_rate(result.score, 1.0, 0.0, 0.0).crisp);

  // A custom grid flows through both stages.
  const PipelineResult coarse = run_pipeline(0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 101);
  CHECK(std::fabs(coarse.score - result.score) < 5e-3);
  CHECK(std::fabs(coarse.rate - result.rate) < 5e-3);
}

TEST_CASE("knowledge dominates resources, motivation trails far behind") {
  // Average response span per input, evaluated on a 21^3 grid: the mean span
  // along the knowledge axis must exceed resources, with motivation smallest.
  constexpr int kSteps = 21;
  const Evaluator evaluator(attacker_profile_fis());
  const auto grid_value = [](int i) { return static_cast<double>(i) / (kSteps - 1); };

  double span_sum[3] = {0.0, 0.0, 0.0};
  for (int axis = 0; axis < 3; ++axis) {
    for (int u = 0; u < kSteps; ++u) {
      for (int v = 0; v < kSteps; ++v) {
        double lo = 1.0;
        double hi = 0.0;
        for (int w = 0; w < kSteps; ++w) {
          std::array<double, 3> inputs{};
          inputs[static_cast<std::size_t>(axis)] = grid_value(w);
          inputs[static_cast<std::size_t>((axis + 1) % 3)] = grid_value(u);
          inputs[static_cast<std::size_t>((axis + 2) % 3)] = grid_value(v);
          const double value = evaluator.crisp(inputs);
          lo = std::min(lo, value);
          hi = std::max(hi, value);
        }
        span_sum[axis] += hi - lo;
      }
    }
  }
  const double denom = static_cast<double>(kSteps) * kSteps;
  const double resources_span = span_sum[0] / denom;
  const double knowledge_span = span_sum[1] / denom;
  const double motivation_span = span_sum[2] / denom;
  CHECK(knowledge_span == doctest::Approx(0.440629).epsilon(1e-4));
  CHECK(resources_span == doctest::Approx(0.354800).epsilon(1e-4));
  CHECK(motivation_span == doctest::Approx(0.094646).epsilon(1e-4));
  CHECK(knowledge_span > resources_span);
  CHECK(resources_span > motivation_span);
}

TEST_CASE("outputs stay inside the reachable centroid band") {
  constexpr int kSteps = 11;
  const Evaluator attacker(attacker_profile_fis());
  const Evaluator success(success_rate_fis());
  const auto grid_value = [](int i) { return static_cast<double>(i) / (kSteps - 1); };

  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < kSteps; ++i) {
    for (int j = 0; j < kSteps; ++j) {
      for (int k = 0; k < kSteps; ++k) {
        const double value =
            attacker.crisp(std::array<double, 3>{grid_value(i), grid_value(j), grid_value(k)});
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
    }
  }
  CHECK(lo == doctest::Approx(0.08300000000000002).epsilon(kFrozenTol));
  CHECK(hi == doctest::Approx(0.9169999999999999).epsilon(kFrozenTol));

  // Coarser scan for the four-input model; the corners still hit the band
  // edges and nothing escapes it.
  constexpr int kSteps4 = 6;
  const auto grid_value4 = [](int i) { return static_cast<double>(i) / (kSteps4 - 1); };
  for (int i = 0; i < kSteps4; ++i) {
    for (int j = 0; j < kSteps4; ++j) {
      for (int k = 0; k < kSteps4; ++k) {
        for (int l = 0; l < kSteps4; ++l) {
          const double value = success.crisp(std::array<double, 4>{
              grid_value4(i), grid_value4(j), grid_value4(k), grid_value4(l)});
          CHECK(value >= 0.083 - 1e-9);
          CHECK(value <= 0.917 + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("reference sweep catalogue is well formed") {
  const std::vector<ReferenceSweep> sweeps = reference_sweeps();
  REQUIRE(sweeps.size() == 11);
  std::vector<std::string> names;
  for (const ReferenceSweep& s : sweeps) {
    names.emplace_back(s.name);
    CHECK(builtin_model(s.model) != nullptr);
    CHECK(s.request.steps == kDefaultSweepSteps);
    // Axes plus fixed inputs exactly cover the model inputs.
    const FisDefinition* fis = builtin_model(s.model);
    CHECK(s.request.axes.size() + s.request.fixed.size() == fis->inputs.size());
  }
  std::sort(names.begin(), names.end());
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}
