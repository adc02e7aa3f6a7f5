#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "fuzzrisk/fis.hpp"
#include "fuzzrisk/inference.hpp"
#include "fuzzrisk/surface.hpp"

namespace fuzzrisk {

/// Linguistic level of a built-in model input.
enum class Level { small = 0, medium = 1, big = 2 };

/// Linguistic level of a built-in model output.
enum class OutputLevel { very_small = 0, small = 1, medium = 2, big = 3, very_big = 4 };

std::string_view to_label(Level level);
std::string_view to_label(OutputLevel level);

/// Crisp representative of a level on [0, 1]: 0.1 / 0.5 / 0.9.
double level_crisp(Level level);

/// 1-based lexicographic position of a level combination, first input most
/// significant: 1 + sum(level_i * 3^(arity-1-i)).
int rule_index(std::span<const Level> levels);

/// Consequent level for the attacker-profile model at the given input levels
/// (resources, knowledge, motivation).
OutputLevel attacker_consequent(Level resources, Level knowledge, Level motivation);

/// Consequent level for the attack-success-rate model at the given input
/// levels (attacker profile, protection, vulnerabilities, restore cost).
OutputLevel success_consequent(Level profile, Level protection, Level vulnerabilities,
                               Level restore_cost);

/// All 27 attacker-profile rules in index order.
std::vector<Rule> complete_attacker_rule_base();

/// All 81 attack-success-rate rules in index order.
std::vector<Rule> complete_success_rule_base();

FisDefinition build_attacker_profile_fis();
FisDefinition build_success_rate_fis();

/// Cached immutable instances for repeated use.
const FisDefinition& attacker_profile_fis();
const FisDefinition& success_rate_fis();

/// Resolves a built-in model name ("attacker" or "success", also the full
/// model names); nullptr when unknown.
const FisDefinition* builtin_model(std::string_view name);

struct AttackerPreset {
  std::string_view name;
  std::array<Level, 3> levels;  // resources, knowledge, motivation
  int expected_main_rule = 0;

  std::array<double, 3> crisp_inputs() const;
};

std::span<const AttackerPreset> attacker_presets();

/// Preset by name; throws std::invalid_argument listing the known names.
const AttackerPreset& preset(std::string_view name);

EvaluationResult score_attacker(double resources, double knowledge, double motivation,
                                int grid_size = kDefaultGridSize);

EvaluationResult attack_success_rate(double profile_score, double protection,
                                     double vulnerabilities, double restore_cost,
                                     int grid_size = kDefaultGridSize);

struct PipelineResult {
  double score = 0.0;
  double rate = 0.0;
  EvaluationTrace score_trace;
  EvaluationTrace rate_trace;
};

/// Two-stage evaluation: the attacker score feeds the success model's profile
/// input unchanged.
PipelineResult run_pipeline(double resources, double knowledge, double motivation,
                            double protection, double vulnerabilities, double restore_cost,
                            int grid_size = kDefaultGridSize);

/// Named response curve/surface configurations for the built-in models; these
/// are the documented reference figures.
struct ReferenceSweep {
  std::string_view name;
  std::string_view model;
  SweepRequest request;
};

std::vector<ReferenceSweep> reference_sweeps();

}  // namespace fuzzrisk
