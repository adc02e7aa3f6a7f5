// Command-line front end: eval, pipeline, preset, rules, sweep, validate.
//
// Exit codes: 0 success, 1 usage or input error, 2 model parse/validation
// error, 3 evaluation error (no rule fired).

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzrisk/detail/number_format.hpp"
#include "fuzzrisk/dsl.hpp"
#include "fuzzrisk/inference.hpp"
#include "fuzzrisk/models.hpp"
#include "fuzzrisk/surface.hpp"
#include "fuzzrisk/validate.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitModel = 2;
constexpr int kExitEvaluation = 3;

using fuzzrisk::detail::format_number;

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

// FUZZRISK_GRID overrides the defuzzification grid resolution.
bool read_grid_env(int& grid) {
  grid = fuzzrisk::kDefaultGridSize;
  const char* env = std::getenv("FUZZRISK_GRID");
  if (!env || *env == '\0') return true;
  int value = 0;
  const char* last = env + std::string_view(env).size();
  auto [ptr, ec] = std::from_chars(env, last, value);
  if (ec != std::errc() || ptr != last || value < 101) {
    std::cerr << "error: FUZZRISK_GRID must be an integer >= 101, got '" << env << "'\n";
    return false;
  }
  grid = value;
  return true;
}

struct LoadedModel {
  const fuzzrisk::FisDefinition* fis = nullptr;
  std::optional<fuzzrisk::FisDefinition> owned;  // set when loaded from a file
};

// Resolves a built-in name or loads and validates a model file. Returns exit
// code kExitOk on success.
int load_model(const std::string& spec, LoadedModel& out) {
  if (const fuzzrisk::FisDefinition* builtin = fuzzrisk::builtin_model(spec)) {
    out.fis = builtin;
    return kExitOk;
  }
  std::ifstream file(spec);
  if (!file) {
    std::cerr << "error: unknown model '" << spec
              << "' (built-ins: attacker, success; otherwise pass a readable model file)\n";
    return kExitModel;
  }
  std::ostringstream text;
  text << file.rdbuf();
  fuzzrisk::ParseResult parsed = fuzzrisk::parse_model(text.str());
  for (const fuzzrisk::ParseDiagnostic& d : parsed.diagnostics) {
    std::cerr << spec << ": " << fuzzrisk::format_diagnostic(d) << "\n";
  }
  if (!parsed.ok()) return kExitModel;
  out.owned = std::move(parsed.model);
  out.fis = &*out.owned;
  // Parse diagnostics already include the rule-base warnings; only the
  // validation errors (e.g. a universe coverage gap) are new here.
  bool has_error = false;
  for (const fuzzrisk::Diagnostic& d : fuzzrisk::validate_fis(*out.fis)) {
    if (d.severity == fuzzrisk::Severity::error) {
      std::cerr << spec << ": " << fuzzrisk::format_diagnostic(d) << "\n";
      has_error = true;
    }
  }
  return has_error ? kExitModel : kExitOk;
}

// Parses "name=value"; reports its own errors.
bool split_assignment(const std::string& text, std::string& name, std::string& value) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    std::cerr << "error: expected name=value, got '" << text << "'\n";
    return false;
  }
  name = text.substr(0, eq);
  value = text.substr(eq + 1);
  return true;
}

bool parse_value(const std::string& name, const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(out)) {
    std::cerr << "error: invalid value for input '" << name << "': '" << text << "'\n";
    return false;
  }
  return true;
}

void warn_if_clamped(const fuzzrisk::LinguisticVariable& input, double value) {
  if (value < input.lo() || value > input.hi()) {
    std::cerr << "warning: " << input.name() << "=" << format_number(value) << " outside ["
              << format_number(input.lo()) << ", " << format_number(input.hi())
              << "]; clamping\n";
  }
}

// Maps --in assignments onto the model's inputs (names matched
// case-insensitively) and warns about clamped values.
int collect_inputs(const fuzzrisk::FisDefinition& fis, const std::vector<std::string>& given,
                   std::vector<double>& values) {
  values.assign(fis.inputs.size(), 0.0);
  std::vector<bool> assigned(fis.inputs.size(), false);
  for (const std::string& item : given) {
    std::string name;
    std::string text;
    if (!split_assignment(item, name, text)) return kExitUsage;
    const std::string folded = to_lower(name);
    int idx = -1;
    for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
      if (to_lower(fis.inputs[i].name()) == folded) idx = static_cast<int>(i);
    }
    if (idx < 0) {
      std::cerr << "error: unknown input: " << name << " (model inputs:";
      for (const auto& input : fis.inputs) std::cerr << " " << input.name();
      std::cerr << ")\n";
      return kExitUsage;
    }
    if (assigned[static_cast<std::size_t>(idx)]) {
      std::cerr << "error: duplicate input: " << fis.inputs[static_cast<std::size_t>(idx)].name()
                << "\n";
      return kExitUsage;
    }
    double value = 0.0;
    if (!parse_value(name, text, value)) return kExitUsage;
    assigned[static_cast<std::size_t>(idx)] = true;
    values[static_cast<std::size_t>(idx)] = value;
  }
  for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
    if (!assigned[i]) {
      std::cerr << "error: missing input: " << fis.inputs[i].name() << "\n";
      return kExitUsage;
    }
    warn_if_clamped(fis.inputs[i], values[i]);
  }
  return kExitOk;
}

nlohmann::ordered_json trace_document(const fuzzrisk::FisDefinition& fis,
                                      const fuzzrisk::EvaluationTrace& trace) {
  return nlohmann::ordered_json::parse(fuzzrisk::trace_to_json(fis, trace));
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string model;
  std::vector<std::string> inputs;
  std::string format = "text";
  bool trace = false;
};

int run_eval(const EvalArgs& args, int grid) {
  LoadedModel model;
  if (int rc = load_model(args.model, model); rc != kExitOk) return rc;
  std::vector<double> values;
  if (int rc = collect_inputs(*model.fis, args.inputs, values); rc != kExitOk) return rc;

  const fuzzrisk::EvaluationResult result = fuzzrisk::Evaluator(*model.fis, grid).evaluate(values);
  if (args.format == "json") {
    if (args.trace) {
      std::cout << trace_document(*model.fis, result.trace).dump(2) << "\n";
    } else {
      nlohmann::ordered_json doc;
      doc["model"] = model.fis->name;
      nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
      for (const auto& [name, value] : result.trace.inputs) inputs[name] = value;
      doc["inputs"] = std::move(inputs);
      doc["value"] = result.crisp;
      std::cout << doc.dump(2) << "\n";
    }
  } else {
    std::cout << format_number(result.crisp) << "\n";
    if (args.trace) {
      std::cout << fuzzrisk::trace_to_json(*model.fis, result.trace) << "\n";
    }
  }
  return kExitOk;
}

// --- pipeline ----------------------------------------------------------------

struct PipelineArgs {
  double resources = 0.0;
  double knowledge = 0.0;
  double motivation = 0.0;
  double protection = 0.0;
  double vulnerabilities = 0.0;
  double restore_cost = 0.0;
  std::string format = "text";
  bool trace = false;
};

int run_pipeline_cmd(const PipelineArgs& args, int grid) {
  const fuzzrisk::FisDefinition& attacker = fuzzrisk::attacker_profile_fis();
  const fuzzrisk::FisDefinition& success = fuzzrisk::success_rate_fis();
  const double stage_one[] = {args.resources, args.knowledge, args.motivation};
  for (std::size_t i = 0; i < 3; ++i) warn_if_clamped(attacker.inputs[i], stage_one[i]);
  const double stage_two[] = {args.protection, args.vulnerabilities, args.restore_cost};
  for (std::size_t i = 0; i < 3; ++i) warn_if_clamped(success.inputs[i + 1], stage_two[i]);

  const fuzzrisk::PipelineResult result =
      fuzzrisk::run_pipeline(args.resources, args.knowledge, args.motivation, args.protection,
                             args.vulnerabilities, args.restore_cost, grid);
  if (args.format == "json") {
    nlohmann::ordered_json doc;
    doc["score"] = result.score;
    doc["rate"] = result.rate;
    if (args.trace) {
      doc["score_trace"] = trace_document(attacker, result.score_trace);
      doc["rate_trace"] = trace_document(success, result.rate_trace);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "score: " << format_number(result.score) << "\n";
    std::cout << "rate: " << format_number(result.rate) << "\n";
    if (args.trace) {
      std::cout << fuzzrisk::trace_to_json(attacker, result.score_trace) << "\n";
      std::cout << fuzzrisk::trace_to_json(success, result.rate_trace) << "\n";
    }
  }
  return kExitOk;
}

// --- preset ------------------------------------------------------------------

struct PresetArgs {
  std::string name;
  std::string format = "text";
};

int run_preset(const PresetArgs& args, int grid) {
  const fuzzrisk::AttackerPreset* preset = nullptr;
  try {
    preset = &fuzzrisk::preset(args.name);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto inputs = preset->crisp_inputs();
  const fuzzrisk::EvaluationResult result =
      fuzzrisk::score_attacker(inputs[0], inputs[1], inputs[2], grid);
  const fuzzrisk::FisDefinition& fis = fuzzrisk::attacker_profile_fis();

  if (args.format == "json") {
    nlohmann::ordered_json doc;
    doc["preset"] = std::string(preset->name);
    nlohmann::ordered_json levels = nlohmann::ordered_json::object();
    nlohmann::ordered_json given = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < 3; ++i) {
      levels[fis.inputs[i].name()] = std::string(fuzzrisk::to_label(preset->levels[i]));
      given[fis.inputs[i].name()] = inputs[i];
    }
    doc["levels"] = std::move(levels);
    doc["inputs"] = std::move(given);
    doc["score"] = result.crisp;
    doc["main_active_rule"] = result.trace.main_active_rule;
    doc["expected_main_rule"] = preset->expected_main_rule;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "preset: " << preset->name << "\n";
    for (std::size_t i = 0; i < 3; ++i) {
      std::cout << fis.inputs[i].name() << ": " << format_number(inputs[i]) << " ("
                << fuzzrisk::to_label(preset->levels[i]) << ")\n";
    }
    std::cout << "score: " << format_number(result.crisp) << "\n";
    std::cout << "main_active_rule: " << result.trace.main_active_rule << "\n";
    std::cout << "expected_main_rule: " << preset->expected_main_rule << "\n";
  }
  return kExitOk;
}

// --- rules -------------------------------------------------------------------

struct RulesArgs {
  std::string model;
  std::string format = "text";
};

int run_rules(const RulesArgs& args) {
  LoadedModel model;
  if (int rc = load_model(args.model, model); rc != kExitOk) return rc;
  const fuzzrisk::FisDefinition& fis = *model.fis;

  if (args.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const fuzzrisk::Rule& rule : fis.rules) {
      nlohmann::ordered_json entry;
      entry["index"] = rule.index;
      nlohmann::ordered_json antecedents = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
        antecedents[fis.inputs[i].name()] = rule.antecedents[i];
      }
      entry["antecedents"] = std::move(antecedents);
      entry["consequent"] = rule.consequent;
      doc.push_back(std::move(entry));
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# index";
    for (const auto& input : fis.inputs) std::cout << "  " << input.name();
    std::cout << "  ->  " << fis.output.name() << "\n";
    for (const fuzzrisk::Rule& rule : fis.rules) {
      std::cout << rule.index;
      for (const std::string& label : rule.antecedents) std::cout << "  " << label;
      std::cout << "  ->  " << rule.consequent << "\n";
    }
  }
  return kExitOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
  std::string model;
  std::string x_axis;
  std::string y_axis;
  std::vector<std::string> fixed;
  int steps = fuzzrisk::kDefaultSweepSteps;
  std::string format = "csv";
  std::string out_path;
};

int run_sweep(const SweepArgs& args, int grid) {
  LoadedModel model;
  if (int rc = load_model(args.model, model); rc != kExitOk) return rc;
  const fuzzrisk::FisDefinition& fis = *model.fis;

  // Axis and fixed-input names are matched case-insensitively, like --in.
  const auto resolve_name = [&fis](const std::string& name) -> std::optional<std::string> {
    const std::string folded = to_lower(name);
    for (const auto& input : fis.inputs) {
      if (to_lower(input.name()) == folded) return input.name();
    }
    return std::nullopt;
  };

  fuzzrisk::SweepRequest request;
  request.steps = args.steps;
  for (const std::string* axis : {&args.x_axis, &args.y_axis}) {
    if (axis->empty()) continue;
    if (auto name = resolve_name(*axis)) {
      request.axes.push_back(*name);
    } else {
      std::cerr << "error: unknown sweep axis '" << *axis << "'\n";
      return kExitUsage;
    }
  }
  for (const std::string& item : args.fixed) {
    std::string name;
    std::string text;
    if (!split_assignment(item, name, text)) return kExitUsage;
    double value = 0.0;
    if (!parse_value(name, text, value)) return kExitUsage;
    auto resolved = resolve_name(name);
    if (!resolved) {
      std::cerr << "error: unknown fixed input '" << name << "'\n";
      return kExitUsage;
    }
    const int idx = fis.input_index(*resolved);
    warn_if_clamped(fis.inputs[static_cast<std::size_t>(idx)], value);
    request.fixed.emplace_back(*resolved, value);
  }

  fuzzrisk::SweepResult result;
  try {
    result = fuzzrisk::sweep(fis, request, grid);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string rendered =
      args.format == "json" ? fuzzrisk::export_json(result) + "\n" : fuzzrisk::export_csv(result);
  if (args.out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(args.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << args.out_path << "'\n";
      return kExitUsage;
    }
    out << rendered;
  }
  return kExitOk;
}

// --- validate ----------------------------------------------------------------

int run_validate(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    std::cerr << "error: cannot open model file '" << path << "'\n";
    return kExitModel;
  }
  std::ostringstream text;
  text << file.rdbuf();
  const fuzzrisk::ParseResult parsed = fuzzrisk::parse_model(text.str());

  int errors = 0;
  int warnings = 0;
  for (const fuzzrisk::ParseDiagnostic& d : parsed.diagnostics) {
    std::cout << path << ": " << fuzzrisk::format_diagnostic(d) << "\n";
    (d.severity == fuzzrisk::Severity::error ? errors : warnings) += 1;
  }
  if (parsed.ok()) {
    // Parse diagnostics already carry the rule-base warnings; add the
    // remaining structural errors (universe coverage).
    for (const fuzzrisk::Diagnostic& d : fuzzrisk::validate_fis(*parsed.model)) {
      if (d.severity == fuzzrisk::Severity::error) {
        std::cout << path << ": " << fuzzrisk::format_diagnostic(d) << "\n";
        errors += 1;
      }
    }
    std::cout << "model '" << parsed.model->name << "': " << parsed.model->inputs.size()
              << " inputs, " << parsed.model->rules.size() << " rules, " << errors << " errors, "
              << warnings << " warnings\n";
  }
  return errors > 0 ? kExitModel : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy attacker-profile and attack-success-rate scoring"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a model at one input point");
  eval_cmd->add_option("--model", eval_args.model, "Built-in model name or model file path")
      ->required();
  eval_cmd->add_option("--in", eval_args.inputs, "Input as name=value (repeatable)");
  eval_cmd->add_flag("--trace", eval_args.trace, "Emit the full evaluation trace (JSON)");
  eval_cmd->add_option("--format", eval_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  PipelineArgs pipeline_args;
  CLI::App* pipeline_cmd =
      app.add_subcommand("pipeline", "Score an attacker, then the attack success rate");
  pipeline_cmd->add_option("--resources", pipeline_args.resources)->required();
  pipeline_cmd->add_option("--knowledge", pipeline_args.knowledge)->required();
  pipeline_cmd->add_option("--motivation", pipeline_args.motivation)->required();
  pipeline_cmd->add_option("--protection", pipeline_args.protection)->required();
  pipeline_cmd->add_option("--vulnerabilities", pipeline_args.vulnerabilities)->required();
  pipeline_cmd->add_option("--restore-cost", pipeline_args.restore_cost)->required();
  pipeline_cmd->add_flag("--trace", pipeline_args.trace, "Emit both evaluation traces (JSON)");
  pipeline_cmd->add_option("--format", pipeline_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  PresetArgs preset_args;
  CLI::App* preset_cmd = app.add_subcommand("preset", "Evaluate a named attacker preset");
  preset_cmd->add_option("name", preset_args.name, "Preset name")->required();
  preset_cmd->add_option("--format", preset_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  RulesArgs rules_args;
  CLI::App* rules_cmd = app.add_subcommand("rules", "Print a model's rule base");
  rules_cmd->add_option("--model", rules_args.model, "Built-in model name or model file path")
      ->required();
  rules_cmd->add_option("--format", rules_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Export a response curve or surface (CSV or JSON)");
  sweep_cmd->add_option("--model", sweep_args.model, "Built-in model name or model file path")
      ->required();
  sweep_cmd->add_option("--x", sweep_args.x_axis, "First sweep axis (input name)")->required();
  sweep_cmd->add_option("--y", sweep_args.y_axis, "Second sweep axis (input name)");
  sweep_cmd->add_option("--fix", sweep_args.fixed, "Fixed input as name=value (repeatable)");
  sweep_cmd->add_option("--steps", sweep_args.steps, "Samples per axis (default 51)");
  sweep_cmd->add_option("--format", sweep_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep_args.out_path, "Write to a file instead of stdout");

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Parse and validate a model file");
  validate_cmd->add_option("file", validate_path, "Model file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  int grid = fuzzrisk::kDefaultGridSize;
  if (!read_grid_env(grid)) return kExitUsage;

  try {
    if (*eval_cmd) return run_eval(eval_args, grid);
    if (*pipeline_cmd) return run_pipeline_cmd(pipeline_args, grid);
    if (*preset_cmd) return run_preset(preset_args, grid);
    if (*rules_cmd) return run_rules(rules_args);
    if (*sweep_cmd) return run_sweep(sweep_args, grid);
    if (*validate_cmd) return run_validate(validate_path);
  } catch (const fuzzrisk::EmptyAggregateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
