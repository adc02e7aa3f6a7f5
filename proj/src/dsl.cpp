#include "fuzzrisk/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "fuzzrisk/validate.hpp"
#include "fuzzrisk/detail/number_format.hpp"

namespace fuzzrisk {

namespace {

struct Token {
  std::string text;
  int column = 0;       // 1-based
  bool quoted = false;  // string literal, quotes stripped
};

bool is_reserved(const std::string& word) {
  static const std::unordered_set<std::string> kReserved = {
      "fis", "input", "output", "term", "rule", "if", "then", "and", "is", "range", "tri", "trap"};
  return kReserved.contains(word);
}

bool is_identifier(const std::string& word) {
  if (word.empty()) return false;
  const auto head = static_cast<unsigned char>(word.front());
  if (!std::isalpha(head) && word.front() != '_') return false;
  for (char ch : word) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && ch != '_') return false;
  }
  return true;
}

bool parse_number(const std::string& word, double& out) {
  const char* first = word.data();
  const char* last = word.data() + word.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

using detail::format_number;

struct VariableDecl {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Term> terms;
  int line = 0;
};

struct RuleDecl {
  std::vector<std::string> antecedents;  // normalized to input declaration order
  std::string consequent;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view source) {
    std::size_t start = 0;
    while (start <= source.size()) {
      std::size_t end = source.find('\n', start);
      if (end == std::string_view::npos) end = source.size();
      std::string_view line = source.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.emplace_back(line);
      if (end == source.size()) break;
      start = end + 1;
    }
    if (lines_.empty()) lines_.emplace_back("");
  }

  ParseResult run() {
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      line_no_ = static_cast<int>(i) + 1;
      if (!tokenize(lines_[i])) continue;
      if (tokens_.empty()) continue;
      cursor_ = 0;
      parse_statement();
    }
    finalize();

    ParseResult result;
    bool has_error = false;
    for (const ParseDiagnostic& d : diags_) {
      if (d.severity == Severity::error) has_error = true;
    }
    // build() may add completeness warnings, so move the diagnostics after.
    if (!has_error) result.model = build();
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  // --- diagnostics -------------------------------------------------------

  void error(int column, std::string message) {
    diags_.push_back({Severity::error, line_no_, column, std::move(message)});
  }

  void warning(int line, int column, std::string message) {
    diags_.push_back({Severity::warning, line, column, std::move(message)});
  }

  int end_column() const {
    return static_cast<int>(lines_[static_cast<std::size_t>(line_no_ - 1)].size()) + 1;
  }

  // --- lexing ------------------------------------------------------------

  bool tokenize(const std::string& line) {
    tokens_.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      const char ch = line[i];
      if (ch == ' ' || ch == '\t') {
        ++i;
        continue;
      }
      if (ch == '#') break;
      if (ch == '"') {
        const std::size_t close = line.find('"', i + 1);
        if (close == std::string::npos) {
          // A broken header line still counts as a header attempt; reporting
          // "missing 'fis' header" on top of the lexical error would mislead.
          if (!tokens_.empty() && !tokens_[0].quoted && tokens_[0].text == "fis") {
            header_attempted_ = true;
          }
          error(static_cast<int>(i) + 1, "unterminated string literal");
          return false;
        }
        tokens_.push_back({line.substr(i + 1, close - i - 1), static_cast<int>(i) + 1, true});
        i = close + 1;
        continue;
      }
      std::size_t end = i;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '#' &&
             line[end] != '"') {
        ++end;
      }
      tokens_.push_back({line.substr(i, end - i), static_cast<int>(i) + 1, false});
      i = end;
    }
    return true;
  }

  // --- token cursor (per line) -------------------------------------------

  bool at_end() const { return cursor_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[cursor_]; }
  const Token& take() { return tokens_[cursor_++]; }

  bool expect_keyword(const char* keyword) {
    if (at_end()) {
      error(end_column(), std::string("expected '") + keyword + "'");
      return false;
    }
    const Token& tok = take();
    if (tok.quoted || tok.text != keyword) {
      error(tok.column, std::string("expected '") + keyword + "', got '" + tok.text + "'");
      return false;
    }
    return true;
  }

  // Returns nullptr on failure (diagnostic already emitted).
  const Token* expect_identifier(const char* what) {
    if (at_end()) {
      error(end_column(), std::string("expected ") + what);
      return nullptr;
    }
    const Token& tok = take();
    if (tok.quoted) {
      error(tok.column, std::string("expected ") + what + ", got a string literal");
      return nullptr;
    }
    if (is_reserved(tok.text)) {
      error(tok.column, "'" + tok.text + "' is a reserved word and cannot be used as " + what);
      return nullptr;
    }
    if (!is_identifier(tok.text)) {
      error(tok.column, std::string("expected ") + what + ", got '" + tok.text + "'");
      return nullptr;
    }
    return &tok;
  }

  bool expect_number(const char* what, double& out) {
    if (at_end()) {
      error(end_column(), std::string("expected ") + what);
      return false;
    }
    const Token& tok = take();
    if (tok.quoted || !parse_number(tok.text, out)) {
      error(tok.column, std::string("expected ") + what + ", got '" + tok.text + "'");
      return false;
    }
    return true;
  }

  bool expect_line_end() {
    if (at_end()) return true;
    error(peek().column, "unexpected trailing token '" + peek().text + "'");
    return false;
  }

  // --- statements ----------------------------------------------------------

  void parse_statement() {
    const Token& head = peek();
    if (head.quoted) {
      error(head.column, "unexpected string literal at start of statement");
      return;
    }
    if (head.text == "fis") {
      parse_header();
    } else if (head.text == "input") {
      parse_variable(/*is_output=*/false);
    } else if (head.text == "output") {
      parse_variable(/*is_output=*/true);
    } else if (head.text == "term") {
      parse_term();
    } else if (head.text == "rule") {
      parse_rule();
    } else {
      error(head.column, "unknown statement '" + head.text + "'");
    }
  }

  void parse_header() {
    const Token& keyword = take();
    header_attempted_ = true;
    if (name_) {
      error(keyword.column, "duplicate 'fis' header");
      return;
    }
    if (!inputs_.empty() || output_ || rules_started_) {
      error(keyword.column, "'fis' header must be the first statement");
      return;
    }
    if (at_end()) {
      error(end_column(), "expected a quoted model name");
      return;
    }
    const Token& name = take();
    if (!name.quoted) {
      error(name.column, "expected a quoted model name, got '" + name.text + "'");
      return;
    }
    if (!expect_line_end()) return;
    name_ = name.text;
    header_line_ = line_no_;
  }

  void parse_variable(bool is_output) {
    const Token& keyword = take();
    open_variable_ = nullptr;
    if (rules_started_) {
      error(keyword.column, std::string(is_output ? "output" : "input") +
                                " declared after the first rule");
      return;
    }
    if (is_output && output_) {
      error(keyword.column, "duplicate output declaration");
      return;
    }
    const Token* name = expect_identifier(is_output ? "an output name" : "an input name");
    if (!name) return;
    if (!is_output && output_) {
      error(name->column, "input '" + name->text + "' declared after the output");
      return;
    }
    for (const VariableDecl& input : inputs_) {
      if (input.name == name->text) {
        error(name->column, "duplicate variable '" + name->text + "'");
        return;
      }
    }
    if (output_ && output_->name == name->text) {
      error(name->column, "duplicate variable '" + name->text + "'");
      return;
    }
    double lo = 0.0;
    double hi = 0.0;
    if (!expect_keyword("range") || !expect_number("the range lower bound", lo) ||
        !expect_number("the range upper bound", hi) || !expect_line_end()) {
      return;
    }
    if (!(lo < hi)) {
      error(keyword.column, "invalid range for '" + name->text + "': lower bound must be below upper bound");
      return;
    }
    VariableDecl decl;
    decl.name = name->text;
    decl.lo = lo;
    decl.hi = hi;
    decl.line = line_no_;
    if (is_output) {
      output_ = std::move(decl);
      open_variable_ = &*output_;
    } else {
      inputs_.push_back(std::move(decl));
      open_variable_ = &inputs_.back();
    }
  }

  void parse_term() {
    const Token& keyword = take();
    if (rules_started_) {
      error(keyword.column, "term declared after the first rule");
      return;
    }
    if (!open_variable_) {
      error(keyword.column, "term outside an input or output declaration");
      return;
    }
    const Token* label = expect_identifier("a term label");
    if (!label) return;
    for (const Term& existing : open_variable_->terms) {
      if (existing.label == label->text) {
        error(label->column,
              "duplicate term '" + label->text + "' in variable '" + open_variable_->name + "'");
        return;
      }
    }
    if (at_end()) {
      error(end_column(), "expected a shape ('tri' or 'trap')");
      return;
    }
    const Token& shape = take();
    int arity = 0;
    if (!shape.quoted && shape.text == "tri") {
      arity = 3;
    } else if (!shape.quoted && shape.text == "trap") {
      arity = 4;
    } else if (!shape.quoted && (shape.text == "gauss" || shape.text == "bell")) {
      error(shape.column, "shape '" + shape.text + "' is reserved and not supported");
      return;
    } else {
      error(shape.column, "unknown shape '" + shape.text + "'; expected 'tri' or 'trap'");
      return;
    }
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < arity; ++i) {
      if (!expect_number("a breakpoint", p[i])) return;
    }
    if (!expect_line_end()) return;
    const bool ordered = arity == 3 ? (p[0] <= p[1] && p[1] <= p[2] && p[0] < p[2])
                                    : (p[0] <= p[1] && p[1] <= p[2] && p[2] <= p[3] && p[0] < p[3]);
    if (!ordered) {
      error(shape.column, "invalid breakpoints for term '" + label->text +
                              "': must be non-decreasing with positive width");
      return;
    }
    open_variable_->terms.push_back(
        {label->text, arity == 3 ? MembershipFunction::triangular(p[0], p[1], p[2])
                                 : MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])});
  }

  void parse_rule() {
    const Token& keyword = take();
    open_variable_ = nullptr;
    rules_started_ = true;
    if (!output_) {
      error(keyword.column, "rule before the output declaration");
      return;
    }
    if (!expect_keyword("if")) return;

    std::map<std::size_t, std::string> clauses;  // input position -> term label
    while (true) {
      const Token* variable = expect_identifier("an input name");
      if (!variable) return;
      int input_idx = -1;
      for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (inputs_[i].name == variable->text) input_idx = static_cast<int>(i);
      }
      if (input_idx < 0) {
        if (output_ && output_->name == variable->text) {
          error(variable->column,
                "clause tests output '" + variable->text + "'; only inputs may appear before 'then'");
        } else {
          error(variable->column, "unknown input '" + variable->text + "' in rule");
        }
        return;
      }
      if (!expect_keyword("is")) return;
      const Token* label = expect_identifier("a term label");
      if (!label) return;
      const VariableDecl& input = inputs_[static_cast<std::size_t>(input_idx)];
      bool known = false;
      for (const Term& term : input.terms) known = known || term.label == label->text;
      if (!known) {
        error(label->column, "unknown term '" + label->text + "' for input '" + input.name + "'");
        return;
      }
      if (!clauses.emplace(static_cast<std::size_t>(input_idx), label->text).second) {
        error(variable->column, "duplicate clause for input '" + input.name + "'");
        return;
      }
      if (at_end()) {
        error(end_column(), "expected 'and' or 'then'");
        return;
      }
      const Token& link = take();
      if (!link.quoted && link.text == "and") continue;
      if (!link.quoted && link.text == "then") break;
      error(link.column, "expected 'and' or 'then', got '" + link.text + "'");
      return;
    }

    const Token* consequent_var = expect_identifier("the output name");
    if (!consequent_var) return;
    if (consequent_var->text != output_->name) {
      error(consequent_var->column,
            "rule assigns '" + consequent_var->text + "'; the output is '" + output_->name + "'");
      return;
    }
    if (!expect_keyword("is")) return;
    const Token* consequent = expect_identifier("an output term label");
    if (!consequent) return;
    bool known = false;
    for (const Term& term : output_->terms) known = known || term.label == consequent->text;
    if (!known) {
      error(consequent->column,
            "unknown term '" + consequent->text + "' for output '" + output_->name + "'");
      return;
    }
    if (!expect_line_end()) return;

    if (clauses.size() != inputs_.size()) {
      std::ostringstream msg;
      msg << "rule must name every input; missing:";
      for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (!clauses.contains(i)) msg << " " << inputs_[i].name;
      }
      error(keyword.column, msg.str());
      return;
    }

    RuleDecl rule;
    rule.line = line_no_;
    rule.antecedents.reserve(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      rule.antecedents.push_back(clauses.at(i));
    }
    rule.consequent = consequent->text;

    auto [it, inserted] = rule_by_antecedents_.emplace(rule.antecedents,
                                                       static_cast<int>(rules_.size()) + 1);
    if (!inserted) {
      error(keyword.column,
            "duplicate rule: same antecedent combination as rule " + std::to_string(it->second));
      return;
    }
    rules_.push_back(std::move(rule));
  }

  // --- finalization --------------------------------------------------------

  void finalize() {
    const int eof_line = static_cast<int>(lines_.size());
    if (!name_ && !header_attempted_) {
      diags_.insert(diags_.begin(), {Severity::error, 1, 1, "missing 'fis' header"});
    }
    if (inputs_.empty()) {
      diags_.push_back({Severity::error, eof_line, 1, "model declares no inputs"});
    }
    if (!output_) {
      diags_.push_back({Severity::error, eof_line, 1, "missing output declaration"});
    }
    for (const VariableDecl& input : inputs_) {
      if (input.terms.empty()) {
        diags_.push_back({Severity::error, input.line, 1,
                          "variable '" + input.name + "' declares no terms"});
      }
    }
    if (output_ && output_->terms.empty()) {
      diags_.push_back({Severity::error, output_->line, 1,
                        "variable '" + output_->name + "' declares no terms"});
    }
    if (rules_.empty()) {
      diags_.push_back({Severity::error, eof_line, 1, "model declares no rules"});
    }
  }

  std::optional<FisDefinition> build() {
    std::vector<LinguisticVariable> inputs;
    inputs.reserve(inputs_.size());
    for (VariableDecl& decl : inputs_) {
      inputs.emplace_back(decl.name, decl.lo, decl.hi, std::move(decl.terms));
    }
    FisDefinition fis{*name_, std::move(inputs),
                      LinguisticVariable(output_->name, output_->lo, output_->hi,
                                         std::move(output_->terms)),
                      {}};
    fis.rules.reserve(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      fis.rules.push_back({std::move(rules_[i].antecedents), std::move(rules_[i].consequent),
                           static_cast<int>(i) + 1});
    }
    // Completeness is a property of the whole rule base, not of a line; the
    // warnings attach to the header.
    for (const Diagnostic& d : validate_fis(fis)) {
      if (d.severity == Severity::warning) {
        warning(header_line_, 1, d.message);
      }
    }
    return fis;
  }

  std::vector<std::string> lines_;
  std::vector<ParseDiagnostic> diags_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  int line_no_ = 0;

  std::optional<std::string> name_;
  bool header_attempted_ = false;
  int header_line_ = 1;
  std::vector<VariableDecl> inputs_;
  std::optional<VariableDecl> output_;
  VariableDecl* open_variable_ = nullptr;
  bool rules_started_ = false;
  std::vector<RuleDecl> rules_;
  std::map<std::vector<std::string>, int> rule_by_antecedents_;
};

void serialize_term(std::ostringstream& out, const Term& term) {
  out << "  term " << term.label << " ";
  if (const auto* tri = std::get_if<Triangular>(&term.mf.shape())) {
    out << "tri " << format_number(tri->a) << " " << format_number(tri->b) << " "
        << format_number(tri->c);
  } else {
    const auto& trap = std::get<Trapezoidal>(term.mf.shape());
    out << "trap " << format_number(trap.a) << " " << format_number(trap.b) << " "
        << format_number(trap.c) << " " << format_number(trap.d);
  }
  out << "\n";
}

void check_serializable_identifier(const std::string& word, const char* what) {
  if (!is_identifier(word) || is_reserved(word)) {
    throw std::invalid_argument(std::string("cannot serialize: ") + what + " '" + word +
                                "' is not a valid identifier");
  }
}

void serialize_variable(std::ostringstream& out, const LinguisticVariable& var, bool is_input) {
  check_serializable_identifier(var.name(), is_input ? "input name" : "output name");
  out << (is_input ? "input " : "output ") << var.name() << " range " << format_number(var.lo())
      << " " << format_number(var.hi()) << "\n";
  for (const Term& term : var.terms()) {
    check_serializable_identifier(term.label, "term label");
    serialize_term(out, term);
  }
}

}  // namespace

ParseResult parse_model(std::string_view source) {
  return Parser(source).run();
}

std::string serialize_model(const FisDefinition& fis) {
  if (fis.name.find('"') != std::string::npos || fis.name.find('\n') != std::string::npos) {
    throw std::invalid_argument("cannot serialize: model name contains a quote or newline");
  }
  std::ostringstream out;
  out << "fis \"" << fis.name << "\"\n";
  for (const LinguisticVariable& input : fis.inputs) {
    serialize_variable(out, input, /*is_input=*/true);
  }
  serialize_variable(out, fis.output, /*is_input=*/false);
  out << "\n";
  for (const Rule& rule : fis.rules) {
    if (rule.antecedents.size() != fis.inputs.size()) {
      throw std::invalid_argument("cannot serialize: rule " + std::to_string(rule.index) +
                                  " does not name every input");
    }
    out << "rule if";
    for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
      check_serializable_identifier(rule.antecedents[i], "term label");
      if (i > 0) out << " and";
      out << " " << fis.inputs[i].name() << " is " << rule.antecedents[i];
    }
    check_serializable_identifier(rule.consequent, "term label");
    out << " then " << fis.output.name() << " is " << rule.consequent << "\n";
  }
  return out.str();
}

}  // namespace fuzzrisk
