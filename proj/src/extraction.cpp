#include "wrapforge/extraction.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wrapforge {

using py::Expr;
using py::LogicalLine;
using py::Token;
using py::TokenKind;

std::string_view to_string(ExtractionFailure::Kind kind) {
  switch (kind) {
  case ExtractionFailure::Kind::syntax: return "syntax";
  case ExtractionFailure::Kind::no_parser: return "no_parser";
  case ExtractionFailure::Kind::dynamic: return "dynamic";
  }
  return "unknown";
}

std::string_view to_string(ArgAction action) {
  switch (action) {
  case ArgAction::store: return "store";
  case ArgAction::store_true: return "store_true";
  case ArgAction::store_false: return "store_false";
  case ArgAction::append: return "append";
  case ArgAction::count: return "count";
  case ArgAction::version: return "version";
  case ArgAction::help: return "help";
  }
  return "store";
}

std::string ArgumentSpec::preferred_flag() const {
  std::string best;
  bool best_long = false;
  for (const auto &f : flags) {
    const bool is_long = f.rfind("--", 0) == 0;
    if ((is_long && !best_long) || (is_long == best_long && f.size() > best.size())) {
      best = f;
      best_long = is_long;
    }
  }
  return best;
}

bool ArgumentSpec::takes_value() const {
  return action == ArgAction::store || action == ArgAction::append;
}

std::string tool_name_for(const std::filesystem::path &path) {
  return path.stem().string();
}

namespace {

constexpr std::array<std::string_view, 20> kKeywords{
    "if", "elif", "else", "while", "for", "in", "return", "with", "as", "not",
    "and", "or", "assert", "yield", "await", "del", "raise", "is", "lambda", "print"};

bool is_keyword(const Token &t) {
  return t.kind == TokenKind::Name &&
         std::find(kKeywords.begin(), kKeywords.end(), t.text) != kKeywords.end();
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front())))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string sanitize_identifier(std::string_view s) {
  std::string out;
  for (char c : s)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())))
    out.insert(out.begin(), '_');
  return out;
}

// Splits a logical line at top-level semicolons.
std::vector<std::vector<Token>> split_statements(const LogicalLine &line) {
  std::vector<std::vector<Token>> out(1);
  int depth = 0;
  for (const auto &t : line.tokens) {
    if (t.is_op("(") || t.is_op("[") || t.is_op("{"))
      ++depth;
    else if (t.is_op(")") || t.is_op("]") || t.is_op("}"))
      --depth;
    if (depth == 0 && t.is_op(";")) {
      out.emplace_back();
      continue;
    }
    out.back().push_back(t);
  }
  std::erase_if(out, [](const auto &v) { return v.empty(); });
  return out;
}

// Leading "a.b = c = ..." targets; `pos` is left at the value expression.
std::vector<std::string> assignment_targets(const std::vector<Token> &toks, std::size_t &pos) {
  std::vector<std::string> targets;
  std::size_t p = 0;
  for (;;) {
    std::size_t q = p;
    std::string name;
    if (q >= toks.size() || toks[q].kind != TokenKind::Name || is_keyword(toks[q]))
      break;
    name = toks[q++].text;
    while (q + 1 < toks.size() && toks[q].is_op(".") && toks[q + 1].kind == TokenKind::Name) {
      name += "." + toks[q + 1].text;
      q += 2;
    }
    if (q >= toks.size() || !toks[q].is_op("="))
      break;
    targets.push_back(std::move(name));
    p = q + 1;
  }
  pos = p;
  return targets;
}

bool is_literal_tree(const Expr &e) {
  if (e.kind == Expr::Kind::Constant)
    return true;
  if (e.kind == Expr::Kind::List || e.kind == Expr::Kind::Tuple)
    return std::all_of(e.children.begin(), e.children.end(), is_literal_tree);
  return false;
}

const Expr *lookup_constant(const ConstantTable &constants, const std::string &name) {
  for (auto it = constants.rbegin(); it != constants.rend(); ++it)
    if (it->first == name)
      return &it->second;
  return nullptr;
}

// One level of indirection: a Name bound to a module-level literal.
const Expr *resolve(const Expr &e, const ConstantTable &constants) {
  if (e.kind == Expr::Kind::Name) {
    if (const Expr *c = lookup_constant(constants, e.identifier))
      return c;
    return nullptr;
  }
  return &e;
}

std::optional<Literal> resolve_literal(const Expr &e, const ConstantTable &constants) {
  const Expr *r = resolve(e, constants);
  if (r && r->kind == Expr::Kind::Constant)
    return r->constant;
  return std::nullopt;
}

std::optional<std::string> resolve_string(const Expr &e, const ConstantTable &constants) {
  auto lit = resolve_literal(e, constants);
  if (lit && lit->is_string())
    return *lit->as_string();
  return std::nullopt;
}

std::optional<std::vector<Literal>> resolve_sequence(const Expr &e, const ConstantTable &constants) {
  const Expr *r = resolve(e, constants);
  if (!r || (r->kind != Expr::Kind::List && r->kind != Expr::Kind::Tuple))
    return std::nullopt;
  std::vector<Literal> out;
  for (const auto &item : r->children) {
    auto lit = resolve_literal(item, constants);
    if (!lit)
      return std::nullopt;
    out.push_back(*lit);
  }
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_argparse_constant(const Expr &e, std::string_view name) {
  const auto dotted = e.dotted_name();
  return dotted == name || ends_with(dotted, std::string(".") + std::string(name));
}

} // namespace

ArgumentSpec parse_declaration(const Expr &call, const ConstantTable &constants, Diagnostics &diag) {
  const int line = call.line;
  auto where = [line](std::string_view msg) { return fmt::format("line {}: {}", line, msg); };

  if (call.kind != Expr::Kind::Call)
    throw DeclarationSkipped(where("not a call expression"));
  if (call.has_star_args)
    throw DeclarationSkipped(where("flag names come from a starred expression"));

  ArgumentSpec spec;
  std::vector<std::string> names;
  for (std::size_t i = 1; i < call.children.size(); ++i) {
    auto s = resolve_string(call.children[i], constants);
    if (!s)
      throw DeclarationSkipped(where("flag name is not a literal string"));
    names.push_back(*s);
  }
  if (names.empty())
    throw DeclarationSkipped(where("declaration has no option strings"));

  const bool any_flag = std::any_of(names.begin(), names.end(),
                                    [](const std::string &n) { return !n.empty() && n[0] == '-'; });
  if (any_flag) {
    for (const auto &n : names) {
      if (n.size() < 2 || n[0] != '-')
        throw DeclarationSkipped(where(fmt::format("invalid option string '{}'", n)));
    }
    spec.flags = names;
  } else {
    if (names.size() != 1)
      throw DeclarationSkipped(where("positional argument declared with several names"));
    spec.positional_name = names.front();
  }

  if (call.has_star_kwargs)
    diag.warn(where("**kwargs in declaration ignored"));

  std::optional<std::string> dest;
  for (const auto &kw : call.keywords) {
    const Expr &value = kw.value.front();
    auto unresolved = [&] {
      diag.warn(where(fmt::format("value of '{}' is not a literal ({}); ignored", kw.name,
                                  value.source)));
    };
    if (kw.name == "dest") {
      if (auto s = resolve_string(value, constants))
        dest = *s;
      else
        unresolved();
    } else if (kw.name == "help") {
      if (auto s = resolve_string(value, constants))
        spec.help_text = *s;
      else if (!is_argparse_constant(value, "SUPPRESS"))
        unresolved();
    } else if (kw.name == "default") {
      if (is_argparse_constant(value, "SUPPRESS"))
        continue;
      const Expr *r = resolve(value, constants);
      if (r && r->kind == Expr::Kind::Constant)
        spec.default_value = r->constant;
      else if (r && is_literal_tree(*r))
        diag.warn(where("sequence default ignored"));
      else
        unresolved();
    } else if (kw.name == "required") {
      auto lit = resolve_literal(value, constants);
      if (lit && std::holds_alternative<bool>(lit->value))
        spec.required = std::get<bool>(lit->value);
      else
        unresolved();
    } else if (kw.name == "metavar") {
      if (auto s = resolve_string(value, constants))
        spec.metavar = *s;
      else
        unresolved();
    } else if (kw.name == "action") {
      if (auto s = resolve_string(value, constants)) {
        static const std::map<std::string, ArgAction, std::less<>> direct{
            {"store", ArgAction::store},         {"store_true", ArgAction::store_true},
            {"store_false", ArgAction::store_false}, {"append", ArgAction::append},
            {"count", ArgAction::count},         {"version", ArgAction::version},
            {"help", ArgAction::help}};
        if (auto it = direct.find(*s); it != direct.end()) {
          spec.action = it->second;
        } else if (*s == "store_const" || *s == "append_const") {
          spec.action = ArgAction::store_true;
          diag.warn(where(fmt::format("action '{}' treated as store_true", *s)));
        } else if (*s == "extend") {
          spec.action = ArgAction::append;
          diag.warn(where("action 'extend' treated as append"));
        } else {
          diag.warn(where(fmt::format("unknown action '{}' treated as store", *s)));
        }
      } else if (is_argparse_constant(value, "BooleanOptionalAction")) {
        spec.action = ArgAction::store_true;
        diag.warn(where("BooleanOptionalAction treated as store_true; the --no- form is dropped"));
      } else {
        diag.warn(where(fmt::format("custom action '{}' treated as store", value.source)));
      }
    } else if (kw.name == "type") {
      const auto name = value.dotted_name();
      if (name == "int")
        spec.value_type_hint = TypeHint::integer;
      else if (name == "float")
        spec.value_type_hint = TypeHint::floating;
      else if (name == "str")
        spec.value_type_hint = TypeHint::text;
      else
        diag.warn(where(fmt::format("type '{}' not recognized; no type hint", value.source)));
    } else if (kw.name == "choices") {
      if (auto seq = resolve_sequence(value, constants))
        spec.choices = std::move(*seq);
      else
        unresolved();
    } else if (kw.name == "nargs") {
      auto lit = resolve_literal(value, constants);
      if (lit && std::holds_alternative<std::int64_t>(lit->value)) {
        spec.nargs = Nargs{Nargs::Kind::fixed, static_cast<int>(std::get<std::int64_t>(lit->value))};
      } else if (lit && lit->is_string() && *lit->as_string() == "?") {
        spec.nargs = Nargs{Nargs::Kind::optional_single, 1};
      } else if (lit && lit->is_string() && *lit->as_string() == "*") {
        spec.nargs = Nargs{Nargs::Kind::zero_or_more, 0};
      } else if (lit && lit->is_string() && *lit->as_string() == "+") {
        spec.nargs = Nargs{Nargs::Kind::one_or_more, 0};
      } else {
        unresolved();
      }
    } else if (kw.name == "const" || kw.name == "version") {
      // accepted by argparse, no interface meaning here
    } else {
      diag.warn(where(fmt::format("unrecognized keyword '{}' ignored", kw.name)));
    }
  }

  if (spec.action == ArgAction::store_true || spec.action == ArgAction::store_false ||
      spec.action == ArgAction::count) {
    if (spec.metavar) {
      diag.warn(where(fmt::format("metavar on a {} argument ignored", to_string(spec.action))));
      spec.metavar.reset();
    }
    if (spec.choices) {
      diag.warn(where(fmt::format("choices on a {} argument ignored", to_string(spec.action))));
      spec.choices.reset();
    }
    if (!spec.default_value && spec.action != ArgAction::count)
      spec.default_value = Literal{spec.action == ArgAction::store_false, {}};
  }

  if (spec.is_positional()) {
    if (dest)
      diag.warn(where("dest on a positional argument ignored"));
    const bool optional_nargs = spec.nargs && (spec.nargs->kind == Nargs::Kind::optional_single ||
                                               spec.nargs->kind == Nargs::Kind::zero_or_more);
    spec.required = !optional_nargs;
    spec.dest = *spec.positional_name;
  } else if (dest) {
    spec.dest = *dest;
  } else {
    std::string flag = spec.preferred_flag();
    if (flag.rfind("--", 0) != 0) {
      // argparse falls back to the first short flag
      flag = spec.flags.front();
    }
    flag.erase(0, flag.find_first_not_of('-'));
    std::replace(flag.begin(), flag.end(), '-', '_');
    spec.dest = flag;
  }

  if (!is_identifier(spec.dest)) {
    const auto fixed = sanitize_identifier(spec.dest);
    diag.warn(where(fmt::format("dest '{}' is not an identifier; using '{}'", spec.dest, fixed)));
    spec.dest = fixed;
  }
  if (spec.is_positional() && *spec.positional_name != spec.dest)
    spec.positional_name = spec.dest;
  return spec;
}

ArgumentSpec parse_declaration(std::string_view call_source, Diagnostics &diag) {
  return parse_declaration(py::parse_expression(call_source), ConstantTable{}, diag);
}

namespace {

struct ParserState {
  int line{0};
  std::optional<std::string> description;
  std::optional<std::string> epilog;
  std::vector<ArgumentSpec> arguments;
};

struct Object {
  enum class Kind { none, parser, group, subparsers, subparser };
  Kind kind{Kind::none};
  int parser{-1};
};

std::string receiver_text(const Expr &e) {
  if (auto d = e.dotted_name(); !d.empty())
    return d;
  return e.source.empty() ? std::string("<expression>") : e.source;
}

class Extractor {
public:
  explicit Extractor(Diagnostics &diag) : diag_(diag) {}

  void collect_module_constants(const std::vector<LogicalLine> &lines) {
    // A leading bare string is the module docstring.
    if (!lines.empty() && lines.front().indent == 0) {
      std::size_t pos = 0;
      const auto &toks = lines.front().tokens;
      Expr doc = py::parse_expression(toks, pos);
      if (pos == toks.size() && doc.kind == Expr::Kind::Constant && doc.constant.is_string())
        constants_.emplace_back("__doc__", std::move(doc));
    }
    for (const auto &line : lines) {
      if (line.indent != 0)
        continue;
      for (const auto &stmt : split_statements(line)) {
        std::size_t pos = 0;
        auto targets = assignment_targets(stmt, pos);
        if (targets.size() != 1 || targets.front().find('.') != std::string::npos)
          continue;
        Expr value = py::parse_expression(stmt, pos);
        if (pos == stmt.size() && is_literal_tree(value))
          constants_.emplace_back(targets.front(), std::move(value));
      }
    }
  }

  void run(const std::vector<LogicalLine> &lines) {
    std::vector<std::pair<int, std::string>> defs; // indent, function name
    for (const auto &line : lines) {
      while (!defs.empty() && line.indent <= defs.back().first)
        defs.pop_back();
      if (!line.tokens.empty() && line.tokens.front().is_name("def") && line.tokens.size() > 1) {
        defs.emplace_back(line.indent, line.tokens[1].text);
        continue;
      }
      for (const auto &stmt : split_statements(line)) {
        if (stmt.front().is_name("return") && !defs.empty()) {
          std::size_t pos = 1;
          Expr value = py::parse_expression(stmt, pos);
          Object obj = evaluate(value);
          if (obj.kind != Object::Kind::none)
            returns_[defs.back().second] = obj;
          continue;
        }
        statement(stmt);
      }
    }
  }

  const std::vector<ParserState> &parsers() const { return parsers_; }
  int unresolved_sites() const { return unresolved_; }
  const ConstantTable &constants() const { return constants_; }

private:
  void statement(const std::vector<Token> &toks) {
    std::size_t pos = 0;
    auto targets = assignment_targets(toks, pos);
    if (!targets.empty()) {
      Expr value = py::parse_expression(toks, pos);
      Object obj = evaluate(value);
      for (const auto &t : targets) {
        if (obj.kind == Object::Kind::none)
          variables_.erase(t);
        else
          variables_[t] = obj;
      }
      if (pos < toks.size())
        scan(toks, pos);
      return;
    }
    scan(toks, 0);
  }

  void scan(const std::vector<Token> &toks, std::size_t from) {
    std::size_t i = from;
    while (i < toks.size()) {
      const Token &t = toks[i];
      const bool after_dot = i > 0 && toks[i - 1].is_op(".");
      if (t.kind != TokenKind::Name || is_keyword(t) || after_dot) {
        ++i;
        continue;
      }
      std::size_t pos = i;
      Expr e = py::parse_expression(toks, pos);
      if (e.kind == Expr::Kind::Opaque || pos == i) {
        ++i;
        continue;
      }
      evaluate(e);
      i = pos;
    }
  }

  Object lookup(const std::string &name) const {
    auto it = variables_.find(name);
    return it == variables_.end() ? Object{} : it->second;
  }

  Object evaluate(const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Name:
    case Expr::Kind::Attribute: {
      const auto dotted = e.dotted_name();
      if (!dotted.empty())
        return lookup(dotted);
      if (!e.children.empty())
        evaluate(e.children.front());
      return {};
    }
    case Expr::Kind::List:
    case Expr::Kind::Tuple:
      for (const auto &c : e.children)
        evaluate(c);
      return {};
    case Expr::Kind::Call:
      return call(e);
    default:
      return {};
    }
  }

  void evaluate_arguments(const Expr &call) {
    for (std::size_t i = 1; i < call.children.size(); ++i)
      evaluate(call.children[i]);
    for (const auto &kw : call.keywords)
      evaluate(kw.value.front());
  }

  Object call(const Expr &c) {
    const Expr &callee = c.children.front();
    const auto name = callee.dotted_name();
    if (name == "ArgumentParser" || ends_with(name, ".ArgumentParser")) {
      evaluate_arguments(c);
      return new_parser(c);
    }
    if (callee.kind == Expr::Kind::Attribute) {
      const Object receiver = evaluate(callee.children.front());
      evaluate_arguments(c);
      return method(receiver, callee, c);
    }
    evaluate_arguments(c);
    if (auto it = returns_.find(name); it != returns_.end())
      return it->second;
    return {};
  }

  Object new_parser(const Expr &c) {
    ParserState p;
    p.line = c.line;
    if (const Expr *d = c.keyword("description")) {
      p.description = resolve_string(*d, constants_);
      if (!p.description)
        diag_.warn(fmt::format("line {}: parser description is not a literal; omitted", c.line));
    }
    if (const Expr *d = c.keyword("epilog")) {
      p.epilog = resolve_string(*d, constants_);
      if (!p.epilog)
        diag_.warn(fmt::format("line {}: parser epilog is not a literal; omitted", c.line));
    }
    parsers_.push_back(std::move(p));
    return Object{Object::Kind::parser, static_cast<int>(parsers_.size() - 1)};
  }

  Object method(const Object &receiver, const Expr &callee, const Expr &c) {
    const std::string &m = callee.identifier;
    using K = Object::Kind;
    switch (receiver.kind) {
    case K::parser:
    case K::group:
      if (m == "add_argument") {
        declare(receiver.parser, c);
        return {};
      }
      if (m == "add_argument_group" || m == "add_mutually_exclusive_group")
        return Object{K::group, receiver.parser};
      if (m == "add_subparsers") {
        diag_.warn(fmt::format("line {}: subcommands (add_subparsers) are not supported; "
                               "subcommand arguments are ignored",
                               c.line));
        return Object{K::subparsers, receiver.parser};
      }
      return {};
    case K::subparsers:
      if (m == "add_parser")
        return Object{K::subparser, receiver.parser};
      return {};
    case K::subparser:
      if (m == "add_argument_group" || m == "add_mutually_exclusive_group")
        return receiver;
      return {};
    case K::none:
      if (m == "add_argument") {
        ++unresolved_;
        diag_.warn(fmt::format("line {}: add_argument on unresolved receiver '{}' skipped",
                               c.line, receiver_text(callee.children.front())));
      }
      return {};
    }
    return {};
  }

  void declare(int parser, const Expr &c) {
    ArgumentSpec spec;
    try {
      spec = parse_declaration(c, constants_, diag_);
    } catch (const DeclarationSkipped &e) {
      ++unresolved_;
      diag_.warn(fmt::format("declaration skipped: {}", e.what()));
      return;
    }
    auto &args = parsers_[static_cast<std::size_t>(parser)].arguments;
    for (const auto &existing : args) {
      for (const auto &f : spec.flags) {
        if (std::find(existing.flags.begin(), existing.flags.end(), f) != existing.flags.end()) {
          diag_.warn(fmt::format("line {}: flag '{}' declared twice; later declaration dropped",
                                 c.line, f));
          return;
        }
      }
      if (existing.dest == spec.dest) {
        diag_.warn(fmt::format("line {}: dest '{}' declared twice; later declaration dropped",
                               c.line, spec.dest));
        return;
      }
    }
    spec.source_order = order_++;
    args.push_back(std::move(spec));
  }

  Diagnostics &diag_;
  ConstantTable constants_;
  std::map<std::string, Object> variables_;
  std::map<std::string, Object> returns_;
  std::vector<ParserState> parsers_;
  int order_{0};
  int unresolved_{0};
};

std::vector<std::string> provides_from(const std::vector<LogicalLine> &lines, Diagnostics &diag) {
  std::vector<std::string> tags;
  for (const auto &line : lines) {
    if (line.indent != 0)
      continue;
    for (const auto &stmt : split_statements(line)) {
      std::size_t pos = 0;
      auto targets = assignment_targets(stmt, pos);
      if (std::find(targets.begin(), targets.end(), "__provides__") == targets.end())
        continue;
      Expr value = py::parse_expression(stmt, pos);
      tags.clear();
      bool literal = value.kind == Expr::Kind::List || value.kind == Expr::Kind::Tuple;
      if (literal) {
        for (const auto &item : value.children) {
          if (item.kind != Expr::Kind::Constant || !item.constant.is_string()) {
            literal = false;
            break;
          }
          tags.push_back(*item.constant.as_string());
        }
      }
      if (!literal) {
        tags.clear();
        diag.warn(fmt::format("line {}: __provides__ is not a literal list of strings; ignored",
                              line.line));
      }
    }
  }
  return tags;
}

} // namespace

std::vector<std::string> detect_provides(std::string_view source_text, Diagnostics &diag) {
  return provides_from(py::tokenize(source_text), diag);
}

std::vector<std::string> detect_provides(std::string_view source_text) {
  Diagnostics ignored;
  return detect_provides(source_text, ignored);
}

ToolInterface extract_interface(std::string_view source_text, std::string_view script_name,
                                Diagnostics &diag) {
  std::vector<LogicalLine> lines;
  try {
    lines = py::tokenize(source_text);
  } catch (const py::SyntaxError &e) {
    throw ExtractionFailure(ExtractionFailure::Kind::syntax,
                            fmt::format("{}: syntax error at {}", script_name, e.what()));
  }

  Extractor extractor(diag);
  extractor.collect_module_constants(lines);
  extractor.run(lines);

  const auto &parsers = extractor.parsers();
  if (parsers.empty())
    throw ExtractionFailure(ExtractionFailure::Kind::no_parser,
                            fmt::format("{}: no ArgumentParser construction found", script_name));

  std::size_t chosen = 0;
  std::size_t resolved = 0;
  for (std::size_t i = 0; i < parsers.size(); ++i) {
    resolved += parsers[i].arguments.size();
    if (parsers[i].arguments.size() > parsers[chosen].arguments.size())
      chosen = i;
  }
  if (parsers.size() > 1)
    diag.warn(fmt::format("{} parsers constructed; using the one at line {} ({} arguments)",
                          parsers.size(), parsers[chosen].line, parsers[chosen].arguments.size()));
  if (resolved == 0 && extractor.unresolved_sites() > 0)
    throw ExtractionFailure(ExtractionFailure::Kind::dynamic,
                            fmt::format("{}: none of {} argument declarations could be resolved",
                                        script_name, extractor.unresolved_sites()));

  ToolInterface out;
  std::filesystem::path name_path{std::string(script_name)};
  out.tool_name = tool_name_for(name_path);
  out.description = parsers[chosen].description;
  out.epilog = parsers[chosen].epilog;
  out.arguments = parsers[chosen].arguments;
  std::stable_sort(out.arguments.begin(), out.arguments.end(),
                   [](const auto &a, const auto &b) { return a.source_order < b.source_order; });
  out.provides_tags = provides_from(lines, diag);
  out.is_interactive = std::find(out.provides_tags.begin(), out.provides_tags.end(),
                                 "interactive") != out.provides_tags.end();
  out.source_path = name_path;
  return out;
}

ToolInterface extract_interface_from_file(const std::filesystem::path &path, Diagnostics &diag) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error(fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  auto iface = extract_interface(buf.str(), path.filename().string(), diag);
  iface.source_path = path;
  return iface;
}

} // namespace wrapforge
