#pragma once

// Static recovery of a script's argparse interface.
//
// The script is never executed. Parser construction, argument groups and
// add_argument calls are located in the token stream and their keyword
// values read as literals, with one level of indirection through
// module-level constants.

#include "wrapforge/diagnostics.hpp"
#include "wrapforge/python_source.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wrapforge {

using py::Literal;

enum class ArgAction { store, store_true, store_false, append, count, version, help };
enum class TypeHint { unspecified, integer, floating, text };

struct Nargs {
  enum class Kind { fixed, zero_or_more, one_or_more, optional_single };
  Kind kind{Kind::fixed};
  int count{1}; // meaningful for fixed only

  bool operator==(const Nargs &) const = default;
};

struct ArgumentSpec {
  std::vector<std::string> flags;
  std::optional<std::string> positional_name;
  std::string dest;
  std::string help_text;
  std::optional<Literal> default_value;
  bool required{false};
  std::optional<std::string> metavar;
  ArgAction action{ArgAction::store};
  TypeHint value_type_hint{TypeHint::unspecified};
  std::optional<std::vector<Literal>> choices;
  std::optional<Nargs> nargs;
  int source_order{0};

  bool is_positional() const { return flags.empty(); }
  /// Longest "--" flag, else the longest flag; empty for positionals.
  std::string preferred_flag() const;
  bool takes_value() const;

  bool operator==(const ArgumentSpec &) const = default;
};

struct ToolInterface {
  std::string tool_name;
  std::optional<std::string> description;
  std::optional<std::string> epilog;
  std::vector<ArgumentSpec> arguments;
  std::vector<std::string> provides_tags;
  bool is_interactive{false};
  std::filesystem::path source_path;

  bool operator==(const ToolInterface &) const = default;
};

class ExtractionFailure : public std::runtime_error {
public:
  enum class Kind { syntax, no_parser, dynamic };

  ExtractionFailure(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

std::string_view to_string(ExtractionFailure::Kind kind);
std::string_view to_string(ArgAction action);

/// Thrown by parse_declaration when flag names are not literal.
class DeclarationSkipped : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Module-level NAME = literal bindings, used to resolve keyword values.
using ConstantTable = std::vector<std::pair<std::string, py::Expr>>;

ArgumentSpec parse_declaration(const py::Expr &call, const ConstantTable &constants,
                               Diagnostics &diag);

/// Convenience overload taking the call's source text, e.g.
/// "parser.add_argument('--x', type=int)".
ArgumentSpec parse_declaration(std::string_view call_source, Diagnostics &diag);

std::vector<std::string> detect_provides(std::string_view source_text, Diagnostics &diag);
std::vector<std::string> detect_provides(std::string_view source_text);

ToolInterface extract_interface(std::string_view source_text, std::string_view script_name,
                                Diagnostics &diag);

/// Reads the file and extracts; tool_name is the file stem.
ToolInterface extract_interface_from_file(const std::filesystem::path &path, Diagnostics &diag);

/// Tool name for a script path: the filename without a ".py" extension.
std::string tool_name_for(const std::filesystem::path &path);

} // namespace wrapforge
