#pragma once

// Maps captured arguments onto Galaxy parameter kinds and renders the
// per-parameter pieces of a wrapper: <param>/<data> elements, the command
// line segment, and the staging shell commands around the invocation.

#include "wrapforge/diagnostics.hpp"
#include "wrapforge/extraction.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wrapforge {

enum class GalaxyType { data, integer, floating, text, boolean, select };

std::string_view to_string(GalaxyType type);
std::optional<GalaxyType> galaxy_type_from_string(std::string_view name);

/// Shell templates around a staged file. Placeholders: {stage} is the
/// staging path (literal or a #set variable), {var} the Galaxy variable.
struct Staging {
  std::string filename;
  std::optional<std::string> pre_command_template;
  std::optional<std::string> post_command_template;

  bool operator==(const Staging &) const = default;
};

struct ParameterKind {
  std::string kind_id;
  GalaxyType galaxy_type{GalaxyType::text};
  std::optional<std::string> format_attr;
  bool is_output{false};
  bool is_composite{false};
  /// Composite input copied into the job directory before the tool runs.
  bool is_in_place{false};
  std::optional<Staging> staging;

  bool operator==(const ParameterKind &) const = default;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ordered token -> kind table. Used both for metavar tokens and for the
/// dest-keyed name fallback table.
class KindTable {
public:
  struct Entry {
    std::string token;
    ParameterKind kind;
  };

  const ParameterKind *find(std::string_view token) const;
  /// Replaces an existing entry in place or appends a new one.
  void set(std::string token, ParameterKind kind);
  const std::vector<Entry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Reads `TOKEN=galaxy_type[:format][:flags]` lines into this table.
  void extend_from_text(std::string_view text, std::string_view origin = "<text>");
  void extend_from_file(const std::filesystem::path &path);

private:
  std::vector<Entry> entries_;
};

using MetavarMap = KindTable;
using NameFallbackTable = KindTable;

/// The metavar conventions shipped with the tool.
MetavarMap builtin_metavar_map();
NameFallbackTable builtin_name_fallbacks();

/// Builds a kind from its parts, filling in staging templates. Throws
/// ConfigError when the combination violates the kind invariants.
ParameterKind make_kind(std::string kind_id, GalaxyType type, std::optional<std::string> format,
                        bool is_output, bool is_composite, bool is_in_place = false);

enum class ClassificationTier { metavar, name, action };
std::string_view to_string(ClassificationTier tier);

struct ClassifiedParameter {
  ArgumentSpec spec;
  ParameterKind kind;
  std::string galaxy_name;
  std::string label;
  bool optional{false};
  ClassificationTier classification_tier{ClassificationTier::action};
};

struct Classifier {
  MetavarMap metavars = builtin_metavar_map();
  NameFallbackTable names = builtin_name_fallbacks();
};

ClassifiedParameter classify(const ArgumentSpec &spec, const MetavarMap &metavars,
                             const NameFallbackTable &names, Diagnostics &diag);
ClassifiedParameter classify(const ArgumentSpec &spec, const MetavarMap &metavars,
                             Diagnostics &diag);
ClassifiedParameter classify(const ArgumentSpec &spec, const Classifier &classifier,
                             Diagnostics &diag);

/// "init_gene_coverages" -> "Init Gene Coverages".
std::string label_for(std::string_view dest);

/// Help text as argparse would print it: %(default)s expanded, whitespace
/// runs collapsed.
std::string normalized_help(const ArgumentSpec &spec);

std::string emit_param_xml(const ClassifiedParameter &cp);
std::string emit_output_xml(const ClassifiedParameter &cp);

enum class GuardStyle { if_block, truevalue };

struct CommandSegment {
  std::string text;
  std::optional<std::string> guard; // Cheetah condition, without "#if" and ":"

  bool operator==(const CommandSegment &) const = default;
};

/// `staging_ref` overrides how a staged path is spelled in the segment
/// (e.g. "$output_db_path"); by default the literal staging filename.
CommandSegment command_segment(const ClassifiedParameter &cp,
                               GuardStyle style = GuardStyle::truevalue,
                               std::optional<std::string> staging_ref = std::nullopt);

std::optional<std::string> pre_command(const ClassifiedParameter &cp,
                                       std::optional<std::string> staging_ref = std::nullopt);
std::optional<std::string> post_command(const ClassifiedParameter &cp,
                                        std::optional<std::string> staging_ref = std::nullopt);

/// True for help/version arguments, which never reach the wrapper.
bool is_terminal_action(const ArgumentSpec &spec);

} // namespace wrapforge
