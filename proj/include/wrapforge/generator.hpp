#pragma once

// Assembles classified parameters, tool metadata and dependencies into a
// Galaxy tool wrapper document.

#include "wrapforge/classification.hpp"
#include "wrapforge/dependencies.hpp"
#include "wrapforge/extraction.hpp"
#include "wrapforge/xml.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wrapforge {

struct GeneratorConfig {
  std::string version_string{"1.0.0"};
  int interactive_port{8080};
  /// Placeholders: {suite}, {tool}, {tool_id}.
  std::string interactive_url_template{"interactives/{suite}"};
  GuardStyle guard_style{GuardStyle::truevalue};
  std::vector<std::string> citation_dois;
  /// Tool-name prefix -> suite display name, e.g. "anvi" -> "Anvi'o".
  std::map<std::string, std::string> suite_names{{"anvi", "Anvi'o"}};
  std::optional<std::filesystem::path> metavar_map_extension_path;
  std::optional<std::filesystem::path> name_fallback_path;
  std::filesystem::path output_dir{"."};

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

class RenderFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LocalAssignment {
  std::string variable;
  std::string value;

  bool operator==(const LocalAssignment &) const = default;
};

struct CommandPlan {
  std::vector<LocalAssignment> locals;
  std::vector<std::string> pre_commands;
  std::string executable;
  std::vector<CommandSegment> segments;
  std::vector<std::string> post_commands;
};

CommandPlan build_command_plan(const ToolInterface &interface,
                               const std::vector<ClassifiedParameter> &params,
                               GuardStyle style = GuardStyle::truevalue);

/// Command block body as Cheetah template text (without CDATA markers).
std::string render_command(const CommandPlan &plan);

struct EntryPoint {
  std::string name;
  int port{8080};
  std::string url;

  bool operator==(const EntryPoint &) const = default;
};

struct WrapperDocument {
  std::string tool_id;
  std::string tool_name;
  std::string version;
  std::string description;
  bool interactive{false};
  DependencySet requirements;
  std::vector<xml::Node> inputs;
  std::vector<xml::Node> outputs;
  std::string command_text;
  std::optional<EntryPoint> entry_points;
  std::string help_text;
  std::vector<std::string> citations;
};

/// "anvi-interactive" -> "Anvi'o Interactive" with the default suite table.
std::string display_name(const std::string &tool_name, const GeneratorConfig &config);

std::optional<EntryPoint> render_entry_points(const ToolInterface &interface,
                                              const GeneratorConfig &config = {});
xml::Node entry_points_element(const EntryPoint &entry);

/// Description paragraph, blank line, epilog paragraph (unescaped).
std::string render_help(const ToolInterface &interface);

WrapperDocument render_wrapper(const ToolInterface &interface,
                               const std::vector<ClassifiedParameter> &params,
                               const DependencySet &deps, const GeneratorConfig &config);

xml::Node to_xml(const WrapperDocument &doc);
std::string serialize(const WrapperDocument &doc);

/// Output file name for a document: "<tool_id>.xml".
std::string wrapper_filename(const WrapperDocument &doc);

/// Tool id for a tool name: dashes become underscores.
std::string tool_id_for(const std::string &tool_name);

} // namespace wrapforge
