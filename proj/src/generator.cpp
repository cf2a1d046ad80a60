#include "wrapforge/generator.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace wrapforge {

void GeneratorConfig::validate() const {
  if (interactive_port < 1 || interactive_port > 65535)
    throw ConfigError(fmt::format("interactive port {} is outside 1..65535", interactive_port));
  if (version_string.empty())
    throw ConfigError("empty tool version");
}

std::string tool_id_for(const std::string &tool_name) {
  std::string id;
  for (char c : tool_name)
    id.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
  if (id.empty() || std::isdigit(static_cast<unsigned char>(id.front())))
    id.insert(id.begin(), '_');
  return id;
}

namespace {

std::vector<std::string> split_lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    lines.push_back(l);
  return lines;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
  return s;
}

// Strips the common indentation of a (possibly triple-quoted) text block
// and surrounding blank lines.
std::string dedent(const std::string &text) {
  auto lines = split_lines(text);
  std::size_t common = std::string::npos;
  for (const auto &l : lines) {
    const auto first = l.find_first_not_of(" \t");
    if (first == std::string::npos)
      continue;
    common = std::min(common, first);
  }
  std::vector<std::string> out;
  for (auto &l : lines) {
    const auto first = l.find_first_not_of(" \t");
    if (first == std::string::npos) {
      out.emplace_back();
      continue;
    }
    auto stripped = l.substr(common == std::string::npos ? 0 : common);
    stripped.erase(stripped.find_last_not_of(" \t\r") + 1);
    out.push_back(std::move(stripped));
  }
  while (!out.empty() && out.front().empty())
    out.erase(out.begin());
  while (!out.empty() && out.back().empty())
    out.pop_back();
  std::string joined;
  for (std::size_t i = 0; i < out.size(); ++i)
    joined += (i ? "\n" : "") + out[i];
  return joined;
}

std::string short_description(const std::optional<std::string> &description) {
  if (!description)
    return {};
  std::string flat;
  bool space = false;
  for (char c : *description) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !flat.empty();
      continue;
    }
    if (space)
      flat.push_back(' ');
    space = false;
    flat.push_back(c);
  }
  // first sentence
  for (std::size_t i = 0; i + 1 < flat.size(); ++i)
    if (flat[i] == '.' && flat[i + 1] == ' ')
      return flat.substr(0, i);
  if (!flat.empty() && flat.back() == '.')
    flat.pop_back();
  return flat;
}

std::string title_word(std::string w) {
  if (!w.empty())
    w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::vector<std::string> name_parts(const std::string &tool_name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : tool_name) {
    if (c == '-' || c == '_') {
      if (!cur.empty())
        parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty())
    parts.push_back(std::move(cur));
  return parts;
}

std::string suite_short_name(const std::string &tool_name, const GeneratorConfig &config) {
  const auto parts = name_parts(tool_name);
  if (parts.empty())
    return tool_name;
  std::string source = parts.front();
  if (auto it = config.suite_names.find(parts.front()); it != config.suite_names.end())
    source = it->second;
  std::string out;
  for (char c : source)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool has_single_quote(const Literal &lit) {
  return lit.display().find('\'') != std::string::npos;
}

xml::Node param_node(const ClassifiedParameter &cp) { return xml::parse(emit_param_xml(cp)); }
xml::Node output_node(const ClassifiedParameter &cp) { return xml::parse(emit_output_xml(cp)); }

} // namespace

CommandPlan build_command_plan(const ToolInterface &interface,
                               const std::vector<ClassifiedParameter> &params, GuardStyle style) {
  CommandPlan plan;
  plan.executable = interface.tool_name;

  std::set<std::string> taken;
  for (const auto &cp : params)
    taken.insert(cp.galaxy_name);
  std::set<std::string> staging_files;

  for (const auto &cp : params) {
    if (is_terminal_action(cp.spec))
      continue;
    std::optional<std::string> ref;     // spelling inside pre/post commands
    std::optional<std::string> seg_ref; // spelling inside the invocation
    if (cp.kind.staging) {
      std::string file = cp.kind.staging->filename;
      if (!staging_files.insert(file).second) {
        file = cp.galaxy_name + "_" + file;
        staging_files.insert(file);
      }
      if (cp.kind.is_output && cp.kind.is_composite) {
        std::string var = cp.galaxy_name + "_path";
        while (taken.count(var))
          var += "_staging";
        taken.insert(var);
        plan.locals.push_back(LocalAssignment{var, file});
        ref = "${" + var + "}";
        seg_ref = "$" + var;
      } else {
        ref = file;
        seg_ref = file;
      }
    }
    if (auto pre = pre_command(cp, ref))
      plan.pre_commands.push_back(*pre);
    plan.segments.push_back(command_segment(cp, style, seg_ref));
    if (auto post = post_command(cp, ref))
      plan.post_commands.push_back(*post);
  }
  return plan;
}

std::string render_command(const CommandPlan &plan) {
  std::vector<std::string> lines;
  for (const auto &l : plan.locals)
    lines.push_back(fmt::format("#set ${} = \"{}\"", l.variable, l.value));
  for (const auto &p : plan.pre_commands)
    lines.push_back(p + " &&");

  std::size_t first = 0;
  const bool inline_first = !plan.segments.empty() && !plan.segments.front().guard &&
                            plan.segments.front().text.find('\n') == std::string::npos;
  if (inline_first) {
    lines.push_back(plan.executable + " " + plan.segments.front().text);
    first = 1;
  } else {
    lines.push_back(plan.executable);
  }
  bool ends_with_block = false;
  for (std::size_t i = first; i < plan.segments.size(); ++i) {
    const auto &seg = plan.segments[i];
    if (seg.guard) {
      lines.push_back("  #if " + *seg.guard + ":");
      for (const auto &t : split_lines(seg.text))
        lines.push_back("    " + t);
      lines.push_back("  #end if");
      ends_with_block = true;
    } else {
      for (const auto &t : split_lines(seg.text))
        lines.push_back("  " + t);
      ends_with_block = false;
    }
  }
  if (!plan.post_commands.empty()) {
    if (ends_with_block)
      lines.push_back("&&");
    else
      lines.back() += " &&";
    for (std::size_t i = 0; i < plan.post_commands.size(); ++i)
      lines.push_back(plan.post_commands[i] + (i + 1 < plan.post_commands.size() ? " &&" : ""));
  }
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    out += (i ? "\n" : "") + lines[i];
  return out;
}

std::string display_name(const std::string &tool_name, const GeneratorConfig &config) {
  auto parts = name_parts(tool_name);
  if (parts.empty())
    return tool_name;
  std::string out;
  if (auto it = config.suite_names.find(parts.front()); it != config.suite_names.end())
    out = it->second;
  else
    out = title_word(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    out += " " + title_word(parts[i]);
  return out;
}

std::optional<EntryPoint> render_entry_points(const ToolInterface &interface,
                                              const GeneratorConfig &config) {
  if (!interface.is_interactive)
    return std::nullopt;
  EntryPoint e;
  e.name = display_name(interface.tool_name, config);
  e.port = config.interactive_port;
  std::string url = config.interactive_url_template;
  url = replace_all(std::move(url), "{suite}", suite_short_name(interface.tool_name, config));
  url = replace_all(std::move(url), "{tool_id}", tool_id_for(interface.tool_name));
  url = replace_all(std::move(url), "{tool}", interface.tool_name);
  e.url = std::move(url);
  return e;
}

xml::Node entry_points_element(const EntryPoint &entry) {
  auto ep = xml::Node::element("entry_point");
  ep.attr("name", entry.name).attr("port", std::to_string(entry.port));
  ep.add(xml::Node::element("url").add(xml::Node::text_node(entry.url)));
  auto block = xml::Node::element("entry_points");
  block.add(std::move(ep));
  return block;
}

std::string render_help(const ToolInterface &interface) {
  std::vector<std::string> paragraphs;
  for (const auto &part : {interface.description, interface.epilog}) {
    if (!part)
      continue;
    auto text = dedent(*part);
    if (!text.empty())
      paragraphs.push_back(std::move(text));
  }
  std::string out;
  for (std::size_t i = 0; i < paragraphs.size(); ++i)
    out += (i ? "\n\n" : "") + paragraphs[i];
  return out;
}

WrapperDocument render_wrapper(const ToolInterface &interface,
                               const std::vector<ClassifiedParameter> &params,
                               const DependencySet &deps, const GeneratorConfig &config) {
  std::map<std::string, std::string> owners;
  for (const auto &cp : params) {
    if (is_terminal_action(cp.spec))
      continue;
    auto [it, fresh] = owners.emplace(cp.galaxy_name, cp.spec.dest);
    if (!fresh)
      throw RenderFailure(fmt::format("arguments '{}' and '{}' both map to Galaxy name '{}'",
                                      it->second, cp.spec.dest, cp.galaxy_name));
    if (cp.spec.default_value && has_single_quote(*cp.spec.default_value))
      throw RenderFailure(
          fmt::format("default of '{}' contains a single quote, which the command template "
                      "cannot quote safely",
                      cp.spec.dest));
    if (cp.spec.choices)
      for (const auto &c : *cp.spec.choices)
        if (has_single_quote(c))
          throw RenderFailure(
              fmt::format("choice '{}' of '{}' contains a single quote", c.display(), cp.spec.dest));
  }

  WrapperDocument doc;
  doc.tool_name = interface.tool_name;
  doc.tool_id = tool_id_for(interface.tool_name);
  doc.version = config.version_string;
  doc.description = short_description(interface.description);
  doc.interactive = interface.is_interactive;
  doc.requirements = deps;
  doc.command_text = render_command(build_command_plan(interface, params, config.guard_style));
  for (const auto &cp : params) {
    if (is_terminal_action(cp.spec))
      continue;
    if (cp.kind.is_output)
      doc.outputs.push_back(output_node(cp));
    else
      doc.inputs.push_back(param_node(cp));
  }
  doc.entry_points = render_entry_points(interface, config);
  doc.help_text = render_help(interface);
  doc.citations = config.citation_dois;
  return doc;
}

xml::Node to_xml(const WrapperDocument &doc) {
  using xml::Node;
  auto tool = Node::element("tool");
  tool.attr("id", doc.tool_id).attr("name", doc.tool_name).attr("version", doc.version);
  if (doc.interactive)
    tool.attr("tool_type", "interactive");

  if (!doc.description.empty())
    tool.add(Node::element("description").add(Node::text_node(doc.description)));

  auto requirements = Node::element("requirements");
  auto reqs = emit_requirements(doc.requirements);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const auto &dep = doc.requirements.entries[i];
    if (dep.channel)
      requirements.add(Node::comment(fmt::format(" {} from channel {} ", dep.package, *dep.channel)));
    requirements.add(std::move(reqs[i]));
  }
  tool.add(std::move(requirements));

  tool.add(Node::element("command").add(Node::cdata("\n" + doc.command_text + "\n")));

  auto inputs = Node::element("inputs");
  for (const auto &p : doc.inputs)
    inputs.add(p);
  tool.add(std::move(inputs));

  auto outputs = Node::element("outputs");
  for (const auto &d : doc.outputs)
    outputs.add(d);
  tool.add(std::move(outputs));

  if (doc.entry_points)
    tool.add(entry_points_element(*doc.entry_points));

  auto help = Node::element("help");
  if (!doc.help_text.empty())
    help.add(Node::text_node(doc.help_text));
  tool.add(std::move(help));

  auto citations = Node::element("citations");
  for (const auto &doi : doc.citations) {
    auto c = Node::element("citation");
    c.attr("type", "doi").add(Node::text_node(doi));
    citations.add(std::move(c));
  }
  tool.add(std::move(citations));
  return tool;
}

std::string serialize(const WrapperDocument &doc) { return xml::serialize(to_xml(doc)); }

std::string wrapper_filename(const WrapperDocument &doc) { return doc.tool_id + ".xml"; }

} // namespace wrapforge
