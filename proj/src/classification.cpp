#include "wrapforge/classification.hpp"
#include "wrapforge/xml.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wrapforge {

std::string_view to_string(GalaxyType type) {
  switch (type) {
  case GalaxyType::data: return "data";
  case GalaxyType::integer: return "integer";
  case GalaxyType::floating: return "float";
  case GalaxyType::text: return "text";
  case GalaxyType::boolean: return "boolean";
  case GalaxyType::select: return "select";
  }
  return "text";
}

std::optional<GalaxyType> galaxy_type_from_string(std::string_view name) {
  for (auto t : {GalaxyType::data, GalaxyType::integer, GalaxyType::floating, GalaxyType::text,
                 GalaxyType::boolean, GalaxyType::select})
    if (to_string(t) == name)
      return t;
  return std::nullopt;
}

std::string_view to_string(ClassificationTier tier) {
  switch (tier) {
  case ClassificationTier::metavar: return "metavar";
  case ClassificationTier::name: return "name";
  case ClassificationTier::action: return "action";
  }
  return "action";
}

namespace {

std::string staging_filename(std::string_view kind_id, const std::optional<std::string> &format) {
  if (kind_id == "profile_db" || kind_id == "profile_db_out")
    return "anvio_profile.db";
  if (kind_id == "contigs_db")
    return "anvio_contigs.db";
  if (kind_id == "dir_path_out")
    return "output";
  // anvio_<x>_db formats stage as anvio_<x>.db
  if (format && format->size() > 9 && format->starts_with("anvio_") && format->ends_with("_db"))
    return format->substr(0, format->size() - 3) + ".db";
  return std::string(kind_id) + ".out";
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
  return s;
}

std::string sanitize_name(std::string_view dest) {
  std::string out;
  for (char c : dest)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())))
    out.insert(out.begin(), '_');
  return out;
}

ParameterKind plain(std::string id, GalaxyType type) {
  return make_kind(std::move(id), type, std::nullopt, false, false);
}

ParameterKind data(std::string id, std::string format, bool output = false, bool composite = false) {
  return make_kind(std::move(id), GalaxyType::data, std::move(format), output, composite);
}

bool is_boolean_action(ArgAction a) {
  return a == ArgAction::store_true || a == ArgAction::store_false;
}

// Name-keyed kinds only apply when the argument's shape fits them.
bool compatible(const ParameterKind &kind, const ArgumentSpec &spec) {
  if (kind.galaxy_type == GalaxyType::boolean)
    return is_boolean_action(spec.action);
  return spec.takes_value();
}

std::string instantiate(std::string tmpl, const std::string &stage, const std::string &var) {
  tmpl = replace_all(std::move(tmpl), "{stage}", stage);
  return replace_all(std::move(tmpl), "{var}", var);
}

} // namespace

ParameterKind make_kind(std::string kind_id, GalaxyType type, std::optional<std::string> format,
                        bool is_output, bool is_composite, bool is_in_place) {
  if (type != GalaxyType::data && (format || is_output || is_composite || is_in_place))
    throw ConfigError(fmt::format("kind '{}': format, output and composite apply only to data",
                                  kind_id));
  if (is_in_place && (!is_composite || is_output))
    throw ConfigError(fmt::format("kind '{}': inplace requires a composite input", kind_id));

  ParameterKind k;
  k.kind_id = std::move(kind_id);
  k.galaxy_type = type;
  k.format_attr = std::move(format);
  k.is_output = is_output;
  k.is_composite = is_composite;
  k.is_in_place = is_in_place;
  if (is_output) {
    Staging s;
    s.filename = staging_filename(k.kind_id, k.format_attr);
    if (is_composite) {
      s.pre_command_template = "mkdir -p '{stage}.d'";
      s.post_command_template = "cp -r '{stage}'* '{var}'";
    } else if (k.format_attr == "directory") {
      s.post_command_template = "cp -r {stage}/* '{var}'";
    } else {
      s.post_command_template = "cp '{stage}' '{var}'";
    }
    k.staging = std::move(s);
  } else if (is_in_place) {
    Staging s;
    s.filename = staging_filename(k.kind_id, k.format_attr);
    s.pre_command_template = "cp -R '{var}' '{stage}'";
    k.staging = std::move(s);
  }
  return k;
}

const ParameterKind *KindTable::find(std::string_view token) const {
  for (const auto &e : entries_)
    if (e.token == token)
      return &e.kind;
  return nullptr;
}

void KindTable::set(std::string token, ParameterKind kind) {
  for (auto &e : entries_) {
    if (e.token == token) {
      e.kind = std::move(kind);
      return;
    }
  }
  entries_.push_back(Entry{std::move(token), std::move(kind)});
}

void KindTable::extend_from_text(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto fail = [&](std::string_view why) {
      return ConfigError(fmt::format("{}:{}: {} in '{}'", origin, line_no, why, line));
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw fail("expected TOKEN=galaxy_type[:format][:flags]");
    const std::string token = trim(line.substr(0, eq));
    if (token.empty())
      throw fail("empty token");

    std::vector<std::string> parts;
    std::stringstream spec(line.substr(eq + 1));
    std::string part;
    while (std::getline(spec, part, ':'))
      parts.push_back(trim(part));
    if (parts.empty() || parts.size() > 3)
      throw fail("expected one to three ':'-separated fields");

    const auto type = galaxy_type_from_string(parts[0]);
    if (!type)
      throw fail(fmt::format("unknown galaxy type '{}'", parts[0]));
    std::optional<std::string> format;
    if (parts.size() > 1 && !parts[1].empty())
      format = parts[1];
    bool output = false, composite = false, in_place = false;
    if (parts.size() > 2) {
      std::stringstream flags(parts[2]);
      std::string flag;
      while (std::getline(flags, flag, ',')) {
        flag = trim(flag);
        if (flag == "output")
          output = true;
        else if (flag == "composite")
          composite = true;
        else if (flag == "inplace")
          in_place = true;
        else if (!flag.empty())
          throw fail(fmt::format("unknown flag '{}'", flag));
      }
    }
    if (*type == GalaxyType::data && !format)
      format = "data";
    try {
      set(token, make_kind(lowercase(token), *type, format, output, composite, in_place));
    } catch (const ConfigError &e) {
      throw fail(e.what());
    }
  }
}

void KindTable::extend_from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  extend_from_text(buf.str(), path.string());
}

MetavarMap builtin_metavar_map() {
  MetavarMap m;
  m.set("CONTIGS_DB", data("contigs_db", "anvio_contigs_db", false, true));
  m.set("PROFILE_DB", data("profile_db", "anvio_profile_db", false, true));
  m.set("PROFILE_DB_OUT", data("profile_db_out", "anvio_profile_db", true, true));
  m.set("PAN_DB", data("pan_db", "anvio_pan_db"));
  m.set("GENOMES_DB", data("genomes_db", "anvio_genomes_db"));
  m.set("COLLECTION", data("collection", "anvio_collection"));
  m.set("BIN", data("bin", "anvio_bin"));
  m.set("FASTA", data("fasta", "fasta"));
  m.set("BAM", data("bam", "bam"));
  m.set("GENBANK", data("genbank", "genbank"));
  m.set("TREE", data("tree", "newick"));
  m.set("TAXONOMY", data("taxonomy", "tabular"));
  m.set("TABULAR", data("tabular", "tabular"));
  m.set("GFF", data("gff", "gff"));
  m.set("VCF", data("vcf", "vcf"));
  m.set("FILE_PATH", data("file_path", "data"));
  m.set("DIR_PATH", data("dir_path", "directory"));
  m.set("DIR_PATH_OUT", data("dir_path_out", "directory", true));
  m.set("INT", plain("int", GalaxyType::integer));
  m.set("FLOAT", plain("float", GalaxyType::floating));
  m.set("STRING", plain("string", GalaxyType::text));
  return m;
}

NameFallbackTable builtin_name_fallbacks() {
  NameFallbackTable t;
  t.set("num_threads", plain("int", GalaxyType::integer));
  t.set("output_dir", data("dir_path_out", "directory", true));
  t.set("input_file", data("file_path", "data"));
  t.set("verbose", plain("boolean", GalaxyType::boolean));
  t.set("debug", plain("boolean", GalaxyType::boolean));
  return t;
}

std::string label_for(std::string_view dest) {
  std::string out;
  std::size_t i = 0;
  while (i < dest.size()) {
    while (i < dest.size() && dest[i] == '_')
      ++i;
    if (i >= dest.size())
      break;
    if (!out.empty())
      out.push_back(' ');
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(dest[i++]))));
    while (i < dest.size() && dest[i] != '_')
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(dest[i++]))));
  }
  return out;
}

std::string normalized_help(const ArgumentSpec &spec) {
  std::string h = spec.help_text;
  if (h.find('%') != std::string::npos) {
    std::string choices;
    if (spec.choices)
      for (const auto &c : *spec.choices)
        choices += (choices.empty() ? "" : ", ") + c.display();
    h = replace_all(std::move(h), "%(default)s",
                    spec.default_value ? spec.default_value->display() : "None");
    h = replace_all(std::move(h), "%(dest)s", spec.dest);
    h = replace_all(std::move(h), "%(metavar)s", spec.metavar.value_or(spec.dest));
    h = replace_all(std::move(h), "%(choices)s", choices);
    h = replace_all(std::move(h), "%%", "%");
  }
  std::string out;
  bool space = false;
  for (char c : h) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space)
      out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

bool is_terminal_action(const ArgumentSpec &spec) {
  return spec.action == ArgAction::help || spec.action == ArgAction::version;
}

ClassifiedParameter classify(const ArgumentSpec &spec, const MetavarMap &metavars,
                             const NameFallbackTable &names, Diagnostics &diag) {
  if (is_terminal_action(spec))
    throw std::invalid_argument(fmt::format("'{}' is a {} argument and cannot be classified",
                                            spec.dest, to_string(spec.action)));
  ClassifiedParameter cp;
  cp.spec = spec;
  cp.galaxy_name = sanitize_name(spec.dest);
  cp.label = label_for(spec.dest);

  const ParameterKind *bound = nullptr;
  if (spec.metavar) {
    bound = metavars.find(*spec.metavar);
    if (bound)
      cp.classification_tier = ClassificationTier::metavar;
    else
      diag.warn(fmt::format("{}: unknown metavar '{}'; falling back to name/action", spec.dest,
                            *spec.metavar));
  }
  if (!bound) {
    const ParameterKind *by_name = names.find(spec.dest);
    if (by_name && compatible(*by_name, spec)) {
      bound = by_name;
      cp.classification_tier = ClassificationTier::name;
    }
  }
  if (bound) {
    cp.kind = *bound;
  } else {
    cp.classification_tier = ClassificationTier::action;
    if (is_boolean_action(spec.action))
      cp.kind = plain("boolean", GalaxyType::boolean);
    else if (spec.action == ArgAction::count)
      cp.kind = plain("int", GalaxyType::integer);
    else if (spec.choices)
      cp.kind = plain("select", GalaxyType::select);
    else if (spec.value_type_hint == TypeHint::integer)
      cp.kind = plain("int", GalaxyType::integer);
    else if (spec.value_type_hint == TypeHint::floating)
      cp.kind = plain("float", GalaxyType::floating);
    else
      cp.kind = plain("text", GalaxyType::text);
  }
  if (cp.kind.galaxy_type == GalaxyType::text && spec.choices)
    cp.kind = plain("select", GalaxyType::select);

  cp.optional = !cp.kind.is_output && !spec.required;
  if (cp.kind.is_in_place && cp.optional) {
    diag.warn(fmt::format("{}: in-place input is staged unconditionally and becomes required",
                          spec.dest));
    cp.optional = false;
  }

  if (spec.action == ArgAction::count)
    diag.warn(fmt::format("{}: count argument rendered as an integer; the flag is passed once",
                          spec.dest));
  if (spec.action == ArgAction::append)
    diag.warn(fmt::format("{}: append argument rendered as a single text value", spec.dest));
  if (spec.nargs && (spec.nargs->kind == Nargs::Kind::zero_or_more ||
                     spec.nargs->kind == Nargs::Kind::one_or_more ||
                     (spec.nargs->kind == Nargs::Kind::fixed && spec.nargs->count != 1)))
    diag.warn(fmt::format("{}: multi-value nargs rendered as whitespace-separated text",
                          spec.dest));
  return cp;
}

ClassifiedParameter classify(const ArgumentSpec &spec, const MetavarMap &metavars,
                             Diagnostics &diag) {
  return classify(spec, metavars, builtin_name_fallbacks(), diag);
}

ClassifiedParameter classify(const ArgumentSpec &spec, const Classifier &classifier,
                             Diagnostics &diag) {
  return classify(spec, classifier.metavars, classifier.names, diag);
}

namespace {

// Multi-value nargs arguments take free text regardless of the bound kind.
bool multi_value(const ArgumentSpec &spec) {
  return spec.nargs && (spec.nargs->kind == Nargs::Kind::zero_or_more ||
                        spec.nargs->kind == Nargs::Kind::one_or_more ||
                        (spec.nargs->kind == Nargs::Kind::fixed && spec.nargs->count != 1));
}

std::string help_with_notes(const ClassifiedParameter &cp) {
  std::string help = normalized_help(cp.spec);
  auto note = [&](std::string_view text) {
    help += help.empty() ? std::string(text) : " " + std::string(text);
  };
  if (cp.spec.action == ArgAction::append || multi_value(cp.spec))
    note("(Multiple values: separate with spaces.)");
  if (cp.spec.action == ArgAction::count)
    note("(Number of repetitions of the flag.)");
  return help;
}

} // namespace

std::string emit_param_xml(const ClassifiedParameter &cp) {
  const auto &spec = cp.spec;
  const auto &kind = cp.kind;
  auto p = xml::Node::element("param");
  p.attr("name", cp.galaxy_name);
  p.attr("type", std::string(to_string(kind.galaxy_type)));
  const std::string flag = spec.preferred_flag();

  if (kind.galaxy_type == GalaxyType::boolean) {
    const bool inverted = spec.action == ArgAction::store_false;
    p.attr("truevalue", inverted ? "" : flag);
    p.attr("falsevalue", inverted ? flag : "");
    bool checked = inverted;
    if (spec.default_value && std::holds_alternative<bool>(spec.default_value->value))
      checked = std::get<bool>(spec.default_value->value);
    p.attr("checked", checked ? "true" : "false");
  } else {
    if (kind.format_attr)
      p.attr("format", *kind.format_attr);
    const bool has_value = kind.galaxy_type != GalaxyType::data &&
                           kind.galaxy_type != GalaxyType::select && spec.default_value &&
                           !spec.default_value->is_none();
    if (has_value)
      p.attr("value", spec.default_value->display());
    if (cp.optional)
      p.attr("optional", "true");
  }
  p.attr("label", cp.label);
  if (!flag.empty())
    p.attr("argument", flag);
  const std::string help = help_with_notes(cp);
  if (!help.empty())
    p.attr("help", help);

  if (kind.galaxy_type == GalaxyType::select && spec.choices) {
    for (const auto &choice : *spec.choices) {
      const std::string v = choice.display();
      auto opt = xml::Node::element("option");
      opt.attr("value", v);
      if (spec.default_value && spec.default_value->display() == v)
        opt.attr("selected", "true");
      opt.add(xml::Node::text_node(v));
      p.add(std::move(opt));
    }
  }
  return xml::serialize_fragment(p);
}

std::string emit_output_xml(const ClassifiedParameter &cp) {
  auto d = xml::Node::element("data");
  d.attr("name", cp.galaxy_name);
  d.attr("format", cp.kind.format_attr.value_or("data"));
  d.attr("label", "${tool.name} on ${on_string}: " + cp.label);
  return xml::serialize_fragment(d);
}

CommandSegment command_segment(const ClassifiedParameter &cp, GuardStyle style,
                               std::optional<std::string> staging_ref) {
  const auto &spec = cp.spec;
  const std::string var = "$" + cp.galaxy_name;
  // staged outputs use the first declared flag, inputs the preferred one
  const std::string flag = spec.is_positional() ? std::string{}
                           : cp.kind.is_output  ? spec.flags.front()
                                                : spec.preferred_flag();
  auto with_flag = [&](const std::string &value) {
    return flag.empty() ? value : flag + " " + value;
  };

  CommandSegment seg;
  if (cp.kind.staging && (cp.kind.is_output || cp.kind.is_in_place)) {
    seg.text = with_flag("'" + staging_ref.value_or(cp.kind.staging->filename) + "'");
    return seg;
  }
  if (cp.kind.galaxy_type == GalaxyType::boolean) {
    if (style == GuardStyle::truevalue) {
      seg.text = var;
    } else {
      seg.text = flag;
      seg.guard = spec.action == ArgAction::store_false ? "not " + var : var;
    }
    return seg;
  }
  if (spec.action == ArgAction::count) {
    seg.text = fmt::format("## count argument: {} requested, flag passed once\n{}", var, flag);
    seg.guard = var;
    return seg;
  }
  seg.text = with_flag("'" + var + "'");
  if (cp.optional) {
    const bool numeric = cp.kind.galaxy_type == GalaxyType::integer ||
                         cp.kind.galaxy_type == GalaxyType::floating;
    seg.guard = numeric ? "str(" + var + ")" : var;
  }
  return seg;
}

std::optional<std::string> pre_command(const ClassifiedParameter &cp,
                                       std::optional<std::string> staging_ref) {
  if (!cp.kind.staging || !cp.kind.staging->pre_command_template)
    return std::nullopt;
  return instantiate(*cp.kind.staging->pre_command_template,
                     staging_ref.value_or(cp.kind.staging->filename), "$" + cp.galaxy_name);
}

std::optional<std::string> post_command(const ClassifiedParameter &cp,
                                        std::optional<std::string> staging_ref) {
  if (!cp.kind.staging || !cp.kind.staging->post_command_template)
    return std::nullopt;
  return instantiate(*cp.kind.staging->post_command_template,
                     staging_ref.value_or(cp.kind.staging->filename), "$" + cp.galaxy_name);
}

} // namespace wrapforge
