#include "wrapforge/dependencies.hpp"

#include <fmt/core.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace wrapforge {

namespace fs = std::filesystem;

std::optional<ManifestLocation> discover_manifest(const fs::path &project_root) {
  for (const char *name : {"environment.yml", "environment.yaml"}) {
    const auto p = project_root / name;
    if (fs::is_regular_file(p))
      return ManifestLocation{p, ManifestFormat::conda_env_yaml};
  }
  const auto req = project_root / "requirements.txt";
  if (fs::is_regular_file(req))
    return ManifestLocation{req, ManifestFormat::requirements_txt};
  return std::nullopt;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_package_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

std::string canonical(std::string_view name) {
  std::string out;
  for (char c : name)
    out.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

class Builder {
public:
  Builder(ManifestFormat format, Diagnostics &diag) : diag_(diag) { set_.source_format = format; }

  void add(Dependency dep) {
    if (dep.package.empty())
      throw ManifestError(ManifestError::Kind::parse, "empty package name");
    if (!seen_.insert(canonical(dep.package)).second)
      throw ManifestError(ManifestError::Kind::duplicate,
                          fmt::format("package '{}' listed more than once", dep.package));
    set_.entries.push_back(std::move(dep));
  }

  Diagnostics &diag() { return diag_; }
  DependencySet take() { return std::move(set_); }

private:
  Diagnostics &diag_;
  DependencySet set_;
  std::set<std::string> seen_;
};

bool exact_version(std::string_view v) {
  return !v.empty() && std::none_of(v.begin(), v.end(), [](char c) {
    return c == '*' || c == '<' || c == '>' || c == '!' || c == '~' || c == ',' || c == '|' ||
           c == ' ';
  });
}

// requirements.txt line: name[extras][specifier][; marker]
Dependency requirement_line(std::string line, Builder &b, std::string_view origin) {
  if (auto semi = line.find(';'); semi != std::string::npos) {
    b.diag().warn(fmt::format("{}: environment marker dropped from '{}'", origin, line));
    line = trim(line.substr(0, semi));
  }
  std::size_t i = 0;
  while (i < line.size() && is_package_char(line[i]))
    ++i;
  Dependency dep;
  dep.package = line.substr(0, i);
  if (dep.package.empty())
    throw ManifestError(ManifestError::Kind::parse,
                        fmt::format("{}: cannot read a package name from '{}'", origin, line));
  std::string rest = trim(line.substr(i));
  if (!rest.empty() && rest.front() == '[') {
    const auto close = rest.find(']');
    if (close == std::string::npos)
      throw ManifestError(ManifestError::Kind::parse,
                          fmt::format("{}: unterminated extras in '{}'", origin, line));
    rest = trim(rest.substr(close + 1));
  }
  if (rest.empty())
    return dep;
  for (std::string_view op : {"===", "=="}) {
    if (rest.rfind(op, 0) == 0) {
      const std::string v = trim(rest.substr(op.size()));
      if (exact_version(v)) {
        dep.version = v;
        return dep;
      }
      break;
    }
  }
  b.diag().warn(fmt::format("{}: version specifier '{}' for {} is not an exact pin; version dropped",
                            origin, rest, dep.package));
  return dep;
}

// conda match spec: [channel::]name[ =version[=build]] or name==version etc.
Dependency conda_spec(const std::string &text, Builder &b) {
  std::string s = trim(text);
  Dependency dep;
  if (auto sep = s.find("::"); sep != std::string::npos) {
    dep.channel = trim(s.substr(0, sep));
    s = trim(s.substr(sep + 2));
  }
  std::size_t i = 0;
  while (i < s.size() && is_package_char(s[i]))
    ++i;
  dep.package = s.substr(0, i);
  if (dep.package.empty())
    throw ManifestError(ManifestError::Kind::parse,
                        fmt::format("cannot read a package name from '{}'", text));
  std::string rest = trim(s.substr(i));
  if (rest.empty())
    return dep;
  std::string version;
  if (rest.rfind("==", 0) == 0)
    version = trim(rest.substr(2));
  else if (rest.front() == '=')
    version = trim(rest.substr(1));
  else if (std::isdigit(static_cast<unsigned char>(rest.front())))
    version = rest; // "name 1.2" form
  if (!version.empty()) {
    // "=1.9=h8e8c9d0_0": drop the build string
    if (auto build = version.find_first_of("= "); build != std::string::npos)
      version = trim(version.substr(0, build));
  }
  if (exact_version(version)) {
    dep.version = version;
  } else {
    b.diag().warn(fmt::format("version specifier '{}' for {} is not an exact pin; version dropped",
                              rest, dep.package));
  }
  return dep;
}

} // namespace

DependencySet parse_conda_env(std::string_view text, Diagnostics &diag) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception &e) {
    throw ManifestError(ManifestError::Kind::parse, fmt::format("malformed YAML: {}", e.what()));
  }
  if (!root.IsMap() || !root["dependencies"])
    throw ManifestError(ManifestError::Kind::parse, "environment file has no 'dependencies' list");
  const YAML::Node deps = root["dependencies"];
  if (deps.IsNull())
    return DependencySet{{}, ManifestFormat::conda_env_yaml};
  if (!deps.IsSequence())
    throw ManifestError(ManifestError::Kind::parse, "'dependencies' is not a list");

  Builder b(ManifestFormat::conda_env_yaml, diag);
  for (const auto &item : deps) {
    if (item.IsScalar()) {
      b.add(conda_spec(item.as<std::string>(), b));
    } else if (item.IsMap() && item["pip"]) {
      const YAML::Node pip = item["pip"];
      if (!pip.IsSequence())
        throw ManifestError(ManifestError::Kind::parse, "'pip' entry is not a list");
      for (const auto &p : pip) {
        if (!p.IsScalar())
          throw ManifestError(ManifestError::Kind::parse, "non-scalar pip requirement");
        const std::string line = trim(p.as<std::string>());
        if (line.empty() || line.front() == '-') {
          diag.warn(fmt::format("pip option '{}' ignored", line));
          continue;
        }
        b.add(requirement_line(line, b, "pip"));
      }
    } else {
      throw ManifestError(ManifestError::Kind::parse, "unsupported entry in 'dependencies'");
    }
  }
  return b.take();
}

DependencySet parse_requirements_txt(std::string_view text, Diagnostics &diag) {
  Builder b(ManifestFormat::requirements_txt, diag);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos &&
                                    (hash == 0 || std::isspace(static_cast<unsigned char>(line[hash - 1]))))
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::string origin = fmt::format("requirements.txt:{}", line_no);
    if (line.front() == '-') {
      diag.warn(fmt::format("{}: option line '{}' ignored", origin, line));
      continue;
    }
    b.add(requirement_line(line, b, origin));
  }
  return b.take();
}

DependencySet load_manifest(const ManifestLocation &where, Diagnostics &diag) {
  std::ifstream in(where.path, std::ios::binary);
  if (!in)
    throw ManifestError(ManifestError::Kind::io, fmt::format("cannot read {}", where.path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  switch (where.format) {
  case ManifestFormat::conda_env_yaml:
    return parse_conda_env(buf.str(), diag);
  case ManifestFormat::requirements_txt:
    return parse_requirements_txt(buf.str(), diag);
  case ManifestFormat::none:
    break;
  }
  return {};
}

std::vector<xml::Node> emit_requirements(const DependencySet &deps) {
  std::vector<xml::Node> out;
  out.reserve(deps.entries.size());
  for (const auto &d : deps.entries) {
    auto r = xml::Node::element("requirement");
    r.attr("type", "package");
    if (d.version)
      r.attr("version", *d.version);
    r.add(xml::Node::text_node(d.package));
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace wrapforge
