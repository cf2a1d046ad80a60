#include "wrapforge/linter.hpp"

#include "wrapforge/xml.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace wrapforge {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Galaxy-provided names that need no declaration.
const std::set<std::string> &implicit_names() {
  static const std::set<std::string> names{"tool", "on_string", "input", "output", "GALAXY_SLOTS",
                                           "GALAXY_MEMORY_MB", "_GALAXY_JOB_TMP_DIR"};
  return names;
}

struct VarRef {
  std::string name;
  int offset_line;
};

class Linter {
public:
  std::vector<Finding> run(std::string_view text) {
    xml::Node root;
    try {
      root = xml::parse(text);
    } catch (const xml::ParseError &e) {
      return {Finding{Severity::error, "E1", e.what(), std::nullopt, e.line()}};
    }
    check_root(root);
    collect_declarations(root, "tool");
    check_command(root);
    check_sections(root);
    std::stable_sort(findings_.begin(), findings_.end(), [](const Finding &a, const Finding &b) {
      const int la = a.line.value_or(1 << 30), lb = b.line.value_or(1 << 30);
      return la < lb;
    });
    return std::move(findings_);
  }

private:
  void add(Severity s, std::string code, std::string msg, std::optional<std::string> where,
           std::optional<int> line) {
    findings_.push_back(Finding{s, std::move(code), std::move(msg), std::move(where), line});
  }

  void check_root(const xml::Node &root) {
    if (root.name != "tool") {
      add(Severity::error, "E2", fmt::format("root element is <{}>, expected <tool>", root.name),
          root.name, root.line);
      return;
    }
    for (const char *a : {"id", "name", "version"}) {
      const auto *v = root.attribute(a);
      if (!v || trim(*v).empty())
        add(Severity::error, "E2", fmt::format("<tool> lacks a non-empty '{}' attribute", a), "tool",
            root.line);
    }
  }

  void collect_declarations(const xml::Node &node, const std::string &path) {
    for (const auto &c : node.children) {
      if (c.kind != xml::Node::Kind::element)
        continue;
      const std::string here = path + "/" + c.name;
      static const std::set<std::string> named{"param",   "conditional", "section",
                                               "repeat",  "data",        "collection"};
      if (named.count(c.name)) {
        if (const auto *n = c.attribute("name")) {
          declared_.insert(*n);
          if (c.name == "param" || c.name == "data") {
            auto [it, fresh] = first_seen_.emplace(*n, c.line);
            if (!fresh)
              add(Severity::error, "E3",
                  fmt::format("name '{}' declared again (first on line {})", *n, it->second), here,
                  c.line);
          }
        }
      }
      collect_declarations(c, here);
    }
  }

  void check_command(const xml::Node &root) {
    const auto *cmd = root.child("command");
    if (!cmd)
      return;
    const std::string body = cmd->inner_text();
    std::istringstream in(body);
    std::string raw;
    int offset = 0;
    std::vector<VarRef> refs;
    std::vector<std::pair<std::string, int>> blocks; // open directive, line
    while (std::getline(in, raw)) {
      const int line_no = cmd->line + offset;
      ++offset;
      const std::string line = trim(raw);
      if (line.rfind("##", 0) == 0)
        continue;
      if (!line.empty() && line.front() == '#') {
        directive(line, line_no, blocks);
      }
      scan_vars(line, line_no, refs);
    }
    for (const auto &[kind, line] : blocks)
      add(Severity::error, "E5", fmt::format("#{} without matching #end {}", kind, kind),
          "tool/command", line);
    std::set<std::string> reported;
    for (const auto &r : refs) {
      if (declared_.count(r.name) || r.name.rfind("__", 0) == 0 || implicit_names().count(r.name))
        continue;
      if (!reported.insert(r.name).second)
        continue;
      add(Severity::error, "E4", fmt::format("command references undeclared variable '${}'", r.name),
          "tool/command", r.offset_line);
    }
  }

  void directive(const std::string &line, int line_no,
                 std::vector<std::pair<std::string, int>> &blocks) {
    std::size_t i = 1;
    std::string word;
    while (i < line.size() && ident_char(line[i]))
      word.push_back(line[i++]);
    auto next_var = [&]() -> std::optional<std::string> {
      auto d = line.find('$', i);
      if (d == std::string::npos)
        return std::nullopt;
      std::size_t j = d + 1;
      if (j < line.size() && line[j] == '{')
        ++j;
      std::string v;
      while (j < line.size() && ident_char(line[j]))
        v.push_back(line[j++]);
      return v.empty() ? std::nullopt : std::optional(v);
    };
    if (word == "set" || word == "silent") {
      if (auto v = next_var(); v && word == "set")
        declared_.insert(*v);
    } else if (word == "for") {
      if (auto v = next_var())
        declared_.insert(*v);
      blocks.emplace_back("for", line_no);
    } else if (word == "if" || word == "unless" || word == "while") {
      blocks.emplace_back(word, line_no);
    } else if (word == "end") {
      std::string what = trim(line.substr(i));
      std::string kind;
      for (char c : what) {
        if (!ident_char(c))
          break;
        kind.push_back(c);
      }
      if (blocks.empty() || blocks.back().first != kind) {
        add(Severity::error, "E5", fmt::format("#end {} without an open #{}", kind, kind),
            "tool/command", line_no);
        return;
      }
      blocks.pop_back();
    } else if (word == "else" || word == "elif") {
      if (blocks.empty() || blocks.back().first != "if")
        add(Severity::error, "E5", fmt::format("#{} outside an #if block", word), "tool/command",
            line_no);
    }
  }

  static void scan_vars(const std::string &line, int line_no, std::vector<VarRef> &refs) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '$')
        continue;
      if (i > 0 && line[i - 1] == '\\')
        continue;
      std::size_t j = i + 1;
      if (j < line.size() && line[j] == '{')
        ++j;
      if (j >= line.size() || !ident_start(line[j]))
        continue;
      std::string name;
      while (j < line.size() && ident_char(line[j]))
        name.push_back(line[j++]);
      refs.push_back(VarRef{name, line_no});
      i = j - 1;
    }
  }

  void check_sections(const xml::Node &root) {
    if (!root.child("tests"))
      add(Severity::warning, "W1", "no <tests> section; the wrapper ships without test cases",
          "tool", std::nullopt);
    const auto *help = root.child("help");
    if (!help)
      add(Severity::warning, "W2", "no <help> section", "tool", std::nullopt);
    else if (trim(help->inner_text()).empty())
      add(Severity::warning, "W2", "<help> is empty", "tool/help", help->line);
    if (const auto *cits = root.child("citations"))
      for (const auto *c : cits->child_elements("citation"))
        if (trim(c->inner_text()).empty())
          add(Severity::warning, "W3", "empty <citation>", "tool/citations/citation", c->line);
  }

  std::vector<Finding> findings_;
  std::set<std::string> declared_;
  std::map<std::string, int> first_seen_;
};

} // namespace

std::vector<Finding> lint(std::string_view document_text) {
  try {
    return Linter{}.run(document_text);
  } catch (const std::exception &e) {
    return {Finding{Severity::error, "E1", e.what(), std::nullopt, std::nullopt}};
  }
}

bool has_errors(const std::vector<Finding> &findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding &f) { return f.severity == Severity::error; });
}

std::string format_finding(const Finding &f) {
  std::string where;
  if (f.line)
    where = fmt::format(":{}", *f.line);
  return fmt::format("{}{} [{}] {}{}", f.severity == Severity::error ? "error" : "warning", where,
                     f.code, f.message, f.location ? " (" + *f.location + ")" : "");
}

std::vector<std::string> codes_of(const std::vector<Finding> &findings) {
  std::vector<std::string> out;
  for (const auto &f : findings)
    out.push_back(f.code);
  return out;
}

} // namespace wrapforge
