#include "wrapforge/batch.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace wrapforge {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool looks_like_script(const fs::path &p) {
  const auto name = p.filename().string();
  if (name.empty() || name.front() == '.' || name == "__init__.py")
    return false;
  if (p.extension() == ".py")
    return true;
  std::ifstream in(p, std::ios::binary);
  std::string first;
  if (!in || !std::getline(in, first))
    return false;
  return first.rfind("#!", 0) == 0 && first.find("python") != std::string::npos;
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw IOFailure(fmt::format("cannot read {}", p.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Manifests are looked up once per project root: the input directory, or
// its parent when the directory itself has none.
class ManifestCache {
public:
  struct Entry {
    DependencySet deps;
    std::vector<std::string> warnings;
    std::optional<std::string> error;
  };

  const Entry &for_root(const fs::path &dir) {
    const auto key = fs::weakly_canonical(dir);
    if (auto it = cache_.find(key); it != cache_.end())
      return it->second;
    Entry e;
    auto where = discover_manifest(key);
    if (!where && key.has_parent_path() && key.parent_path() != key)
      where = discover_manifest(key.parent_path());
    if (where) {
      Diagnostics d;
      try {
        e.deps = load_manifest(*where, d);
      } catch (const ManifestError &ex) {
        e.error = fmt::format("{}: {}", where->path.filename().string(), ex.what());
      }
      e.warnings = d.warnings();
    }
    return cache_.emplace(key, std::move(e)).first->second;
  }

private:
  std::map<fs::path, Entry> cache_;
};

} // namespace

std::vector<fs::path> discover_scripts(const std::vector<fs::path> &roots) {
  std::vector<fs::path> out;
  for (const auto &root : roots) {
    std::error_code ec;
    if (!fs::is_directory(root, ec))
      throw IOFailure(fmt::format("input root {} is not a readable directory", root.string()));
    fs::directory_iterator it(root, ec);
    if (ec)
      throw IOFailure(fmt::format("cannot list {}: {}", root.string(), ec.message()));
    for (const auto &entry : it)
      if (entry.is_regular_file() && looks_like_script(entry.path()))
        out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> read_skip_list(const fs::path &skip_file) {
  std::istringstream in(read_file(skip_file));
  std::set<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto name = trim(line);
    if (!name.empty())
      names.insert(std::move(name));
  }
  return names;
}

SkipPartition apply_skip_list(const std::vector<fs::path> &paths, const std::set<std::string> &names,
                              Diagnostics &diag) {
  SkipPartition part;
  std::set<std::string> used;
  for (const auto &p : paths) {
    const auto base = p.filename().string();
    const auto tool = tool_name_for(p);
    if (names.count(base) || names.count(tool)) {
      used.insert(names.count(base) ? base : tool);
      part.skipped.push_back(p);
    } else {
      part.kept.push_back(p);
    }
  }
  for (const auto &n : names)
    if (!used.count(n))
      diag.warn(fmt::format("skip-list entry '{}' matches no script", n));
  return part;
}

SkipPartition apply_skip_list(const std::vector<fs::path> &paths, const fs::path &skip_file,
                              Diagnostics &diag) {
  return apply_skip_list(paths, read_skip_list(skip_file), diag);
}

std::string BatchReport::to_text() const {
  std::string out;
  out += fmt::format("total: {}\n", total_scripts);
  out += fmt::format("skipped: {}\n", skipped.size());
  out += fmt::format("succeeded: {}\n", succeeded.size());
  out += fmt::format("failed: {}\n", failed.size());
  out += fmt::format("warnings: {}\n", warnings.size());
  for (const auto &s : skipped)
    out += fmt::format("skip {}\n", s);
  for (const auto &s : succeeded) {
    out += fmt::format("ok {} -> {}\n", s.tool_name, s.wrapper_path.filename().string());
    for (const auto &f : s.findings)
      out += fmt::format("  {}\n", format_finding(f));
  }
  for (const auto &f : failed)
    out += fmt::format("fail {} [{}] {}\n", f.tool_name, f.kind, f.message);
  for (const auto &w : warnings)
    out += fmt::format("warn {}\n", w);
  return out;
}

BatchReport run_batch(const BatchOptions &options) {
  options.config.validate();
  Classifier classifier;
  if (options.config.metavar_map_extension_path)
    classifier.metavars.extend_from_file(*options.config.metavar_map_extension_path);
  if (options.config.name_fallback_path)
    classifier.names.extend_from_file(*options.config.name_fallback_path);

  BatchReport report;
  const auto scripts = discover_scripts(options.inputs);
  report.total_scripts = scripts.size();

  SkipPartition part{scripts, {}};
  if (options.skip_list) {
    Diagnostics d;
    part = apply_skip_list(scripts, *options.skip_list, d);
    for (const auto &w : d.warnings())
      report.warnings.push_back("skip-list: " + w);
  }
  for (const auto &p : part.skipped)
    report.skipped.push_back(tool_name_for(p));

  std::error_code ec;
  fs::create_directories(options.config.output_dir, ec);
  if (ec)
    throw IOFailure(fmt::format("cannot create output directory {}: {}",
                                options.config.output_dir.string(), ec.message()));

  ManifestCache manifests;
  std::set<std::string> reported_manifests;
  std::map<std::string, std::string> written; // tool_id -> tool name

  for (const auto &script : part.kept) {
    const auto tool = tool_name_for(script);
    Diagnostics diag;
    auto fail = [&](std::string kind, std::string message) {
      report.failed.push_back(ScriptFailure{tool, std::move(kind), std::move(message)});
    };
    try {
      auto interface = extract_interface_from_file(script, diag);

      std::vector<ClassifiedParameter> params;
      for (const auto &spec : interface.arguments)
        if (!is_terminal_action(spec))
          params.push_back(classify(spec, classifier, diag));

      const auto &manifest = manifests.for_root(script.parent_path());
      const auto root_key = fs::weakly_canonical(script.parent_path()).string();
      if (reported_manifests.insert(root_key).second)
        for (const auto &w : manifest.warnings)
          report.warnings.push_back("manifest: " + w);
      if (manifest.error) {
        fail("manifest", *manifest.error);
        continue;
      }

      const auto doc = render_wrapper(interface, params, manifest.deps, options.config);
      if (auto [it, fresh] = written.emplace(doc.tool_id, tool); !fresh) {
        fail("render", fmt::format("tool id '{}' already produced by {}", doc.tool_id, it->second));
        continue;
      }
      const std::string text = serialize(doc);
      auto findings = lint(text);
      if (has_errors(findings)) {
        std::string msg;
        for (const auto &f : findings)
          if (f.severity == Severity::error)
            msg += (msg.empty() ? "" : "; ") + format_finding(f);
        fail("lint", msg);
        continue;
      }
      const auto target = options.config.output_dir / wrapper_filename(doc);
      std::ofstream out(target, std::ios::binary | std::ios::trunc);
      if (!out || !(out << text)) {
        fail("io", fmt::format("cannot write {}", target.string()));
        continue;
      }
      report.succeeded.push_back(ScriptSuccess{tool, target, std::move(findings)});
    } catch (const ExtractionFailure &e) {
      fail(std::string(to_string(e.kind())), e.what());
    } catch (const RenderFailure &e) {
      fail("render", e.what());
    } catch (const IOFailure &e) {
      fail("io", e.what());
    } catch (const std::exception &e) {
      fail("classification", e.what());
    }
    for (const auto &w : diag.warnings())
      report.warnings.push_back(tool + ": " + w);
  }
  return report;
}

namespace {

int lint_files(const std::vector<std::string> &files, std::ostream &out, std::ostream &err) {
  bool errors = false;
  for (const auto &f : files) {
    std::string text;
    try {
      text = read_file(f);
    } catch (const IOFailure &e) {
      err << "wrapforge: " << e.what() << "\n";
      return 2;
    }
    const auto findings = lint(text);
    errors = errors || has_errors(findings);
    if (findings.empty())
      out << f << ": ok\n";
    for (const auto &finding : findings)
      out << f << ": " << format_finding(finding) << "\n";
  }
  return errors ? 1 : 0;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Generate Galaxy tool wrappers from argparse scripts", "wrapforge"};
  app.require_subcommand(0, 1);

  std::vector<std::string> lint_only;
  app.add_option("--lint-only", lint_only, "Lint existing wrapper XML files and exit");

  auto *gen = app.add_subcommand("generate", "Generate wrappers for every script under the inputs");
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string skip_list, metavar_map, name_fallbacks, report_path, guard = "truevalue";
  std::string version = "1.0.0", url_template = "interactives/{suite}";
  int port = 8080;
  std::vector<std::string> citations;
  gen->add_option("--in", inputs, "Directory holding scripts (repeatable)")->required();
  gen->add_option("--out", out_dir, "Directory for generated XML");
  gen->add_option("--skip-list", skip_list, "File of tool names to leave out");
  gen->add_option("--version", version, "Version attribute for every wrapper");
  gen->add_option("--metavar-map", metavar_map, "Extra metavar entries (TOKEN=type[:format][:flags])");
  gen->add_option("--name-fallbacks", name_fallbacks, "Extra dest-name entries, same format");
  gen->add_option("--interactive-port", port, "Port for interactive entry points");
  gen->add_option("--interactive-url", url_template, "URL template for interactive entry points");
  gen->add_option("--guard-style", guard, "How optional flags are guarded")
      ->check(CLI::IsMember({"if_block", "truevalue"}));
  gen->add_option("--citation", citations, "DOI to cite (repeatable)");
  gen->add_option("--report", report_path, "Write the batch report here");

  auto *lint_cmd = app.add_subcommand("lint", "Lint wrapper XML files");
  std::vector<std::string> lint_targets;
  lint_cmd->add_option("xml", lint_targets, "Wrapper files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "wrapforge: " << e.what() << "\n";
    return 2;
  }

  if (!lint_only.empty())
    return lint_files(lint_only, out, err);
  if (*lint_cmd)
    return lint_files(lint_targets, out, err);
  if (!*gen) {
    err << app.help();
    return 2;
  }

  BatchOptions opts;
  for (const auto &i : inputs)
    opts.inputs.emplace_back(i);
  if (!skip_list.empty())
    opts.skip_list = skip_list;
  opts.config.version_string = version;
  opts.config.interactive_port = port;
  opts.config.interactive_url_template = url_template;
  opts.config.guard_style = guard == "truevalue" ? GuardStyle::truevalue : GuardStyle::if_block;
  opts.config.citation_dois = citations;
  if (!metavar_map.empty())
    opts.config.metavar_map_extension_path = metavar_map;
  if (!name_fallbacks.empty())
    opts.config.name_fallback_path = name_fallbacks;
  opts.config.output_dir = out_dir;

  BatchReport report;
  try {
    report = run_batch(opts);
  } catch (const ConfigError &e) {
    err << "wrapforge: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IOFailure &e) {
    err << "wrapforge: " << e.what() << "\n";
    return 2;
  }

  const auto text = report.to_text();
  out << text;
  if (!report_path.empty()) {
    std::ofstream r(report_path, std::ios::binary | std::ios::trunc);
    if (!r || !(r << text)) {
      err << "wrapforge: cannot write report " << report_path << "\n";
      return 2;
    }
  }
  return report.failed.empty() ? 0 : 1;
}

} // namespace wrapforge
