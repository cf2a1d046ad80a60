// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "fixtures.hpp"
#include "random_interface.hpp"
#include "table1.hpp"

#include "wrapforge/batch.hpp"

#include <fmt/core.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace wrapforge;
using namespace wrapforge::testkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::vector<std::string> normalized_lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string w, joined;
    while (words >> w)
      joined += (joined.empty() ? "" : " ") + w;
    if (!joined.empty())
      out.push_back(joined);
  }
  return out;
}

bool contains_line(const std::vector<std::string> &lines, const std::string &want) {
  return std::find(lines.begin(), lines.end(), want) != lines.end();
}

std::vector<std::pair<std::string, std::string>> attribute_set(const xml::Node &n) {
  auto attrs = n.attributes;
  std::sort(attrs.begin(), attrs.end());
  return attrs;
}

Outcome table1() {
  Outcome o;
  const auto map = builtin_metavar_map();
  o.require(map.size() == kTable1.size(), fmt::format("map has {} rows", map.size()));
  for (const auto &row : kTable1) {
    ArgumentSpec s;
    s.flags = {"--x"};
    s.dest = "x";
    s.metavar = std::string(row.metavar);
    Diagnostics d;
    const auto cp = classify(s, map, d);
    const std::string fmt_got = cp.kind.format_attr.value_or("");
    o.require(to_string(cp.kind.galaxy_type) == row.galaxy_type && fmt_got == row.format,
              fmt::format("{} -> {}/{}", row.metavar, to_string(cp.kind.galaxy_type), fmt_got));
  }
  return o;
}

Outcome code_box_1() {
  Outcome o;
  GeneratorConfig cfg;
  cfg.guard_style = GuardStyle::if_block;
  const auto p = run_pipeline(read_fixture("corpus/bin/anvi-summarize"), "anvi-summarize", cfg);
  const auto lines = normalized_lines(p.document.command_text);
  for (const char *want : {"anvi-summarize --profile-db '$profile_db'", "#if $init_gene_coverages:",
                           "--init-gene-coverages", "#end if"})
    o.require(contains_line(lines, want), fmt::format("missing line `{}`", want));
  const auto at = [&](const char *s) { return std::find(lines.begin(), lines.end(), s) - lines.begin(); };
  o.require(at("#if $init_gene_coverages:") + 1 == at("--init-gene-coverages") &&
                at("--init-gene-coverages") + 1 == at("#end if"),
            "conditional block is not contiguous");
  return o;
}

Outcome code_box_2() {
  Outcome o;
  Diagnostics d;
  const auto spec = parse_declaration("parser.add_argument('-o', '--output-db', dest='output_db', "
                                      "metavar='PROFILE_DB_OUT', required=True)",
                                      d);
  const auto cp = classify(spec, Classifier{}, d);
  const std::string staging = "anvio_profile.db";
  o.require(cp.kind.staging && cp.kind.staging->filename == staging, "staging filename");
  o.require(pre_command(cp) == "mkdir -p '" + staging + ".d'", "pre-command: " + pre_command(cp).value_or("none"));
  o.require(command_segment(cp).text == "-o '" + staging + "'", "segment: " + command_segment(cp).text);
  o.require(post_command(cp) == "cp -r '" + staging + "'* '$output_db'",
            "post-command: " + post_command(cp).value_or("none"));
  return o;
}

Outcome code_box_3() {
  Outcome o;
  const auto p = run_pipeline("import argparse\n__provides__ = ['interactive']\n"
                              "parser = argparse.ArgumentParser()\n",
                              "anvi-interactive");
  const auto root = xml::parse(p.text);
  const auto *eps = root.child("entry_points");
  o.require(eps != nullptr, "no <entry_points>");
  if (!eps)
    return o;
  const auto *ep = eps->child("entry_point");
  o.require(ep && ep->attribute("port") && *ep->attribute("port") == "8080", "port");
  o.require(ep && ep->child("url") && ep->child("url")->inner_text() == "interactives/anvio", "url");
  return o;
}

Outcome case_study_1() {
  Outcome o;
  Diagnostics d;
  const auto spec = parse_declaration("parser.add_argument('-p', '--profile-db', dest='profile_db', "
                                      "required=True, help='A profile database', metavar='PROFILE_DB')",
                                      d);
  const auto got = xml::parse(emit_param_xml(classify(spec, Classifier{}, d)));
  const auto want = xml::parse(R"(<param name="profile_db" type="data" format="anvio_profile_db" label="Profile Db" argument="--profile-db" help="A profile database" />)");
  o.require(got.name == "param", "element name");
  o.require(attribute_set(got) == attribute_set(want), "attribute set differs: " + xml::serialize_fragment(got));
  return o;
}

Outcome dependencies() {
  Outcome o;
  const auto dir = scratch_dir("acceptance_deps");
  std::ofstream(dir / "environment.yml") << "name: t\ndependencies:\n  - python=3.10\n  - pandas=1.4.2\n";
  std::ofstream(dir / "requirements.txt") << "pandas==0.0.1\n";
  const auto where = discover_manifest(dir);
  o.require(where && where->format == ManifestFormat::conda_env_yaml, "conda file not preferred");
  if (where) {
    Diagnostics d;
    const auto els = emit_requirements(load_manifest(*where, d));
    bool found = false;
    for (const auto &e : els)
      found = found || xml::serialize_fragment(e) ==
                           R"(<requirement type="package" version="1.4.2">pandas</requirement>)";
    o.require(found, "pandas requirement not emitted");
  }
  fs::remove_all(dir);
  return o;
}

BatchOptions corpus_options(const fs::path &out) {
  BatchOptions opts;
  opts.inputs = {fixture_path("corpus/bin"), fixture_path("corpus/sandbox")};
  opts.skip_list = fixture_path("corpus/skip-list.txt");
  opts.config.output_dir = out;
  return opts;
}

Outcome lint_parity() {
  Outcome o;
  const auto out = scratch_dir("acceptance_lint");
  const auto report = run_batch(corpus_options(out));
  o.require(report.total_scripts >= 20, "corpus smaller than 20 scripts");
  o.require(report.failed.empty(), fmt::format("{} scripts failed", report.failed.size()));
  for (const auto &s : report.succeeded) {
    std::ifstream in(s.wrapper_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto codes = codes_of(lint(buf.str()));
    o.require(codes == std::vector<std::string>{"W1"},
              fmt::format("{}: findings {}", s.tool_name, fmt::join(codes, ",")));
  }
  fs::remove_all(out);
  return o;
}

Outcome property_suite() {
  Outcome o;
  int bad = 0;
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    const auto script = random_script(seed);
    try {
      const auto p = run_pipeline(script.source, script.tool_name);
      const auto v = wrapper_violations(p);
      if (!v.empty() && bad++ < 3)
        o.require(false, fmt::format("seed {}: {}", seed, v.front()));
      else if (!v.empty())
        o.pass = false;
    } catch (const std::exception &e) {
      o.require(false, fmt::format("seed {}: {}", seed, e.what()));
      ++bad;
    }
  }
  if (bad)
    o.detail += fmt::format(" ({} of 200 failing)", bad);
  return o;
}

Outcome scale_claim() {
  Outcome o;
  const auto out = scratch_dir("acceptance_scale");
  const auto report = run_batch(corpus_options(out));
  o.require(report.accounting_holds(), "total != skipped + succeeded + failed");
  o.require(report.total_scripts == 20 && report.skipped.size() == 2 && report.succeeded.size() == 18,
            "unexpected corpus accounting");
  if (const char *src = std::getenv("ANVIO_SOURCE")) {
    BatchOptions opts;
    opts.inputs = {fs::path(src) / "bin", fs::path(src) / "sandbox"};
    opts.skip_list = fixture_path("corpus/skip-list.txt");
    opts.config.output_dir = out / "anvio";
    try {
      const auto big = run_batch(opts);
      o.require(big.total_scripts == 176, fmt::format("discovered {} scripts", big.total_scripts));
      o.require(big.accounting_holds(), "anvi'o accounting");
      o.detail += fmt::format("anvi'o: {} succeeded, {} skipped, {} failed", big.succeeded.size(),
                              big.skipped.size(), big.failed.size());
    } catch (const std::exception &e) {
      o.require(false, std::string("anvi'o run crashed: ") + e.what());
    }
  } else {
    o.detail += "substituted: corpus accounting plus the property suite (ANVIO_SOURCE not set)";
  }
  fs::remove_all(out);
  return o;
}

Outcome non_execution() {
  Outcome o;
  const auto dir = scratch_dir("acceptance_sentinel");
  const auto script = dir / "writes_sentinel.py";
  fs::copy_file(fixture_path("scripts/writes_sentinel.py"), script);
  const auto cwd = fs::current_path();
  fs::current_path(dir);
  try {
    Diagnostics d;
    extract_interface_from_file(script, d);
  } catch (const std::exception &e) {
    o.require(false, std::string("extraction failed: ") + e.what());
  }
  fs::current_path(cwd);
  o.require(!fs::exists(dir / "wrapforge_sentinel.txt"), "sentinel file exists");
  fs::remove_all(dir);
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int number;
    const char *title;
    double budget_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "metavar table mapping", 1, table1},
      {2, "anvi-summarize command block", 1, code_box_1},
      {3, "composite output staging", 1, code_box_2},
      {4, "interactive entry point", 1, code_box_3},
      {5, "profile-db param element", 1, case_study_1},
      {6, "dependency translation", 1, dependencies},
      {7, "lint parity over corpus", 5, lint_parity},
      {8, "randomized round-trip suite", 30, property_suite},
      {9, "batch accounting", 30, scale_claim},
      {10, "non-execution safety", 1, non_execution},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception &e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_s, fmt::format("took {:.2f}s, budget {}s", secs, c.budget_s));
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("{} criterion {:>2}: {} ({:.3f}s){}\n", o.pass ? "PASS" : "FAIL",
                             c.number, c.title, secs, o.detail.empty() ? "" : " - " + o.detail);
  }
  return failures ? 1 : 0;
}
