#include "random_interface.hpp"

#include "wrapforge/linter.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace wrapforge::testkit {

namespace {

const std::vector<std::string> kWords{"sample", "min", "max", "contig", "gene", "depth",
                                      "cluster", "bin", "taxon", "read", "score", "mode",
                                      "report", "skip", "split", "kmer", "tree", "limit"};

const std::vector<std::string> kInputMetavars{"CONTIGS_DB", "PROFILE_DB", "PAN_DB", "FASTA", "BAM",
                                              "TREE", "TAXONOMY", "TABULAR", "FILE_PATH",
                                              "GENOMES_DB", "COLLECTION", "VCF"};

struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  bool chance(int percent) { return between(1, 100) <= percent; }
  template <class T> const T &pick(const std::vector<T> &v) {
    return v[static_cast<std::size_t>(between(0, static_cast<int>(v.size()) - 1))];
  }
};

} // namespace

RandomScript random_script(std::uint32_t seed) {
  Rng rng(seed);
  RandomScript out;
  out.tool_name = fmt::format("rt-tool-{}", seed);

  std::ostringstream src;
  src << "#!/usr/bin/env python\n\"\"\"Generated fixture " << seed << ".\"\"\"\n\nimport argparse\n\n";
  const bool interactive = rng.chance(15);
  if (interactive)
    src << "__provides__ = ['interactive']\n";
  const int default_const = rng.between(1, 500);
  src << "DEFAULT_LIMIT = " << default_const << "\n\n";

  const bool in_main = rng.chance(50);
  const std::string ind = in_main ? "    " : "";
  if (in_main)
    src << "if __name__ == '__main__':\n";
  src << ind << "parser = argparse.ArgumentParser(description='Tool " << seed
      << " does a thing & reports <results>.')\n";
  const bool grouped = rng.chance(60);
  if (grouped)
    src << ind << "grp = parser.add_argument_group('OPTIONS', 'Grouped options')\n";
  const bool exclusive = rng.chance(30);
  if (exclusive)
    src << ind << "mx = parser.add_mutually_exclusive_group()\n";

  std::set<std::string> dests;
  std::set<char> shorts;
  const int n = rng.between(0, 12);
  for (int i = 0; i < n; ++i) {
    std::string dest = rng.pick(kWords);
    if (rng.chance(60))
      dest += "_" + rng.pick(kWords);
    while (dests.count(dest))
      dest += "_" + std::to_string(i);
    dests.insert(dest);
    std::string flag = "--" + dest;
    std::replace(flag.begin(), flag.end(), '_', '-');

    std::vector<std::string> parts;
    const int shape = rng.between(0, 9);
    const bool positional = shape == 0;
    if (positional) {
      parts.push_back(fmt::format("'{}'", dest));
    } else {
      const char c = static_cast<char>('a' + rng.between(0, 25));
      if (c != 'h' && rng.chance(40) && shorts.insert(c).second)
        parts.push_back(fmt::format("'-{}'", c));
      parts.push_back(fmt::format("'{}'", flag));
    }
    std::string receiver = "parser";
    if (grouped && rng.chance(50))
      receiver = "grp";

    switch (shape) {
    case 0: // positional data or text
      if (rng.chance(60))
        parts.push_back(fmt::format("metavar='{}'", rng.pick(kInputMetavars)));
      if (rng.chance(20))
        parts.push_back("nargs='?'");
      break;
    case 1:
    case 2: // boolean
      parts.push_back(rng.chance(75) ? "action='store_true'" : "action='store_false'");
      if (exclusive && rng.chance(50))
        receiver = "mx";
      break;
    case 3: // choices
      parts.push_back(rng.chance(50) ? "choices=['euclidean', 'manhattan', 'cosine']"
                                     : "choices=('fast', 'slow')");
      if (rng.chance(50))
        parts.push_back(rng.chance(50) ? "default='euclidean'" : "default='fast'");
      break;
    case 4: // integer
      parts.push_back("type=int");
      if (rng.chance(50))
        parts.push_back("metavar='INT'");
      parts.push_back(rng.chance(50) ? "default=DEFAULT_LIMIT"
                                     : fmt::format("default={}", rng.between(-5, 99)));
      break;
    case 5: // float
      parts.push_back("type=float");
      if (rng.chance(50))
        parts.push_back("metavar='FLOAT'");
      if (rng.chance(60))
        parts.push_back(fmt::format("default={}.{}", rng.between(0, 9), rng.between(0, 9)));
      break;
    case 6: // data input
      parts.push_back(fmt::format("metavar='{}'", rng.pick(kInputMetavars)));
      break;
    case 7: // outputs
      parts.push_back(rng.chance(60) ? "metavar='PROFILE_DB_OUT'" : "metavar='DIR_PATH_OUT'");
      break;
    default: // text
      if (rng.chance(50))
        parts.push_back("metavar='STRING'");
      if (rng.chance(40))
        parts.push_back(fmt::format("default='{}'", rng.pick(kWords)));
      break;
    }
    if (!positional && shape != 1 && shape != 2 && shape != 7 && rng.chance(25))
      parts.push_back("required=True");
    if (rng.chance(85))
      parts.push_back(fmt::format("help='Sets {} (default: %(default)s).'", dest));

    std::string call = receiver + ".add_argument(";
    for (std::size_t k = 0; k < parts.size(); ++k)
      call += (k ? ", " : "") + parts[k];
    call += ")";
    src << ind << call << "\n";
    ++out.declarations;
  }
  if (rng.chance(30)) {
    src << ind << "parser.add_argument('--version', action='version', version='1.0')\n";
    ++out.declarations;
  }
  src << ind << "args = parser.parse_args()\n";
  out.source = src.str();
  return out;
}

Pipeline run_pipeline(const std::string &source, const std::string &tool_name,
                      const GeneratorConfig &config) {
  Pipeline p;
  Diagnostics diag;
  p.interface = extract_interface(source, tool_name, diag);
  Classifier classifier;
  for (const auto &spec : p.interface.arguments)
    if (!is_terminal_action(spec))
      p.params.push_back(classify(spec, classifier, diag));
  p.document = render_wrapper(p.interface, p.params, DependencySet{}, config);
  p.text = serialize(p.document);
  return p;
}

std::vector<std::string> template_variables(const std::string &command_text) {
  std::vector<std::string> names;
  std::istringstream in(command_text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line.compare(first, 2, "##") == 0)
      continue;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '$' || (i > 0 && line[i - 1] == '\\'))
        continue;
      std::size_t j = i + 1;
      if (j < line.size() && line[j] == '{')
        ++j;
      std::string name;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        name.push_back(line[j++]);
      if (!name.empty())
        names.push_back(name);
    }
  }
  return names;
}

namespace {

std::vector<std::string> words(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

bool mentions(const CommandSegment &seg, const ClassifiedParameter &cp, const std::string &ref) {
  for (const auto &v : template_variables(seg.text))
    if (v == cp.galaxy_name || v == ref)
      return true;
  for (const auto &w : words(seg.text)) {
    if (std::find(cp.spec.flags.begin(), cp.spec.flags.end(), w) != cp.spec.flags.end())
      return true;
  }
  return false;
}

} // namespace

std::vector<std::string> wrapper_violations(const Pipeline &p, const GeneratorConfig &config) {
  std::vector<std::string> bad;

  xml::Node root;
  try {
    root = xml::parse(p.text);
  } catch (const xml::ParseError &e) {
    bad.push_back(std::string("not well-formed: ") + e.what());
    return bad;
  }
  if (xml::serialize(root) != p.text)
    bad.push_back("re-serialization differs from the rendered text");

  const std::string &cmd = p.document.command_text;
  int ifs = 0, ends = 0;
  {
    std::istringstream in(cmd);
    std::string line;
    while (std::getline(in, line)) {
      const auto t = line.substr(std::min(line.size(), line.find_first_not_of(" \t")));
      if (t.rfind("#if ", 0) == 0)
        ++ifs;
      else if (t.rfind("#end if", 0) == 0)
        ++ends;
    }
  }
  if (ifs != ends)
    bad.push_back(fmt::format("guard imbalance: {} #if vs {} #end if", ifs, ends));

  const auto plan = build_command_plan(p.interface, p.params, config.guard_style);
  std::set<std::string> known;
  for (const auto &cp : p.params)
    known.insert(cp.galaxy_name);
  for (const auto &l : plan.locals)
    known.insert(l.variable);
  for (const auto &v : template_variables(cmd))
    if (!known.count(v))
      bad.push_back(fmt::format("undeclared variable ${}", v));

  std::map<std::string, int> declared;
  for (const auto *section : {root.child("inputs"), root.child("outputs")}) {
    if (!section)
      continue;
    for (const auto *e : section->child_elements())
      if (const auto *n = e->attribute("name"))
        ++declared[*n];
  }
  for (const auto &cp : p.params) {
    if (declared[cp.galaxy_name] != 1)
      bad.push_back(fmt::format("'{}' declared {} times in inputs/outputs", cp.galaxy_name,
                                declared[cp.galaxy_name]));
    std::string ref;
    for (const auto &l : plan.locals)
      if (l.variable.rfind(cp.galaxy_name + "_path", 0) == 0)
        ref = l.variable;
    int hits = 0;
    for (const auto &seg : plan.segments)
      hits += mentions(seg, cp, ref) ? 1 : 0;
    if (hits != 1)
      bad.push_back(fmt::format("'{}' referenced by {} command segments", cp.galaxy_name, hits));
  }
  if (p.params.size() + 0 != declared.size())
    bad.push_back(fmt::format("{} params but {} declared names", p.params.size(), declared.size()));

  const auto again = serialize(render_wrapper(p.interface, p.params, DependencySet{}, config));
  if (again != p.text)
    bad.push_back("rendering is not deterministic");

  if (has_errors(lint(p.text)))
    bad.push_back("lint reports errors");
  return bad;
}

} // namespace wrapforge::testkit
