#include "wrapforge/linter.hpp"

#include "random_interface.hpp"

#include <gtest/gtest.h>

using namespace wrapforge;

namespace {

std::string tool(const std::string &body, const std::string &command = "run") {
  return "<tool id=\"t\" name=\"t\" version=\"1\">\n  <command><![CDATA[\n" + command +
         "\n]]></command>\n" + body + "  <tests />\n  <help>Help.</help>\n</tool>\n";
}

bool has(const std::vector<Finding> &f, const std::string &code) {
  for (const auto &x : f)
    if (x.code == code)
      return true;
  return false;
}

} // namespace

TEST(Lint, CleanDocumentHasNoFindings) {
  EXPECT_TRUE(lint(tool("  <inputs><param name=\"x\" type=\"text\" /></inputs>\n", "run '$x'")).empty());
}

TEST(Lint, GeneratedSummarizeWrapperOnlyLacksTests) {
  const auto p = wrapforge::testkit::run_pipeline(
      "import argparse\nparser = argparse.ArgumentParser(description='Summarize.')\n"
      "parser.add_argument('-p', '--profile-db', metavar='PROFILE_DB', required=True)\n"
      "parser.add_argument('--init-gene-coverages', action='store_true')\n"
      "parser.add_argument('--output-dir', metavar='DIR_PATH_OUT')\n",
      "anvi-summarize");
  EXPECT_EQ(codes_of(lint(p.text)), (std::vector<std::string>{"W1"}));
}

TEST(Lint, E1IsExclusive) {
  const auto f = lint("<tool id='x'><inputs></tool>");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].code, "E1");
  EXPECT_EQ(f[0].severity, Severity::error);
  EXPECT_EQ(codes_of(lint("not xml at all")), (std::vector<std::string>{"E1"}));
}

TEST(Lint, E2RootAndAttributes) {
  EXPECT_TRUE(has(lint("<macros />"), "E2"));
  EXPECT_TRUE(has(lint("<tool id=\"x\" name=\"y\"><help>h</help><tests /></tool>"), "E2"));
  EXPECT_TRUE(has(lint("<tool id=\"\" name=\"y\" version=\"1\" />"), "E2"));
}

TEST(Lint, E3DuplicateNames) {
  EXPECT_TRUE(has(lint(tool("  <inputs><param name=\"x\" /><param name=\"x\" /></inputs>\n")), "E3"));
  EXPECT_TRUE(has(lint(tool("  <inputs><param name=\"x\" /></inputs>\n"
                            "  <outputs><data name=\"x\" /></outputs>\n")),
                  "E3"));
}

TEST(Lint, E4UndeclaredVariables) {
  EXPECT_TRUE(has(lint(tool("", "run '$ghost'")), "E4"));
  EXPECT_FALSE(has(lint(tool("", "#set $p = \"a\"\nrun '${p}' \\$HOME $__tool_directory__")), "E4"));
  EXPECT_FALSE(has(lint(tool("", "## mentions $nothing\nrun")), "E4"));
  EXPECT_FALSE(has(lint(tool("", "#for $f in $files:\n$f\n#end for")), "E5"));
}

TEST(Lint, E5Balance) {
  EXPECT_TRUE(has(lint(tool("  <inputs><param name=\"x\" /></inputs>\n", "#if $x:\nrun")), "E5"));
  EXPECT_TRUE(has(lint(tool("", "run\n#end if")), "E5"));
  EXPECT_FALSE(has(lint(tool("  <inputs><param name=\"x\" /></inputs>\n",
                             "#if $x:\na\n#else if $x == 1:\nb\n#else\nc\n#end if")),
                   "E5"));
}

TEST(Lint, Warnings) {
  const std::string no_tests = "<tool id=\"t\" name=\"t\" version=\"1\"><help>x</help></tool>";
  EXPECT_EQ(codes_of(lint(no_tests)), (std::vector<std::string>{"W1"}));
  EXPECT_TRUE(has(lint("<tool id=\"t\" name=\"t\" version=\"1\"><tests /></tool>"), "W2"));
  EXPECT_TRUE(has(lint("<tool id=\"t\" name=\"t\" version=\"1\"><tests /><help>  </help></tool>"), "W2"));
  EXPECT_TRUE(has(lint("<tool id=\"t\" name=\"t\" version=\"1\"><tests /><help>h</help>"
                       "<citations><citation type=\"doi\"></citation></citations></tool>"),
                  "W3"));
  EXPECT_FALSE(has(lint("<tool id=\"t\" name=\"t\" version=\"1\"><tests /><help>h</help>"
                        "<citations /></tool>"),
                   "W3"));
}

TEST(Lint, OrderedByLine) {
  const auto f = lint("<tool id=\"t\" name=\"t\" version=\"1\">\n"
                      "  <command><![CDATA[\n#if $a:\nrun '$b'\n]]></command>\n"
                      "  <inputs>\n    <param name=\"a\" />\n    <param name=\"a\" />\n  </inputs>\n"
                      "</tool>");
  ASSERT_GE(f.size(), 3u);
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].line && f[i - 1].line)
      EXPECT_LE(*f[i - 1].line, *f[i].line);
  EXPECT_TRUE(has(f, "E3"));
  EXPECT_TRUE(has(f, "E4"));
  EXPECT_TRUE(has(f, "E5"));
  EXPECT_EQ(f.back().code, "W2");
}
