#include "wrapforge/python_source.hpp"

#include <gtest/gtest.h>

using namespace wrapforge::py;

TEST(Tokenize, FoldsBracketAndBackslashContinuations) {
  const auto lines = tokenize("x = f(1,\n      2)\ny = 1 + \\\n    2\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].line, 1);
  EXPECT_EQ(lines[1].line, 3);
  EXPECT_EQ(lines[1].tokens.size(), 5u);
}

TEST(Tokenize, DecodesStringForms) {
  const auto lines = tokenize("a = 'it\\'s'\nb = \"\"\"multi\nline\"\"\"\nc = r'\\d+'\n");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].tokens[2].value, "it's");
  EXPECT_EQ(lines[1].tokens[2].value, "multi\nline");
  EXPECT_EQ(lines[2].tokens[2].value, "\\d+");
}

TEST(Tokenize, CommentsAndBlankLinesVanish) {
  const auto lines = tokenize("# header\n\nx = 1  # trailing\n   \n");
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].tokens.size(), 3u);
}

TEST(Tokenize, RejectsBrokenSource) {
  EXPECT_THROW(tokenize("x = 'open\n"), SyntaxError);
  EXPECT_THROW(tokenize("x = (1, 2\n"), SyntaxError);
  EXPECT_THROW(tokenize("x = 1)\n"), SyntaxError);
  EXPECT_THROW(tokenize("x = 1\n    y = 2\n"), SyntaxError);
  EXPECT_THROW(tokenize("if x:\ny = 2\n"), SyntaxError);
  EXPECT_THROW(tokenize("def f():\n        a = 1\n    b = 2\n"), SyntaxError);
  EXPECT_THROW(tokenize("x = \"\"\"never closed\n"), SyntaxError);
}

TEST(Tokenize, ReportsLineOfFailure) {
  try {
    tokenize("a = 1\nb = 2\nc = (\n");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Expression, ReadsLiterals) {
  EXPECT_EQ(parse_expression("42").constant.display(), "42");
  EXPECT_EQ(parse_expression("-3").constant.display(), "-3");
  EXPECT_EQ(parse_expression("0.50").constant.display(), "0.50");
  EXPECT_EQ(parse_expression("True").constant.display(), "True");
  EXPECT_TRUE(parse_expression("None").constant.is_none());
  EXPECT_EQ(*parse_expression("'a' 'b'").constant.as_string(), "ab");
  EXPECT_EQ(*parse_expression("'a' + \"b\"").constant.as_string(), "ab");
}

TEST(Expression, BuildsCallChains) {
  const auto e = parse_expression("argparse.ArgumentParser(description='d', epilog=X)");
  ASSERT_EQ(e.kind, Expr::Kind::Call);
  EXPECT_EQ(e.children.front().dotted_name(), "argparse.ArgumentParser");
  ASSERT_NE(e.keyword("description"), nullptr);
  EXPECT_EQ(*e.keyword("description")->constant.as_string(), "d");
  EXPECT_EQ(e.keyword("epilog")->kind, Expr::Kind::Name);
}

TEST(Expression, ListsAndTuples) {
  const auto l = parse_expression("['a', 'b', 3]");
  ASSERT_EQ(l.kind, Expr::Kind::List);
  EXPECT_EQ(l.children.size(), 3u);
  const auto t = parse_expression("('x',)");
  ASSERT_EQ(t.kind, Expr::Kind::Tuple);
  EXPECT_EQ(t.children.size(), 1u);
}

TEST(Expression, UnsupportedFormsBecomeOpaque) {
  EXPECT_EQ(parse_expression("f'{x}'").kind, Expr::Kind::Opaque);
  EXPECT_EQ(parse_expression("a if b else c").kind, Expr::Kind::Opaque);
  EXPECT_EQ(parse_expression("[x for x in y]").kind, Expr::Kind::Opaque);
  const auto call = parse_expression("f(*args, **kw)");
  EXPECT_TRUE(call.has_star_args);
  EXPECT_TRUE(call.has_star_kwargs);
}
