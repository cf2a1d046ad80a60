#pragma once

// Tokenizer and expression reader for the subset of Python source needed to
// recover argparse declarations statically. Nothing here evaluates code.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wrapforge::py {

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(int line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

enum class TokenKind { Name, Number, String, Op };

struct Token {
  TokenKind kind{TokenKind::Op};
  std::string text;  // raw spelling (numbers, names, operators)
  std::string value; // decoded contents for strings
  bool is_fstring{false};
  bool is_bytes{false};
  int line{0};

  bool is_op(std::string_view op) const {
    return kind == TokenKind::Op && text == op;
  }
  bool is_name(std::string_view name) const {
    return kind == TokenKind::Name && text == name;
  }
};

/// One logical line: a statement with bracket continuations and
/// backslash joins already folded in.
struct LogicalLine {
  int indent{0};
  int line{0};
  std::vector<Token> tokens;
};

/// Splits source into logical lines and checks the block structure
/// (brackets, string termination, indentation). Throws SyntaxError.
std::vector<LogicalLine> tokenize(std::string_view source);

struct NoneMarker {
  bool operator==(const NoneMarker &) const = default;
};

/// A Python literal as it appears in source.
struct Literal {
  std::variant<NoneMarker, bool, std::int64_t, double, std::string> value;
  std::string spelling; // source spelling for numbers, normalized

  bool is_none() const { return std::holds_alternative<NoneMarker>(value); }
  bool is_string() const { return std::holds_alternative<std::string>(value); }
  const std::string *as_string() const {
    return std::get_if<std::string>(&value);
  }
  /// Text as Python's str() would render it.
  std::string display() const;

  bool operator==(const Literal &other) const { return value == other.value; }
};

struct Expr;

struct Keyword {
  std::string name;
  std::vector<Expr> value; // exactly one element
};

struct Expr {
  enum class Kind { Constant, Name, Attribute, Call, List, Tuple, Opaque };

  Kind kind{Kind::Opaque};
  Literal constant;            // Constant
  std::string identifier;      // Name id or Attribute member
  std::vector<Expr> children;  // Attribute: [object]; Call: [callee, args...]; List/Tuple: items
  std::vector<Keyword> keywords; // Call keyword arguments
  bool has_star_args{false};
  bool has_star_kwargs{false};
  std::string source;          // raw token text, for warnings
  int line{0};

  /// "a.b.c" for Name/Attribute chains made only of names, else empty.
  std::string dotted_name() const;
  const Expr *keyword(std::string_view name) const;
};

/// Reads one expression from `tokens` starting at `pos`; on return `pos`
/// is the first token not consumed. Unsupported constructs become Opaque
/// nodes spanning the balanced tokens up to the next delimiter.
Expr parse_expression(std::span<const Token> tokens, std::size_t &pos);

/// Parses a complete expression from source text (a single statement).
Expr parse_expression(std::string_view source);

} // namespace wrapforge::py
