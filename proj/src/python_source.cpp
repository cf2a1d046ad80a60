#include "wrapforge/python_source.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace wrapforge::py {

namespace {

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

void append_utf8(std::string &out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr std::array<std::string_view, 3> kThreeCharOps{"**=", "//=", "..."};
constexpr std::array<std::string_view, 22> kTwoCharOps{
    ">>", "<<", "==", "!=", "<=", ">=", "**", "//", "+=", "-=", "*=",
    "/=", "%=", "&=", "|=", "^=", "@=", "->", ":=", ">>", "<<", "<>"};
constexpr std::string_view kOneCharOps = "()[]{},:;.=+-*/%&|^~<>@";

constexpr std::array<std::string_view, 10> kBlockKeywords{
    "if", "elif", "else", "for", "while", "def", "class", "try", "with", "except"};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<LogicalLine> run() {
    // UTF-8 byte order mark
    if (src_.substr(0, 3) == "\xEF\xBB\xBF")
      pos_ = 3;

    while (pos_ < src_.size()) {
      if (at_line_start_ && depth_.empty()) {
        if (!read_indentation())
          continue;
      }
      const char c = src_[pos_];
      if (c == '\n' || c == '\r') {
        consume_newline();
        if (depth_.empty())
          finish_line();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\f') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r')
          ++pos_;
        continue;
      }
      if (c == '\\') {
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '\n' || src_[pos_] == '\r')) {
          consume_newline();
          continue;
        }
        throw SyntaxError(line_, "unexpected character after line continuation");
      }
      if (starts_string())
        read_string();
      else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && pos_ + 1 < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
        read_number();
      else if (is_ident_start(static_cast<unsigned char>(c)))
        read_name();
      else
        read_operator();
    }
    if (!depth_.empty())
      throw SyntaxError(depth_.back().second,
                        std::string("'") + depth_.back().first +
                            "' was never closed");
    finish_line();
    check_blocks();
    return std::move(lines_);
  }

private:
  // Returns false if the line was blank/comment-only and has been skipped.
  bool read_indentation() {
    int col = 0;
    std::size_t p = pos_;
    while (p < src_.size()) {
      if (src_[p] == ' ')
        ++col;
      else if (src_[p] == '\t')
        col = (col / 8 + 1) * 8;
      else if (src_[p] == '\f')
        col = 0;
      else
        break;
      ++p;
    }
    pos_ = p;
    if (p >= src_.size())
      return false;
    if (src_[p] == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r')
        ++pos_;
      return false;
    }
    if (src_[p] == '\n' || src_[p] == '\r') {
      consume_newline();
      return false;
    }
    at_line_start_ = false;
    current_.indent = col;
    current_.line = line_;
    return true;
  }

  void consume_newline() {
    if (src_[pos_] == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')
      ++pos_;
    ++pos_;
    ++line_;
  }

  void finish_line() {
    at_line_start_ = true;
    if (!current_.tokens.empty())
      lines_.push_back(std::move(current_));
    current_ = LogicalLine{};
  }

  void push(Token t) {
    t.line = t.line ? t.line : line_;
    current_.tokens.push_back(std::move(t));
  }

  bool starts_string() const {
    std::size_t p = pos_;
    std::size_t n = 0;
    while (p < src_.size() && n < 2 && std::string_view("rRbBuUfF").find(src_[p]) != std::string_view::npos) {
      ++p;
      ++n;
    }
    return p < src_.size() && (src_[p] == '\'' || src_[p] == '"');
  }

  void read_string() {
    Token tok;
    tok.kind = TokenKind::String;
    tok.line = line_;
    bool raw = false;
    const std::size_t start = pos_;
    while (src_[pos_] != '\'' && src_[pos_] != '"') {
      const char p = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
      raw |= p == 'r';
      tok.is_bytes |= p == 'b';
      tok.is_fstring |= p == 'f';
      ++pos_;
    }
    const char quote = src_[pos_];
    const bool triple = src_.substr(pos_, 3) == std::string(3, quote);
    pos_ += triple ? 3 : 1;
    std::string value;
    for (;;) {
      if (pos_ >= src_.size())
        throw SyntaxError(tok.line, "unterminated string literal");
      const char c = src_[pos_];
      if (c == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (src_.substr(pos_, 3) == std::string(3, quote)) {
          pos_ += 3;
          break;
        }
        value.push_back(c);
        ++pos_;
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (!triple)
          throw SyntaxError(tok.line, "unterminated string literal");
        consume_newline();
        value.push_back('\n');
        continue;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        if (raw) {
          value.push_back(c);
          value.push_back(src_[pos_ + 1]);
          if (src_[pos_ + 1] == '\n')
            ++line_;
          pos_ += 2;
          continue;
        }
        read_escape(value);
        continue;
      }
      value.push_back(c);
      ++pos_;
    }
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.value = std::move(value);
    push(std::move(tok));
  }

  void read_escape(std::string &out) {
    const char e = src_[pos_ + 1];
    pos_ += 2;
    auto hex = [&](int digits) {
      std::uint32_t cp = 0;
      for (int i = 0; i < digits; ++i) {
        if (pos_ >= src_.size() || !std::isxdigit(static_cast<unsigned char>(src_[pos_])))
          throw SyntaxError(line_, "truncated escape sequence");
        cp = cp * 16 + static_cast<std::uint32_t>(std::stoi(std::string(1, src_[pos_]), nullptr, 16));
        ++pos_;
      }
      append_utf8(out, cp);
    };
    switch (e) {
    case '\n':
      ++line_;
      break;
    case '\r':
      if (pos_ < src_.size() && src_[pos_] == '\n')
        ++pos_;
      ++line_;
      break;
    case 'n': out.push_back('\n'); break;
    case 't': out.push_back('\t'); break;
    case 'r': out.push_back('\r'); break;
    case '\\': out.push_back('\\'); break;
    case '\'': out.push_back('\''); break;
    case '"': out.push_back('"'); break;
    case 'a': out.push_back('\a'); break;
    case 'b': out.push_back('\b'); break;
    case 'f': out.push_back('\f'); break;
    case 'v': out.push_back('\v'); break;
    case '0': out.push_back('\0'); break;
    case 'x': hex(2); break;
    case 'u': hex(4); break;
    case 'U': hex(8); break;
    default:
      // unknown escapes are kept verbatim, as Python does
      out.push_back('\\');
      out.push_back(e);
      if (e == '\n')
        ++line_;
    }
  }

  void read_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > start &&
                 (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E') &&
                 !(src_.substr(start, 2) == "0x" || src_.substr(start, 2) == "0X")) {
        ++pos_;
      } else {
        break;
      }
    }
    Token tok;
    tok.kind = TokenKind::Number;
    tok.text = std::string(src_.substr(start, pos_ - start));
    push(std::move(tok));
  }

  void read_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    Token tok;
    tok.kind = TokenKind::Name;
    tok.text = std::string(src_.substr(start, pos_ - start));
    push(std::move(tok));
  }

  void read_operator() {
    auto emit = [&](std::string_view op) {
      Token tok;
      tok.kind = TokenKind::Op;
      tok.text = std::string(op);
      push(std::move(tok));
      pos_ += op.size();
    };
    const std::string_view rest = src_.substr(pos_);
    for (auto op : kThreeCharOps)
      if (rest.substr(0, 3) == op)
        return emit(op);
    for (auto op : {std::string_view(">>="), std::string_view("<<=")})
      if (rest.substr(0, 3) == op)
        return emit(op);
    for (auto op : kTwoCharOps)
      if (rest.substr(0, 2) == op)
        return emit(op);
    const char c = src_[pos_];
    if (kOneCharOps.find(c) == std::string_view::npos)
      throw SyntaxError(line_, std::string("invalid character '") + c + "'");
    if (c == '(' || c == '[' || c == '{') {
      depth_.emplace_back(c, line_);
    } else if (c == ')' || c == ']' || c == '}') {
      const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
      if (depth_.empty() || depth_.back().first != open)
        throw SyntaxError(line_, std::string("unmatched '") + c + "'");
      depth_.pop_back();
    }
    emit(std::string_view(&src_[pos_], 1));
  }

  static bool opens_block(const LogicalLine &l) {
    if (l.tokens.empty() || !l.tokens.back().is_op(":"))
      return false;
    const Token &first = l.tokens.front();
    if (first.kind != TokenKind::Name && !first.is_op("@"))
      return false;
    if (std::find(kBlockKeywords.begin(), kBlockKeywords.end(), first.text) != kBlockKeywords.end())
      return true;
    return first.text == "finally" || first.text == "async" || first.text == "match" ||
           first.text == "case";
  }

  void check_blocks() const {
    std::vector<int> stack{0};
    bool expect_indent = false;
    for (const auto &l : lines_) {
      if (expect_indent) {
        if (l.indent <= stack.back())
          throw SyntaxError(l.line, "expected an indented block");
        stack.push_back(l.indent);
      } else if (l.indent > stack.back()) {
        throw SyntaxError(l.line, "unexpected indent");
      } else {
        while (l.indent < stack.back())
          stack.pop_back();
        if (l.indent != stack.back())
          throw SyntaxError(l.line, "unindent does not match any outer indentation level");
      }
      expect_indent = opens_block(l);
    }
    if (expect_indent)
      throw SyntaxError(lines_.back().line, "expected an indented block at end of file");
  }

  std::string_view src_;
  std::size_t pos_{0};
  int line_{1};
  bool at_line_start_{true};
  std::vector<std::pair<char, int>> depth_;
  LogicalLine current_;
  std::vector<LogicalLine> lines_;
};

std::optional<Literal> parse_number(const std::string &spelling) {
  std::string s;
  for (char c : spelling)
    if (c != '_')
      s.push_back(c);
  if (s.empty())
    return std::nullopt;
  const char last = s.back();
  if (last == 'j' || last == 'J')
    return std::nullopt; // complex
  try {
    std::size_t used = 0;
    if (s.size() > 2 && s[0] == '0' && std::isalpha(static_cast<unsigned char>(s[1]))) {
      const int base = (s[1] == 'x' || s[1] == 'X') ? 16 : (s[1] == 'o' || s[1] == 'O') ? 8 : 2;
      const auto v = std::stoll(s.substr(2), &used, base);
      if (used != s.size() - 2)
        return std::nullopt;
      return Literal{static_cast<std::int64_t>(v), s};
    }
    if (s.find_first_of(".eE") == std::string::npos) {
      const auto v = std::stoll(s, &used, 10);
      if (used != s.size())
        return std::nullopt;
      return Literal{static_cast<std::int64_t>(v), s};
    }
    const double v = std::stod(s, &used);
    if (used != s.size())
      return std::nullopt;
    return Literal{v, s};
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

bool is_closer(const Token &t) {
  return t.is_op(")") || t.is_op("]") || t.is_op("}");
}

bool is_opener(const Token &t) {
  return t.is_op("(") || t.is_op("[") || t.is_op("{");
}

class ExprParser {
public:
  ExprParser(std::span<const Token> toks, std::size_t &pos) : toks_(toks), pos_(pos) {}

  Expr expression() {
    const std::size_t start = pos_;
    Expr e = postfix();
    // string concatenation with '+' is the only binary form kept
    while (e.kind == Expr::Kind::Constant && e.constant.is_string() && peek_op("+")) {
      const std::size_t save = pos_;
      ++pos_;
      Expr rhs = postfix();
      if (rhs.kind != Expr::Kind::Constant || !rhs.constant.is_string()) {
        pos_ = save;
        break;
      }
      e.constant.value = *e.constant.as_string() + *rhs.constant.as_string();
    }
    if (!at_delimiter()) {
      skip_to_delimiter();
      e = opaque(start);
    }
    e.source = spelling(start, pos_);
    if (e.line == 0 && start < toks_.size())
      e.line = toks_[start].line;
    return e;
  }

private:
  bool done() const { return pos_ >= toks_.size(); }
  bool peek_op(std::string_view op) const { return !done() && toks_[pos_].is_op(op); }

  bool at_delimiter() const {
    if (done())
      return true;
    const Token &t = toks_[pos_];
    return t.is_op(",") || is_closer(t) || t.is_op(":") || t.is_op("=") ||
           t.is_op(";") || t.is_name("for") || t.is_op("+=") || t.is_op("-=");
  }

  void skip_balanced() {
    int depth = 0;
    do {
      if (is_opener(toks_[pos_]))
        ++depth;
      else if (is_closer(toks_[pos_]))
        --depth;
      ++pos_;
    } while (!done() && depth > 0);
  }

  void skip_to_delimiter() {
    while (!done()) {
      const Token &t = toks_[pos_];
      if (is_opener(t)) {
        skip_balanced();
        continue;
      }
      if (t.is_op(",") || is_closer(t) || t.is_op(";") || t.is_op("="))
        return;
      ++pos_;
    }
  }

  std::string spelling(std::size_t from, std::size_t to) const {
    std::string out;
    for (std::size_t i = from; i < to && i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (!out.empty() && t.kind != TokenKind::Op && (out.back() != '(' && out.back() != '.'))
        out.push_back(' ');
      out += t.text;
    }
    return out;
  }

  Expr opaque(std::size_t start) const {
    Expr e;
    e.kind = Expr::Kind::Opaque;
    if (start < toks_.size())
      e.line = toks_[start].line;
    return e;
  }

  Expr postfix() {
    Expr e = atom();
    while (!done()) {
      if (peek_op(".") && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == TokenKind::Name) {
        Expr attr;
        attr.kind = Expr::Kind::Attribute;
        attr.identifier = toks_[pos_ + 1].text;
        attr.line = e.line;
        attr.children.push_back(std::move(e));
        pos_ += 2;
        e = std::move(attr);
      } else if (peek_op("(")) {
        e = call(std::move(e));
      } else if (peek_op("[")) {
        const std::size_t start = pos_;
        skip_balanced();
        e = opaque(start);
      } else {
        break;
      }
    }
    return e;
  }

  Expr call(Expr callee) {
    Expr c;
    c.kind = Expr::Kind::Call;
    c.line = callee.line;
    c.children.push_back(std::move(callee));
    const std::size_t open = pos_;
    ++pos_; // (
    while (!done() && !peek_op(")")) {
      if (peek_op("*") || peek_op("**")) {
        const bool kw = peek_op("**");
        ++pos_;
        Expr ignored = expression();
        (kw ? c.has_star_kwargs : c.has_star_args) = true;
      } else if (toks_[pos_].kind == TokenKind::Name && pos_ + 1 < toks_.size() &&
                 toks_[pos_ + 1].is_op("=")) {
        Keyword kw;
        kw.name = toks_[pos_].text;
        pos_ += 2;
        kw.value.push_back(expression());
        c.keywords.push_back(std::move(kw));
      } else {
        c.children.push_back(expression());
        if (!done() && toks_[pos_].is_name("for")) {
          // generator expression argument
          pos_ = open;
          skip_balanced();
          return opaque(open);
        }
      }
      if (peek_op(","))
        ++pos_;
      else if (!peek_op(")")) {
        // something we cannot read, e.g. a walrus or a conditional
        pos_ = open;
        skip_balanced();
        return opaque(open);
      }
    }
    if (done())
      return opaque(open);
    ++pos_; // )
    return c;
  }

  Expr sequence(Expr::Kind kind, std::string_view close, std::size_t open) {
    Expr e;
    e.kind = kind;
    e.line = toks_[open].line;
    bool saw_comma = false;
    while (!done() && !peek_op(close)) {
      e.children.push_back(expression());
      if (peek_op(",")) {
        saw_comma = true;
        ++pos_;
      } else if (!peek_op(close)) {
        pos_ = open;
        skip_balanced();
        return opaque(open);
      }
    }
    if (done())
      return opaque(open);
    ++pos_;
    if (kind == Expr::Kind::Tuple && !saw_comma && e.children.size() == 1)
      return std::move(e.children.front()); // parenthesized expression
    return e;
  }

  Expr atom() {
    if (done())
      return opaque(pos_);
    const Token &t = toks_[pos_];
    Expr e;
    e.line = t.line;
    switch (t.kind) {
    case TokenKind::String: {
      std::string value;
      bool dynamic = false;
      while (!done() && toks_[pos_].kind == TokenKind::String) {
        const Token &s = toks_[pos_];
        dynamic |= s.is_bytes ||
                   (s.is_fstring && s.value.find('{') != std::string::npos);
        value += s.value;
        ++pos_;
      }
      if (dynamic) {
        e.kind = Expr::Kind::Opaque;
        return e;
      }
      e.kind = Expr::Kind::Constant;
      e.constant = Literal{value, {}};
      return e;
    }
    case TokenKind::Number: {
      ++pos_;
      if (auto lit = parse_number(t.text)) {
        e.kind = Expr::Kind::Constant;
        e.constant = *lit;
      }
      return e;
    }
    case TokenKind::Name:
      ++pos_;
      if (t.text == "True" || t.text == "False") {
        e.kind = Expr::Kind::Constant;
        e.constant = Literal{t.text == "True", t.text};
      } else if (t.text == "None") {
        e.kind = Expr::Kind::Constant;
        e.constant = Literal{NoneMarker{}, "None"};
      } else if (t.text == "lambda" || t.text == "not" || t.text == "await" ||
                 t.text == "yield") {
        skip_to_delimiter();
        e.kind = Expr::Kind::Opaque;
      } else {
        e.kind = Expr::Kind::Name;
        e.identifier = t.text;
      }
      return e;
    case TokenKind::Op:
      if (t.is_op("-") || t.is_op("+")) {
        ++pos_;
        Expr operand = atom();
        if (operand.kind == Expr::Kind::Constant) {
          if (auto *i = std::get_if<std::int64_t>(&operand.constant.value)) {
            if (t.is_op("-"))
              *i = -*i;
            operand.constant.spelling = t.text + operand.constant.spelling;
            return operand;
          }
          if (auto *d = std::get_if<double>(&operand.constant.value)) {
            if (t.is_op("-"))
              *d = -*d;
            operand.constant.spelling = t.text + operand.constant.spelling;
            return operand;
          }
        }
        return opaque(pos_);
      }
      if (t.is_op("(")) {
        const std::size_t open = pos_++;
        return sequence(Expr::Kind::Tuple, ")", open);
      }
      if (t.is_op("[")) {
        const std::size_t open = pos_++;
        return sequence(Expr::Kind::List, "]", open);
      }
      if (t.is_op("{")) {
        const std::size_t open = pos_;
        skip_balanced();
        return opaque(open);
      }
      return opaque(pos_);
    }
    return e;
  }

  std::span<const Token> toks_;
  std::size_t &pos_;
};

} // namespace

std::vector<LogicalLine> tokenize(std::string_view source) {
  return Lexer(source).run();
}

std::string Literal::display() const {
  return std::visit(
      [this](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoneMarker>)
          return "None";
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "True" : "False";
        else if constexpr (std::is_same_v<T, std::string>)
          return v;
        else
          return spelling.empty() ? std::to_string(v) : spelling;
      },
      value);
}

std::string Expr::dotted_name() const {
  if (kind == Kind::Name)
    return identifier;
  if (kind == Kind::Attribute && !children.empty()) {
    auto base = children.front().dotted_name();
    return base.empty() ? std::string{} : base + "." + identifier;
  }
  return {};
}

const Expr *Expr::keyword(std::string_view name) const {
  for (const auto &kw : keywords)
    if (kw.name == name && !kw.value.empty())
      return &kw.value.front();
  return nullptr;
}

Expr parse_expression(std::span<const Token> tokens, std::size_t &pos) {
  return ExprParser(tokens, pos).expression();
}

Expr parse_expression(std::string_view source) {
  auto lines = tokenize(source);
  if (lines.size() != 1)
    throw SyntaxError(lines.empty() ? 1 : lines[1].line, "expected a single expression");
  std::size_t pos = 0;
  Expr e = parse_expression(lines.front().tokens, pos);
  if (pos != lines.front().tokens.size())
    throw SyntaxError(lines.front().line, "trailing tokens after expression");
  return e;
}

} // namespace wrapforge::py
