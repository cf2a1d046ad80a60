#include "wrapforge/xml.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace wrapforge::xml {

Node Node::element(std::string name) {
  Node n;
  n.kind = Kind::element;
  n.name = std::move(name);
  return n;
}

Node Node::text_node(std::string text) {
  Node n;
  n.kind = Kind::text;
  n.text = std::move(text);
  return n;
}

Node Node::cdata(std::string text) {
  Node n;
  n.kind = Kind::cdata;
  n.text = std::move(text);
  return n;
}

Node Node::comment(std::string text) {
  Node n;
  n.kind = Kind::comment;
  n.text = std::move(text);
  return n;
}

Node &Node::attr(std::string key, std::string value) {
  attributes.emplace_back(std::move(key), std::move(value));
  return *this;
}

Node &Node::add(Node child) {
  children.push_back(std::move(child));
  return *this;
}

const std::string *Node::attribute(std::string_view key) const {
  for (const auto &[k, v] : attributes)
    if (k == key)
      return &v;
  return nullptr;
}

const Node *Node::child(std::string_view child_name) const {
  for (const auto &c : children)
    if (c.kind == Kind::element && c.name == child_name)
      return &c;
  return nullptr;
}

std::vector<const Node *> Node::child_elements(std::string_view child_name) const {
  std::vector<const Node *> out;
  for (const auto &c : children)
    if (c.kind == Kind::element && (child_name.empty() || c.name == child_name))
      out.push_back(&c);
  return out;
}

std::string Node::inner_text() const {
  std::string out;
  for (const auto &c : children)
    if (c.kind == Kind::text || c.kind == Kind::cdata)
      out += c.text;
  return out;
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\n': out += "&#10;"; break;
    case '\r': out += "&#13;"; break;
    case '\t': out += "&#9;"; break;
    default: out.push_back(c);
    }
  }
  return out;
}

namespace {

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
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

class Parser {
public:
  explicit Parser(std::string_view doc) : s_(doc) {}

  Node document() {
    if (s_.substr(0, 3) == "\xEF\xBB\xBF")
      pos_ = 3;
    misc();
    if (done() || peek() != '<')
      fail("document has no root element");
    Node root = element();
    misc();
    if (!done())
      fail("content after the root element");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string &what) const { throw ParseError(line_, what); }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  bool starts(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i)
      if (s_[pos_++] == '\n')
        ++line_;
  }

  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
      advance();
  }

  // Prolog/epilog: whitespace, comments, processing instructions, doctype.
  void misc() {
    for (;;) {
      skip_space();
      if (starts("<?")) {
        skip_until("?>");
      } else if (starts("<!--")) {
        comment();
      } else if (starts("<!DOCTYPE")) {
        skip_until(">");
      } else {
        return;
      }
    }
  }

  void skip_until(std::string_view end) {
    const auto found = s_.find(end, pos_);
    if (found == std::string_view::npos)
      fail("unterminated markup");
    advance(found + end.size() - pos_);
  }

  std::string name() {
    if (done() || !is_name_start(static_cast<unsigned char>(peek())))
      fail("expected a name");
    const std::size_t start = pos_;
    while (!done() && is_name_char(static_cast<unsigned char>(peek())))
      advance();
    return std::string(s_.substr(start, pos_ - start));
  }

  void reference(std::string &out) {
    const auto end = s_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12)
      fail("unterminated entity reference");
    const std::string_view ref = s_.substr(pos_ + 1, end - pos_ - 1);
    if (ref == "lt")
      out.push_back('<');
    else if (ref == "gt")
      out.push_back('>');
    else if (ref == "amp")
      out.push_back('&');
    else if (ref == "quot")
      out.push_back('"');
    else if (ref == "apos")
      out.push_back('\'');
    else if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ref[1] == 'x';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty())
        fail("empty character reference");
      for (char c : digits) {
        if (hex ? !std::isxdigit(static_cast<unsigned char>(c))
                : !std::isdigit(static_cast<unsigned char>(c)))
          fail("malformed character reference");
        cp = cp * (hex ? 16 : 10) +
             static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c))
                                            ? c - '0'
                                            : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
        if (cp > 0x10FFFF)
          fail("character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity '&" + std::string(ref) + ";'");
    }
    advance(end + 1 - pos_);
  }

  std::string attribute_value() {
    if (done() || (peek() != '"' && peek() != '\''))
      fail("attribute value must be quoted");
    const char quote = peek();
    advance();
    std::string out;
    while (!done() && peek() != quote) {
      const char c = peek();
      if (c == '<')
        fail("'<' in attribute value");
      if (c == '&') {
        reference(out);
        continue;
      }
      out.push_back(c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
      advance();
    }
    if (done())
      fail("unterminated attribute value");
    advance();
    return out;
  }

  void comment() {
    const int at = line_;
    advance(4);
    const auto end = s_.find("-->", pos_);
    if (end == std::string_view::npos)
      throw ParseError(at, "unterminated comment");
    Node c = Node::comment(std::string(s_.substr(pos_, end - pos_)));
    c.line = at;
    advance(end + 3 - pos_);
    pending_comment_ = std::move(c);
    has_pending_comment_ = true;
  }

  Node element() {
    const int at = line_;
    advance(); // <
    Node node = Node::element(name());
    node.line = at;
    for (;;) {
      const bool had_space = !done() && std::isspace(static_cast<unsigned char>(peek()));
      skip_space();
      if (done())
        fail("unterminated start tag <" + node.name + ">");
      if (starts("/>")) {
        advance(2);
        return node;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!had_space)
        fail("expected whitespace between attributes");
      std::string key = name();
      skip_space();
      if (done() || peek() != '=')
        fail("expected '=' after attribute " + key);
      advance();
      skip_space();
      if (node.attribute(key))
        fail("duplicate attribute " + key);
      node.attr(key, attribute_value());
    }
    content(node);
    return node;
  }

  void add_text(Node &parent, std::string text, Node::Kind kind, int at) {
    if (!parent.children.empty() && parent.children.back().kind == kind &&
        kind != Node::Kind::comment) {
      parent.children.back().text += text;
      return;
    }
    Node n = kind == Node::Kind::text ? Node::text_node(std::move(text)) : Node::cdata(std::move(text));
    n.line = at;
    parent.children.push_back(std::move(n));
  }

  void content(Node &node) {
    std::string text;
    int text_line = line_;
    auto flush = [&] {
      if (!text.empty())
        add_text(node, std::move(text), Node::Kind::text, text_line);
      text.clear();
    };
    for (;;) {
      if (done())
        fail("element <" + node.name + "> is never closed");
      if (starts("</")) {
        flush();
        advance(2);
        const std::string closing = name();
        if (closing != node.name)
          fail("mismatched closing tag </" + closing + "> for <" + node.name + ">");
        skip_space();
        if (done() || peek() != '>')
          fail("malformed closing tag");
        advance();
        // whitespace-only text between elements is layout, not content
        if (node.children.size() > 1 || (node.children.size() == 1 && node.children[0].kind != Node::Kind::text))
          std::erase_if(node.children, [](const Node &c) {
            return c.kind == Node::Kind::text && is_blank(c.text);
          });
        return;
      }
      if (starts("<![CDATA[")) {
        flush();
        const int at = line_;
        advance(9);
        const auto end = s_.find("]]>", pos_);
        if (end == std::string_view::npos)
          fail("unterminated CDATA section");
        std::string body(s_.substr(pos_, end - pos_));
        advance(end + 3 - pos_);
        add_text(node, std::move(body), Node::Kind::cdata, at);
        text_line = line_;
        continue;
      }
      if (starts("<!--")) {
        flush();
        comment();
        node.children.push_back(std::move(pending_comment_));
        has_pending_comment_ = false;
        text_line = line_;
        continue;
      }
      if (starts("<?")) {
        flush();
        skip_until("?>");
        continue;
      }
      if (peek() == '<') {
        flush();
        node.children.push_back(element());
        text_line = line_;
        continue;
      }
      if (peek() == '&') {
        reference(text);
        continue;
      }
      if (starts("]]>"))
        fail("']]>' in text content");
      if (text.empty())
        text_line = line_;
      text.push_back(peek());
      advance();
    }
  }

  std::string_view s_;
  std::size_t pos_{0};
  int line_{1};
  Node pending_comment_;
  bool has_pending_comment_{false};
};

void write(std::string &out, const Node &node, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (node.kind) {
  case Node::Kind::text:
    out += pad + escape_text(node.text);
    return;
  case Node::Kind::cdata: {
    std::string body = node.text;
    std::size_t at = 0;
    while ((at = body.find("]]>", at)) != std::string::npos) {
      body.replace(at, 3, "]]]]><![CDATA[>");
      at += 15;
    }
    out += pad + "<![CDATA[" + body + "]]>";
    return;
  }
  case Node::Kind::comment:
    out += pad + "<!--" + node.text + "-->";
    return;
  case Node::Kind::element:
    break;
  }
  out += pad + "<" + node.name;
  for (const auto &[k, v] : node.attributes)
    out += " " + k + "=\"" + escape_attribute(v) + "\"";
  if (node.children.empty()) {
    out += " />";
    return;
  }
  out += ">";
  const bool inline_content = node.children.size() == 1 &&
                              (node.children[0].kind == Node::Kind::text ||
                               node.children[0].kind == Node::Kind::cdata);
  if (inline_content) {
    write(out, node.children[0], 0);
  } else {
    for (const auto &c : node.children) {
      if (c.kind == Node::Kind::text && is_blank(c.text))
        continue;
      out += "\n";
      write(out, c, indent + 2);
    }
    out += "\n" + pad;
  }
  out += "</" + node.name + ">";
}

} // namespace

Node parse(std::string_view document) { return Parser(document).document(); }

std::string serialize(const Node &root) {
  std::string out;
  write(out, root, 0);
  out += "\n";
  return out;
}

std::string serialize_fragment(const Node &node, int indent) {
  std::string out;
  write(out, node, indent);
  return out;
}

} // namespace wrapforge::xml
