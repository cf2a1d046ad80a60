#pragma once

// Minimal XML document model with a strict parser and a canonical
// serializer. Serializing a parsed canonical document reproduces it
// byte for byte.

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wrapforge::xml {

struct Node {
  enum class Kind { element, text, cdata, comment };

  Kind kind{Kind::element};
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;
  int line{0};

  static Node element(std::string name);
  static Node text_node(std::string text);
  static Node cdata(std::string text);
  static Node comment(std::string text);

  Node &attr(std::string key, std::string value);
  Node &add(Node child);

  const std::string *attribute(std::string_view key) const;
  const Node *child(std::string_view name) const;
  std::vector<const Node *> child_elements(std::string_view name = {}) const;
  /// Concatenated text and CDATA content of direct children.
  std::string inner_text() const;

  bool operator==(const Node &) const = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Parses a document and returns its root element.
Node parse(std::string_view document);

/// Canonical form of a whole document: two-space indentation, attributes in
/// stored order, trailing newline.
std::string serialize(const Node &root);

/// Canonical form of one node at the given indentation, no trailing newline.
std::string serialize_fragment(const Node &node, int indent = 0);

std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

} // namespace wrapforge::xml
