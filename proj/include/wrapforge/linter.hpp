#pragma once

// Structural checks over wrapper XML.
//
//   E1 not well-formed XML          W1 no <tests> section
//   E2 bad root or missing id/name/version
//   E3 duplicate param/data names   W2 missing or empty help
//   E4 undeclared command variable  W3 empty citation
//   E5 unbalanced #if / #end if

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wrapforge {

enum class Severity { error, warning };

struct Finding {
  Severity severity{Severity::warning};
  std::string code;
  std::string message;
  std::optional<std::string> location;
  std::optional<int> line;

  bool operator==(const Finding &) const = default;
};

/// Never throws. Findings are ordered by line; document-level findings last.
std::vector<Finding> lint(std::string_view document_text);

bool has_errors(const std::vector<Finding> &findings);
std::string format_finding(const Finding &f);
std::vector<std::string> codes_of(const std::vector<Finding> &findings);

} // namespace wrapforge
