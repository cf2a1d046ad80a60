#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wrapforge {

/// Collects non-fatal warnings produced while processing one script.
class Diagnostics {
public:
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  const std::vector<std::string> &warnings() const { return warnings_; }
  std::size_t count() const { return warnings_.size(); }
  bool empty() const { return warnings_.empty(); }

  void append(const Diagnostics &other) {
    warnings_.insert(warnings_.end(), other.warnings_.begin(),
                     other.warnings_.end());
  }

private:
  std::vector<std::string> warnings_;
};

} // namespace wrapforge
