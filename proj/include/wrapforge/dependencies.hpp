#pragma once

// Dependency manifests (conda environment files, pip requirements files)
// and their translation into <requirement> elements.

#include "wrapforge/diagnostics.hpp"
#include "wrapforge/xml.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wrapforge {

enum class ManifestFormat { requirements_txt, conda_env_yaml, none };

struct Dependency {
  std::string package;
  std::optional<std::string> version;
  std::optional<std::string> channel;

  bool operator==(const Dependency &) const = default;
};

struct DependencySet {
  std::vector<Dependency> entries;
  ManifestFormat source_format{ManifestFormat::none};
};

class ManifestError : public std::runtime_error {
public:
  enum class Kind { parse, duplicate, io };

  ManifestError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct ManifestLocation {
  std::filesystem::path path;
  ManifestFormat format{ManifestFormat::none};
};

/// Looks for environment.yml / environment.yaml, then requirements.txt.
std::optional<ManifestLocation> discover_manifest(const std::filesystem::path &project_root);

DependencySet parse_conda_env(std::string_view text, Diagnostics &diag);
DependencySet parse_requirements_txt(std::string_view text, Diagnostics &diag);

/// Reads and parses a discovered manifest.
DependencySet load_manifest(const ManifestLocation &where, Diagnostics &diag);

std::vector<xml::Node> emit_requirements(const DependencySet &deps);

} // namespace wrapforge
