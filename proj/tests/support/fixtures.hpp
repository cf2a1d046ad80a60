#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace wrapforge::testkit {

inline std::filesystem::path fixture_path(const std::string &relative) {
  return std::filesystem::path(WRAPFORGE_FIXTURES) / relative;
}

inline std::string read_fixture(const std::string &relative) {
  std::ifstream in(fixture_path(relative), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("wrapforge_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace wrapforge::testkit
