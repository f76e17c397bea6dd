#pragma once

#include <filesystem>
#include <string>

namespace testpaths {

inline std::filesystem::path data(const std::string& rel) {
  return std::filesystem::path(GEOASSESS_DATA_DIR) / rel;
}

}  // namespace testpaths
