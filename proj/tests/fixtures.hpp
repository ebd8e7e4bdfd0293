#pragma once
// Loads the in-repo fixture files.

#include <string>

#include "critspec/io/formats.hpp"

namespace testing_fixtures {

inline std::string path(const std::string& name) { return std::string(CRITSPEC_FIXTURE_DIR) + "/" + name + ".json"; }

inline critspec::Instance load(const std::string& name) { return critspec::load_instance(path(name)); }

inline critspec::LeveledComplex instance(const std::string& name) { return load(name).lc; }

// Every instance fixture, smallest first.
inline const std::vector<std::string>& all() {
  static const std::vector<std::string> names{
      "point",  "edge",       "two_edges",  "circle_two_arcs", "triangle",   "sphere",     "theta",
      "upright_torus", "csaszar_torus", "hawaiian_1", "hawaiian_2", "hawaiian_3", "hawaiian_4", "hawaiian_5",
      "hawaiian_6", "hawaiian_7", "hawaiian_8"};
  return names;
}

}  // namespace testing_fixtures
