#pragma once

#include "lcert/geom/polytope.hpp"
#include "lcert/sysmodel/system.hpp"

#include <filesystem>
#include <random>

namespace lcert::testing {

using geom::Box;
using geom::HPolytope;
using geom::Matrix;
using geom::Vector;

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Box box2(double lo0, double lo1, double hi0, double hi1) { return Box(vec2(lo0, lo1), vec2(hi0, hi1)); }
inline HPolytope hbox2(double lo0, double lo1, double hi0, double hi1) {
  return box2(lo0, lo1, hi0, hi1).to_hpolytope();
}

inline Matrix example1_A1() { return mat2(0.3, -1.01, -0.5, -0.8); }
inline Matrix example1_A2() { return mat2(-0.4, 1.2, 0.9, -0.5); }

inline sysmodel::LinearSwitchedSystem example1_system() {
  return {{example1_A1(), example1_A2()}, box2(-6, -6, 6, 6), hbox2(-0.1, -0.1, 0.1, 0.1)};
}

inline sysmodel::LinearSwitchedSystem example2_system(int w_facets = 32) {
  return {{mat2(-0.3912, 0.9743, -1.0409, 0.1366), mat2(0.0609, 1.0481, -0.8837, 0.5669),
           mat2(0.9743, 0.3912, 0.1366, 1.0409), mat2(-1.0481, 0.0609, -0.5668, -0.8837)},
          box2(-3, -10, 4, 10),
          geom::regular_polygon(0.05, w_facets, true)};
}

inline HPolytope unit_ball(int facets = 32) { return geom::regular_polygon(1.0, facets); }

inline std::filesystem::path source_dir() { return LCERT_SOURCE_DIR; }
inline std::filesystem::path scenario(const char* name) { return source_dir() / "scenarios" / name; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lcert_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace lcert::testing
