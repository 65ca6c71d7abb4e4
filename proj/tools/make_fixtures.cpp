// Writes the mesh fixtures used by tests and shipped configs.
//   make_fixtures OUTPUT_DIR
#include <filesystem>
#include <iostream>
#include <string>

#include "closedgeo/mesh/fixtures.hpp"
#include "closedgeo/mesh/obj_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUTPUT_DIR\n";
    return 1;
  }
  namespace fx = closedgeo::fixtures;
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  closedgeo::save_mesh(dir / "cube.obj", fx::cube());
  for (int level = 1; level <= 4; ++level) {
    closedgeo::save_mesh(dir / ("icosphere" + std::to_string(level) + ".obj"),
                         fx::icosphere(level));
  }
  closedgeo::save_mesh(dir / "flat_patch.obj", fx::flat_patch(10, 10, 0.1));
  return 0;
}
