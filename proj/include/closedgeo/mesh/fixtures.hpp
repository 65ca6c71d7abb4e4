#pragma once

#include "closedgeo/mesh/trimesh.hpp"

namespace closedgeo::fixtures {

// Unit cube [0,1]^3, each face split into two triangles (12 faces).
TriMesh cube();

// Icosahedron with vertices on the unit sphere, subdivided `level` times
// (each triangle into four, midpoints pushed to the sphere).
// Vertex count is 10 * 4^level + 2.
TriMesh icosphere(int level);

// Flat nx-by-ny grid of squares of size `cell` in the z = 0 plane, each
// square split along its (0,0)-(1,1) diagonal.
TriMesh flat_patch(int nx, int ny, double cell);

}  // namespace closedgeo::fixtures
