#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "closedgeo/mesh/trimesh.hpp"

namespace closedgeo {

// Wavefront OBJ: `v x y z` and triangular `f a b c` records (with optional
// /vt/vn suffixes and negative indices). Other records are ignored.
TriMesh parse_obj(std::istream& in);
TriMesh load_mesh(const std::filesystem::path& path);

void write_obj(std::ostream& out, const TriMesh& mesh);
void save_mesh(const std::filesystem::path& path, const TriMesh& mesh);

// Polyline as `v` records followed by one `l` record; closed polylines
// repeat the first index at the end.
void write_polyline_obj(std::ostream& out,
                        const std::vector<Eigen::Vector3d>& points, bool closed);

}  // namespace closedgeo
