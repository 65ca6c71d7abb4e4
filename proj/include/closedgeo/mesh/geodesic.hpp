#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "closedgeo/mesh/steiner.hpp"
#include "closedgeo/mesh/trimesh.hpp"
#include "closedgeo/point.hpp"

namespace closedgeo {

// Sequence of edge-adjacent faces. crossings[i] is the half-edge of the i-th
// face through which the strip leaves it.
struct FaceStrip {
  int first_face = -1;
  std::vector<int> crossings;

  std::vector<int> faces(const TriMesh& mesh) const;
};

using Triangle2 = std::array<Eigen::Vector2d, 3>;

// Lays the strip out in the plane face by face. Entry i holds the planar
// corners (in face corner order) of the i-th strip face.
std::vector<Triangle2> unfold_strip(const TriMesh& mesh, const FaceStrip& strip);

// Removes immediate back-and-forth crossings of the same edge.
void remove_backtracks(const TriMesh& mesh, FaceStrip& strip);

// Converts a Steiner route into a face strip containing it.
FaceStrip strip_from_route(const TriMesh& mesh, const SteinerRoute& route);

struct StraightenOptions {
  double angle_tol = 1e-7;
  int max_iterations = 200;
};

// A locally shortest path inside a face strip.
struct MeshGeodesic {
  std::vector<int> faces;
  // Segment i lies in faces[i]; endpoints given as barycentrics of that face.
  std::vector<std::array<Eigen::Vector3d, 2>> segments;
  std::vector<double> cumulative;  // arc length at the end of each segment
  double length = 0.0;
  double seed_length = 0.0;
  int iterations = 0;
  // Set when a vertex contact or a reroute choice tied within 1e-9.
  bool ambiguous = false;
  // Vertices the final path passes through (saddles or boundary).
  std::vector<int> through_vertices;

  MeshPoint at(double fraction) const;
};

// The same path traversed from target to source.
MeshGeodesic reversed(const MeshGeodesic& g);

// Straightens the strip: unfold, pull the path taut, and reroute around any
// touched vertex whose opposite side is shorter (angle < pi), until the path
// is locally shortest. Throws NoConvergence after max_iterations reroutes.
MeshGeodesic straighten(const TriMesh& mesh, FaceStrip strip,
                        const MeshPoint& source, const MeshPoint& target,
                        const StraightenOptions& options);

}  // namespace closedgeo
