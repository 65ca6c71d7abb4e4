#pragma once

#include <vector>

#include <Eigen/Core>

#include "closedgeo/mesh/trimesh.hpp"
#include "closedgeo/point.hpp"

namespace closedgeo {

// Route through the Steiner graph from a to b. arc_faces[j] is the face
// containing arc j; arcs run a -> nodes[0] -> ... -> nodes.back() -> b, so
// arc_faces.size() == nodes.size() + 1.
struct SteinerRoute {
  std::vector<int> nodes;
  std::vector<int> arc_faces;
  double length = 0.0;
};

// Mesh vertices plus `per_edge` equally spaced points on every edge. Arcs
// join any two nodes on the boundary of a common face and are weighted by
// their straight-line length. Immutable; route() keeps its scratch local.
class SteinerGraph {
 public:
  SteinerGraph(const TriMesh& mesh, int per_edge);

  int per_edge() const noexcept { return per_edge_; }
  int num_nodes() const noexcept { return static_cast<int>(position_.size()); }
  const Eigen::Vector3d& node_position(int n) const { return position_[n]; }
  const std::vector<int>& node_faces(int n) const { return node_faces_[n]; }
  const std::vector<int>& face_nodes(int f) const { return face_nodes_[f]; }
  bool is_vertex_node(int n) const { return n < num_vertices_; }
  // Node on edge e at position j (0-based) counted from the edge's first
  // half-edge tail.
  int edge_node(int e, int j) const { return num_vertices_ + e * per_edge_ + j; }

  // A* search with the straight-line lower bound.
  SteinerRoute route(const TriMesh& mesh, const MeshPoint& a,
                     const MeshPoint& b) const;

 private:
  int per_edge_;
  int num_vertices_;
  std::vector<Eigen::Vector3d> position_;
  std::vector<std::vector<int>> node_faces_;
  std::vector<std::vector<int>> face_nodes_;
};

}  // namespace closedgeo
