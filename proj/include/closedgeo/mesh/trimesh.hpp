#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "closedgeo/point.hpp"

namespace closedgeo {

// Triangle mesh with implicit half-edges: half-edge h = 3f + c runs from
// corner c of face f to corner (c+1)%3. Faces are oriented consistently;
// boundary half-edges have twin -1.
class TriMesh {
 public:
  using Face = std::array<int, 3>;

  // Validates manifoldness, connectivity and face areas. Throws ParseError,
  // NonManifold, Disconnected or DegenerateFace naming the element.
  TriMesh(std::vector<Eigen::Vector3d> positions, std::vector<Face> faces);

  int num_vertices() const noexcept { return static_cast<int>(positions_.size()); }
  int num_faces() const noexcept { return static_cast<int>(faces_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edge_halfedge_.size()); }

  const std::vector<Eigen::Vector3d>& positions() const noexcept { return positions_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Eigen::Vector3d& position(int v) const { return positions_[v]; }
  const Face& face(int f) const { return faces_[f]; }

  static int face_of(int h) noexcept { return h / 3; }
  static int corner_of(int h) noexcept { return h % 3; }
  static int next(int h) noexcept { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  static int prev(int h) noexcept { return 3 * (h / 3) + (h % 3 + 2) % 3; }

  int tail(int h) const { return faces_[h / 3][h % 3]; }
  int head(int h) const { return faces_[h / 3][(h % 3 + 1) % 3]; }
  int twin(int h) const { return twin_[h]; }
  int edge(int h) const { return edge_of_[h]; }
  int edge_halfedge(int e) const { return edge_halfedge_[e]; }
  double edge_length(int e) const { return edge_length_[e]; }
  double halfedge_length(int h) const { return edge_length_[edge_of_[h]]; }
  double min_edge_length() const noexcept { return min_edge_; }

  // Interior angle at corner c of face f.
  double corner_angle(int f, int c) const { return corner_angle_[3 * f + c]; }
  // Sum of incident corner angles.
  double cone_angle(int v) const { return cone_angle_[v]; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  // Incident faces of v as (face, corner) pairs in counter-clockwise order.
  // For boundary vertices the fan starts at the boundary.
  const std::vector<std::pair<int, int>>& ring(int v) const { return ring_[v]; }

  // Corner of f holding vertex v, or -1.
  int corner_index(int f, int v) const;

  // Half-edge of f that is shared with face g, or -1.
  int shared_halfedge(int f, int g) const;

  double face_area(int f) const;
  Eigen::Vector3d point_position(const MeshPoint& p) const;

  // Barycentric coordinates of the point of face f closest to x.
  Eigen::Vector3d barycentric(int f, const Eigen::Vector3d& x) const;

  // Faces whose closure contains p (several when p is on an edge or vertex).
  std::vector<int> supporting_faces(const MeshPoint& p) const;

 private:
  std::vector<Eigen::Vector3d> positions_;
  std::vector<Face> faces_;
  std::vector<int> twin_;
  std::vector<int> edge_of_;
  std::vector<int> edge_halfedge_;
  std::vector<double> edge_length_;
  std::vector<double> corner_angle_;
  std::vector<double> cone_angle_;
  std::vector<bool> boundary_vertex_;
  std::vector<std::vector<std::pair<int, int>>> ring_;
  double min_edge_ = 0.0;
};

}  // namespace closedgeo
