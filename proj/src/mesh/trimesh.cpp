#include "closedgeo/mesh/trimesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Geometry>

#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr std::string_view kWhere = "mesh-backend/load_mesh";
constexpr double kMinArea = 1e-12;
constexpr double kBaryZero = 1e-12;

// Closest point of triangle (a,b,c) to p, as barycentric weights.
Eigen::Vector3d closest_barycentric(const Eigen::Vector3d& p,
                                    const Eigen::Vector3d& a,
                                    const Eigen::Vector3d& b,
                                    const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return {1, 0, 0};
  const Eigen::Vector3d bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return {0, 1, 0};
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const double v = d1 / (d1 - d3);
    return {1 - v, v, 0};
  }
  const Eigen::Vector3d cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return {0, 0, 1};
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const double w = d2 / (d2 - d6);
    return {1 - w, 0, w};
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {0, 1 - w, w};
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return {1 - v - w, v, w};
}

}  // namespace

TriMesh::TriMesh(std::vector<Eigen::Vector3d> positions, std::vector<Face> faces)
    : positions_(std::move(positions)), faces_(std::move(faces)) {
  const int nv = num_vertices();
  const int nf = num_faces();
  if (nf == 0) raise(ErrorKind::ParseError, kWhere, "mesh has no faces");

  for (int f = 0; f < nf; ++f) {
    const auto& t = faces_[f];
    for (int c = 0; c < 3; ++c) {
      if (t[c] < 0 || t[c] >= nv) {
        raise(ErrorKind::ParseError, kWhere,
              "face " + std::to_string(f) + " references missing vertex " +
                  std::to_string(t[c]));
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      raise(ErrorKind::DegenerateFace, kWhere,
            "face " + std::to_string(f) + " repeats a vertex");
    }
    if (!(face_area(f) > kMinArea)) {
      raise(ErrorKind::DegenerateFace, kWhere,
            "face " + std::to_string(f) + " has area " +
                std::to_string(face_area(f)));
    }
  }

  // Edges and twins.
  twin_.assign(3 * nf, -1);
  edge_of_.assign(3 * nf, -1);
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (int h = 0; h < 3 * nf; ++h) {
    const int a = tail(h), b = head(h);
    by_edge[{std::min(a, b), std::max(a, b)}].push_back(h);
  }
  min_edge_ = std::numeric_limits<double>::infinity();
  for (const auto& [key, hs] : by_edge) {
    const std::string name =
        "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    if (hs.size() > 2) {
      raise(ErrorKind::NonManifold, kWhere, name + " has more than two faces");
    }
    if (hs.size() == 2) {
      if (tail(hs[0]) == tail(hs[1])) {
        raise(ErrorKind::NonManifold, kWhere,
              name + " is shared by inconsistently oriented faces");
      }
      twin_[hs[0]] = hs[1];
      twin_[hs[1]] = hs[0];
    }
    const int e = static_cast<int>(edge_halfedge_.size());
    edge_halfedge_.push_back(hs[0]);
    for (int h : hs) edge_of_[h] = e;
    const double len = (positions_[key.first] - positions_[key.second]).norm();
    if (!(len > 0.0)) raise(ErrorKind::DegenerateFace, kWhere, name + " has zero length");
    edge_length_.push_back(len);
    min_edge_ = std::min(min_edge_, len);
  }

  corner_angle_.resize(3 * nf);
  cone_angle_.assign(nv, 0.0);
  std::vector<int> incident(nv, 0);
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      const auto& p = positions_[faces_[f][c]];
      const Eigen::Vector3d u = positions_[faces_[f][(c + 1) % 3]] - p;
      const Eigen::Vector3d w = positions_[faces_[f][(c + 2) % 3]] - p;
      corner_angle_[3 * f + c] = std::atan2(u.cross(w).norm(), u.dot(w));
      cone_angle_[faces_[f][c]] += corner_angle_[3 * f + c];
      ++incident[faces_[f][c]];
    }
  }

  // Vertex fans. First corner seen per vertex seeds the walk.
  std::vector<std::pair<int, int>> seed(nv, {-1, -1});
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      if (seed[faces_[f][c]].first < 0) seed[faces_[f][c]] = {f, c};
    }
  }
  ring_.resize(nv);
  boundary_vertex_.assign(nv, false);
  for (int v = 0; v < nv; ++v) {
    if (seed[v].first < 0) {
      raise(ErrorKind::Disconnected, kWhere,
            "vertex " + std::to_string(v) + " is not used by any face");
    }
    // Rotate clockwise until a boundary or the start is reached.
    auto [f, c] = seed[v];
    for (int steps = 0; steps < incident[v]; ++steps) {
      const int t = twin_[3 * f + c];
      if (t < 0) {
        boundary_vertex_[v] = true;
        break;
      }
      f = face_of(t);
      c = (corner_of(t) + 1) % 3;
      if (f == seed[v].first) break;
    }
    auto& fan = ring_[v];
    const int start_face = f;
    for (int steps = 0; steps <= incident[v]; ++steps) {
      fan.emplace_back(f, c);
      const int t = twin_[3 * f + (c + 2) % 3];
      if (t < 0) {
        boundary_vertex_[v] = true;
        break;
      }
      f = face_of(t);
      c = corner_of(t);
      if (f == start_face) break;
    }
    if (static_cast<int>(fan.size()) != incident[v]) {
      raise(ErrorKind::NonManifold, kWhere,
            "vertex " + std::to_string(v) + " has a non-manifold face fan");
    }
  }

  // Face connectivity.
  std::vector<bool> seen(nf, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      const int t = twin_[3 * f + c];
      if (t >= 0 && !seen[face_of(t)]) {
        seen[face_of(t)] = true;
        ++reached;
        stack.push_back(face_of(t));
      }
    }
  }
  if (reached != nf) {
    const auto it = std::find(seen.begin(), seen.end(), false);
    raise(ErrorKind::Disconnected, kWhere,
          "face " + std::to_string(it - seen.begin()) +
              " is not connected to face 0");
  }
}

int TriMesh::corner_index(int f, int v) const {
  for (int c = 0; c < 3; ++c) {
    if (faces_[f][c] == v) return c;
  }
  return -1;
}

int TriMesh::shared_halfedge(int f, int g) const {
  for (int c = 0; c < 3; ++c) {
    const int t = twin_[3 * f + c];
    if (t >= 0 && face_of(t) == g) return 3 * f + c;
  }
  return -1;
}

double TriMesh::face_area(int f) const {
  const auto& t = faces_[f];
  return 0.5 * (positions_[t[1]] - positions_[t[0]])
                   .cross(positions_[t[2]] - positions_[t[0]])
                   .norm();
}

Eigen::Vector3d TriMesh::point_position(const MeshPoint& p) const {
  const auto& t = faces_[p.face];
  return p.bary[0] * positions_[t[0]] + p.bary[1] * positions_[t[1]] +
         p.bary[2] * positions_[t[2]];
}

Eigen::Vector3d TriMesh::barycentric(int f, const Eigen::Vector3d& x) const {
  const auto& t = faces_[f];
  Eigen::Vector3d b =
      closest_barycentric(x, positions_[t[0]], positions_[t[1]], positions_[t[2]]);
  b = b.cwiseMax(0.0);
  return b / b.sum();
}

std::vector<int> TriMesh::supporting_faces(const MeshPoint& p) const {
  int zeros = 0, nonzero_corner = -1, zero_corner = -1;
  for (int c = 0; c < 3; ++c) {
    if (p.bary[c] <= kBaryZero) {
      ++zeros;
      zero_corner = c;
    } else {
      nonzero_corner = c;
    }
  }
  if (zeros >= 2) {
    std::vector<int> out;
    for (const auto& [f, c] : ring_[faces_[p.face][nonzero_corner]]) out.push_back(f);
    return out;
  }
  if (zeros == 1) {
    // Edge opposite the zero corner.
    const int h = 3 * p.face + (zero_corner + 1) % 3;
    if (twin_[h] >= 0) return {p.face, face_of(twin_[h])};
  }
  return {p.face};
}

}  // namespace closedgeo
