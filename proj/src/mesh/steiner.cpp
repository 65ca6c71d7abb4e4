#include "closedgeo/mesh/steiner.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "closedgeo/error.hpp"

namespace closedgeo {

SteinerGraph::SteinerGraph(const TriMesh& mesh, int per_edge)
    : per_edge_(per_edge), num_vertices_(mesh.num_vertices()) {
  if (per_edge_ < 0) {
    raise(ErrorKind::ConfigError, "mesh-backend/SteinerGraph",
          "steiner points per edge must be >= 0");
  }
  const int n = num_vertices_ + mesh.num_edges() * per_edge_;
  position_.resize(n);
  node_faces_.resize(n);
  for (int v = 0; v < num_vertices_; ++v) {
    position_[v] = mesh.position(v);
    for (const auto& [f, c] : mesh.ring(v)) node_faces_[v].push_back(f);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int h = mesh.edge_halfedge(e);
    const auto& p0 = mesh.position(mesh.tail(h));
    const auto& p1 = mesh.position(mesh.head(h));
    std::vector<int> faces{TriMesh::face_of(h)};
    if (mesh.twin(h) >= 0) faces.push_back(TriMesh::face_of(mesh.twin(h)));
    for (int j = 0; j < per_edge_; ++j) {
      const double t = static_cast<double>(j + 1) / (per_edge_ + 1);
      position_[edge_node(e, j)] = (1.0 - t) * p0 + t * p1;
      node_faces_[edge_node(e, j)] = faces;
    }
  }
  face_nodes_.resize(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    auto& nodes = face_nodes_[f];
    for (int c = 0; c < 3; ++c) {
      nodes.push_back(mesh.face(f)[c]);
      const int e = mesh.edge(3 * f + c);
      for (int j = 0; j < per_edge_; ++j) nodes.push_back(edge_node(e, j));
    }
  }
}

SteinerRoute SteinerGraph::route(const TriMesh& mesh, const MeshPoint& a,
                                 const MeshPoint& b) const {
  constexpr int kSource = -2;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Eigen::Vector3d pa = mesh.point_position(a);
  const Eigen::Vector3d pb = mesh.point_position(b);
  const auto faces_a = mesh.supporting_faces(a);
  const auto faces_b = mesh.supporting_faces(b);
  auto touches_b = [&](int node) {
    for (int f : node_faces_[node]) {
      if (std::find(faces_b.begin(), faces_b.end(), f) != faces_b.end()) return f;
    }
    return -1;
  };

  const int n = num_nodes();
  std::vector<double> dist(n, kInf);
  std::vector<int> pred(n, -1);
  std::vector<int> pred_face(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;

  double best = kInf;
  int best_pred = -1, best_face = -1;
  for (int f : faces_a) {
    if (std::find(faces_b.begin(), faces_b.end(), f) != faces_b.end()) {
      const double d = (pa - pb).norm();
      if (d < best) {
        best = d;
        best_pred = kSource;
        best_face = f;
      }
    }
    for (int u : face_nodes_[f]) {
      const double d = (pa - position_[u]).norm();
      if (d < dist[u]) {
        dist[u] = d;
        pred[u] = kSource;
        pred_face[u] = f;
        open.emplace(d + (position_[u] - pb).norm(), u);
      }
    }
  }

  while (!open.empty()) {
    const auto [key, u] = open.top();
    open.pop();
    if (key >= best) break;
    if (key > dist[u] + (position_[u] - pb).norm() + 1e-15) continue;
    if (const int fb = touches_b(u); fb >= 0) {
      const double d = dist[u] + (position_[u] - pb).norm();
      if (d < best) {
        best = d;
        best_pred = u;
        best_face = fb;
      }
    }
    for (int f : node_faces_[u]) {
      for (int w : face_nodes_[f]) {
        if (w == u) continue;
        const double d = dist[u] + (position_[u] - position_[w]).norm();
        if (d < dist[w]) {
          dist[w] = d;
          pred[w] = u;
          pred_face[w] = f;
          open.emplace(d + (position_[w] - pb).norm(), w);
        }
      }
    }
  }
  if (best == kInf) {
    raise(ErrorKind::Disconnected, "mesh-backend/mesh_shortest_path",
          "no Steiner route between the endpoints");
  }

  SteinerRoute out;
  out.length = best;
  out.arc_faces.push_back(best_face);
  for (int u = best_pred; u != kSource; u = pred[u]) {
    out.nodes.push_back(u);
    out.arc_faces.push_back(pred_face[u]);
  }
  std::reverse(out.nodes.begin(), out.nodes.end());
  std::reverse(out.arc_faces.begin(), out.arc_faces.end());
  return out;
}

}  // namespace closedgeo
