#include "closedgeo/mesh/mesh_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr std::string_view kWhere = "mesh-backend/mesh_shortest_path";
constexpr double kBaryTol = 1e-12;

}  // namespace

double min_vertex_girth(const TriMesh& mesh, int steiner_points) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double scale = 1.0 / (steiner_points + 1);
  double best = std::numeric_limits<double>::infinity();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.is_boundary_vertex(v) || mesh.cone_angle(v) >= two_pi - 1e-9) continue;
    double girth = 0.0;
    for (const auto& [f, c] : mesh.ring(v)) {
      const double d1 = scale * mesh.halfedge_length(3 * f + c);
      const double d2 = scale * mesh.halfedge_length(3 * f + (c + 2) % 3);
      const double theta = mesh.corner_angle(f, c);
      girth += std::sqrt(std::max(0.0, d1 * d1 + d2 * d2 - 2.0 * d1 * d2 * std::cos(theta)));
    }
    best = std::min(best, girth);
  }
  return best;
}

double epsilon_estimate(const TriMesh& mesh, int steiner_points, double s_factor) {
  return std::min(0.5 * mesh.min_edge_length() * s_factor,
                  0.25 * min_vertex_girth(mesh, steiner_points));
}

MeshSpace::MeshSpace(std::shared_ptr<const TriMesh> mesh, MeshSpaceOptions options)
    : mesh_(std::move(mesh)),
      options_(options),
      graph_(*mesh_, options_.steiner_points),
      estimated_epsilon_(epsilon_estimate(*mesh_, options_.steiner_points,
                                          options_.s_factor)),
      epsilon_(options_.epsilon > 0.0 ? options_.epsilon : estimated_epsilon_) {
  if (!(epsilon_ > 0.0)) {
    raise(ErrorKind::ConfigError, "mesh-backend/epsilon_estimate",
          "epsilon must be positive");
  }
}

MeshGeodesic MeshSpace::straighten_seed(const MeshPoint& a, const MeshPoint& b) const {
  const auto& m = *mesh_;
  const auto route = graph_.route(m, a, b);
  const auto strip = strip_from_route(m, route);
  const auto faces = strip.faces(m);
  const MeshPoint source{faces.front(), m.barycentric(faces.front(), m.point_position(a))};
  const MeshPoint target{faces.back(), m.barycentric(faces.back(), m.point_position(b))};
  auto g = straighten(m, strip, source, target, options_.straighten);
  g.seed_length = route.length;
  return g;
}

MeshGeodesic MeshSpace::geodesic(const MeshPoint& a, const MeshPoint& b,
                                 bool enforce_epsilon) const {
  const auto& m = *mesh_;
  const Eigen::Vector3d pa = m.point_position(a);
  const Eigen::Vector3d pb = m.point_position(b);
  const double chord = (pa - pb).norm();
  if (chord == 0.0) {
    MeshGeodesic g;
    g.faces = {a.face};
    g.segments.push_back({a.bary, a.bary});
    g.cumulative = {0.0};
    return g;
  }
  if (enforce_epsilon && chord > epsilon_) {
    raise(ErrorKind::TooFar, kWhere,
          "straight-line distance " + std::to_string(chord) + " exceeds epsilon " +
              std::to_string(epsilon_));
  }
  // Seeds from either end can settle on opposite sides of a cone vertex;
  // straighten both and keep the shorter so d(a,b) == d(b,a).
  auto forward = straighten_seed(a, b);
  auto backward = reversed(straighten_seed(b, a));
  auto g = backward.length < forward.length - 1e-12 ? std::move(backward)
                                                      : std::move(forward);
  if (g.ambiguous) ambiguous_paths_.fetch_add(1, std::memory_order_relaxed);
  if (enforce_epsilon && g.length > epsilon_) {
    raise(ErrorKind::TooFar, kWhere,
          "distance " + std::to_string(g.length) + " exceeds epsilon " +
              std::to_string(epsilon_));
  }
  return g;
}

MeshPoint MeshSpace::project(const Eigen::Vector3d& x) const {
  const auto& m = *mesh_;
  MeshPoint best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int f = 0; f < m.num_faces(); ++f) {
    const Eigen::Vector3d b = m.barycentric(f, x);
    const double d = (m.point_position(MeshPoint{f, b}) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = MeshPoint{f, b};
    }
  }
  return best;
}

void MeshSpace::validate(const Point& p) const {
  require_kind(p, "mesh-backend/MeshPoint");
  const auto& q = std::get<MeshPoint>(p);
  if (q.face < 0 || q.face >= mesh_->num_faces()) {
    raise(ErrorKind::InvalidPoint, "mesh-backend/MeshPoint",
          "face " + std::to_string(q.face) + " does not exist");
  }
  if (q.bary.minCoeff() < -kBaryTol || std::abs(q.bary.sum() - 1.0) > kBaryTol) {
    raise(ErrorKind::InvalidPoint, "mesh-backend/MeshPoint",
          "barycentric coordinates must be non-negative and sum to 1");
  }
}

double MeshSpace::distance(const Point& a, const Point& b) const {
  require_kind(a, "mesh-backend/mesh_distance");
  require_kind(b, "mesh-backend/mesh_distance");
  return geodesic(std::get<MeshPoint>(a), std::get<MeshPoint>(b)).length;
}

SegmentSamples MeshSpace::sample_shortest_path(
    const Point& a, const Point& b, std::span<const double> fractions) const {
  require_kind(a, kWhere);
  require_kind(b, kWhere);
  const auto g = geodesic(std::get<MeshPoint>(a), std::get<MeshPoint>(b));
  SegmentSamples out;
  out.length = g.length;
  out.points.reserve(fractions.size());
  for (double f : fractions) {
    if (f <= 0.0) {
      out.points.push_back(a);
    } else if (f >= 1.0) {
      out.points.push_back(b);
    } else {
      out.points.emplace_back(g.at(f));
    }
  }
  return out;
}

Eigen::Vector3d MeshSpace::embed(const Point& p) const {
  return mesh_->point_position(std::get<MeshPoint>(p));
}

nlohmann::json MeshSpace::point_to_json(const Point& p) const {
  const auto& q = std::get<MeshPoint>(p);
  return nlohmann::json::array({q.face, q.bary[0], q.bary[1], q.bary[2]});
}

Point MeshSpace::point_from_json(const nlohmann::json& j) const {
  if (j.is_object() && j.contains("position")) {
    const auto& x = j["position"];
    return project(Eigen::Vector3d(x.at(0).get<double>(), x.at(1).get<double>(),
                                   x.at(2).get<double>()));
  }
  if (!j.is_array() || j.size() != 4) {
    raise(ErrorKind::ParseError, "mesh-backend/MeshPoint",
          "mesh point must be [face, b0, b1, b2] or {\"position\": [x, y, z]}");
  }
  return MeshPoint{j[0].get<int>(), Eigen::Vector3d(j[1].get<double>(), j[2].get<double>(),
                                                    j[3].get<double>())};
}

nlohmann::json MeshSpace::describe() const {
  return {{"name", "mesh"},
          {"vertices", mesh_->num_vertices()},
          {"faces", mesh_->num_faces()},
          {"steiner_points", options_.steiner_points},
          {"s_factor", options_.s_factor},
          {"epsilon", epsilon_},
          {"epsilon_estimate", estimated_epsilon_},
          {"epsilon_overridden", options_.epsilon > 0.0},
          {"straighten_angle_tol", options_.straighten.angle_tol},
          {"straighten_max_iterations", options_.straighten.max_iterations}};
}

}  // namespace closedgeo
