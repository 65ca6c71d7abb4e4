#include "closedgeo/mesh/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr std::string_view kWhere = "mesh-backend/mesh_shortest_path";
constexpr double kTieTol = 1e-9;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(std::abs(cross2(a, b)), a.dot(b));
}

// Point at distance rp from p and rq from q, to the left of p -> q.
Eigen::Vector2d place_left(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                           double rp, double rq) {
  const Eigen::Vector2d pq = q - p;
  const double d = pq.norm();
  const Eigen::Vector2d e = pq / d;
  const double a = (rp * rp - rq * rq + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, rp * rp - a * a));
  return p + a * e + h * Eigen::Vector2d(-e.y(), e.x());
}

Eigen::Vector3d bary2d(const Triangle2& t, const Eigen::Vector2d& p) {
  const Eigen::Vector2d e1 = t[1] - t[0], e2 = t[2] - t[0], r = p - t[0];
  const double det = cross2(e1, e2);
  const double b1 = cross2(r, e2) / det;
  const double b2 = cross2(e1, r) / det;
  Eigen::Vector3d b(1.0 - b1 - b2, b1, b2);
  b = b.cwiseMax(0.0);
  return b / b.sum();
}

Eigen::Vector2d point2d(const Triangle2& t, const Eigen::Vector3d& b) {
  return b[0] * t[0] + b[1] * t[1] + b[2] * t[2];
}

struct Portal {
  Eigen::Vector2d left, right;
  int left_vertex = -1, right_vertex = -1;
};

struct Corner {
  int portal = -1;  // index into the crossing list
  bool left = false;
  int vertex = -1;
  Eigen::Vector2d pos;
};

// Shortest polyline from start to end through the portal sequence
// (simple stupid funnel). Portals with an endpoint on the current apex are
// crossed at the apex and impose no constraint.
std::vector<Corner> funnel(const Eigen::Vector2d& start,
                           const Eigen::Vector2d& end,
                           const std::vector<Portal>& portals) {
  const int n = static_cast<int>(portals.size());
  auto left_of = [&](int i) -> const Eigen::Vector2d& {
    return i == n ? end : portals[i].left;
  };
  auto right_of = [&](int i) -> const Eigen::Vector2d& {
    return i == n ? end : portals[i].right;
  };
  std::vector<Corner> corners;
  Eigen::Vector2d apex = start, left = start, right = start;
  int apex_index = -1, left_index = -1, right_index = -1;
  for (int i = apex_index + 1; i <= n; ++i) {
    const Eigen::Vector2d& pl = left_of(i);
    const Eigen::Vector2d& pr = right_of(i);
    if (i < n && (pl == apex || pr == apex)) continue;

    if (cross2(right - apex, pr - apex) >= 0.0) {
      if (apex == right || cross2(left - apex, pr - apex) <= 0.0) {
        right = pr;
        right_index = i;
      } else {
        corners.push_back({left_index, true, portals[left_index].left_vertex, left});
        apex = left;
        apex_index = left_index;
        right = left = apex;
        right_index = left_index = apex_index;
        i = apex_index;
        continue;
      }
    }
    if (cross2(left - apex, pl - apex) <= 0.0) {
      if (apex == left || cross2(right - apex, pl - apex) >= 0.0) {
        left = pl;
        left_index = i;
      } else {
        corners.push_back(
            {right_index, false, portals[right_index].right_vertex, right});
        apex = right;
        apex_index = right_index;
        right = left = apex;
        right_index = left_index = apex_index;
        i = apex_index;
        continue;
      }
    }
  }
  return corners;
}

int ring_walk_step(const TriMesh& mesh, int f, int v, bool ccw) {
  const int c = mesh.corner_index(f, v);
  return ccw ? 3 * f + (c + 2) % 3 : 3 * f + c;
}

// Crossings that rotate around v from face `from` to face `to`, or nothing
// if a boundary blocks that direction.
std::optional<std::vector<int>> walk_around(const TriMesh& mesh, int v,
                                            int from, int to, bool ccw) {
  std::vector<int> out;
  int f = from;
  const auto limit = mesh.ring(v).size();
  while (f != to) {
    if (out.size() > limit) return std::nullopt;
    const int h = ring_walk_step(mesh, f, v, ccw);
    const int t = mesh.twin(h);
    if (t < 0) return std::nullopt;
    out.push_back(h);
    f = TriMesh::face_of(t);
  }
  return out;
}

struct Contact {
  int corner = -1;
  int lo = 0, hi = 0;     // run of crossings that touch the vertex
  double other_side = 0;  // angle on the side away from the strip
};

}  // namespace

std::vector<int> FaceStrip::faces(const TriMesh& mesh) const {
  std::vector<int> out{first_face};
  for (int h : crossings) out.push_back(TriMesh::face_of(mesh.twin(h)));
  return out;
}

std::vector<Triangle2> unfold_strip(const TriMesh& mesh, const FaceStrip& strip) {
  std::vector<Triangle2> out;
  out.reserve(strip.crossings.size() + 1);
  {
    const auto& t = mesh.face(strip.first_face);
    const auto& p0 = mesh.position(t[0]);
    const auto& p1 = mesh.position(t[1]);
    const auto& p2 = mesh.position(t[2]);
    Triangle2 tri;
    tri[0] = Eigen::Vector2d::Zero();
    tri[1] = Eigen::Vector2d((p1 - p0).norm(), 0.0);
    tri[2] = place_left(tri[0], tri[1], (p2 - p0).norm(), (p2 - p1).norm());
    out.push_back(tri);
  }
  for (int h : strip.crossings) {
    const Triangle2& cur = out.back();
    const int k = TriMesh::corner_of(h);
    const int t = mesh.twin(h);
    const int kt = TriMesh::corner_of(t);
    const int g = TriMesh::face_of(t);
    Triangle2 tri;
    tri[kt] = cur[(k + 1) % 3];
    tri[(kt + 1) % 3] = cur[k];
    const auto& x = mesh.position(mesh.face(g)[(kt + 2) % 3]);
    tri[(kt + 2) % 3] =
        place_left(tri[kt], tri[(kt + 1) % 3], (x - mesh.position(mesh.tail(t))).norm(),
                   (x - mesh.position(mesh.head(t))).norm());
    out.push_back(tri);
  }
  return out;
}

void remove_backtracks(const TriMesh& mesh, FaceStrip& strip) {
  std::vector<int> kept;
  kept.reserve(strip.crossings.size());
  for (int h : strip.crossings) {
    if (!kept.empty() && kept.back() == mesh.twin(h)) {
      kept.pop_back();
    } else {
      kept.push_back(h);
    }
  }
  strip.crossings = std::move(kept);
}

FaceStrip strip_from_route(const TriMesh& mesh, const SteinerRoute& route) {
  FaceStrip strip;
  strip.first_face = route.arc_faces.front();
  int current = strip.first_face;
  for (std::size_t j = 1; j < route.arc_faces.size(); ++j) {
    const int next = route.arc_faces[j];
    if (next == current) continue;
    if (const int h = mesh.shared_halfedge(current, next); h >= 0) {
      strip.crossings.push_back(h);
      current = next;
      continue;
    }
    // The faces only share the vertex the route passes through.
    const int v = route.nodes[j - 1];
    if (v >= mesh.num_vertices() || mesh.corner_index(current, v) < 0 ||
        mesh.corner_index(next, v) < 0) {
      raise(ErrorKind::NoConvergence, kWhere, "Steiner route is not face-connected");
    }
    auto ccw = walk_around(mesh, v, current, next, true);
    auto cw = walk_around(mesh, v, current, next, false);
    const std::vector<int>* pick = nullptr;
    if (ccw && (!cw || ccw->size() <= cw->size())) {
      pick = &*ccw;
    } else if (cw) {
      pick = &*cw;
    } else {
      raise(ErrorKind::NoConvergence, kWhere,
            "cannot rotate around vertex " + std::to_string(v));
    }
    strip.crossings.insert(strip.crossings.end(), pick->begin(), pick->end());
    current = next;
  }
  remove_backtracks(mesh, strip);
  return strip;
}

MeshPoint MeshGeodesic::at(double fraction) const {
  if (segments.empty()) return MeshPoint{faces.front(), Eigen::Vector3d(1, 0, 0)};
  const double s = std::clamp(fraction, 0.0, 1.0) * length;
  std::size_t i = 0;
  while (i + 1 < segments.size() && cumulative[i] < s) ++i;
  const double start = i == 0 ? 0.0 : cumulative[i - 1];
  const double seg = cumulative[i] - start;
  const double f = seg > 0.0 ? std::clamp((s - start) / seg, 0.0, 1.0) : 0.0;
  Eigen::Vector3d b = (1.0 - f) * segments[i][0] + f * segments[i][1];
  b = b.cwiseMax(0.0);
  return MeshPoint{faces[i], b / b.sum()};
}

MeshGeodesic reversed(const MeshGeodesic& g) {
  MeshGeodesic out = g;
  std::reverse(out.faces.begin(), out.faces.end());
  std::reverse(out.segments.begin(), out.segments.end());
  for (auto& s : out.segments) std::swap(s[0], s[1]);
  std::reverse(out.through_vertices.begin(), out.through_vertices.end());
  const std::size_t n = g.cumulative.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.cumulative[i] = g.length - (i + 1 < n ? g.cumulative[n - 2 - i] : 0.0);
  }
  return out;
}

MeshGeodesic straighten(const TriMesh& mesh, FaceStrip strip,
                        const MeshPoint& source, const MeshPoint& target,
                        const StraightenOptions& options) {
  constexpr double kPi = std::numbers::pi;
  bool ambiguous = false;
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const auto tris = unfold_strip(mesh, strip);
    const auto faces = strip.faces(mesh);
    const int n = static_cast<int>(strip.crossings.size());
    std::vector<Portal> portals(n);
    for (int i = 0; i < n; ++i) {
      const int h = strip.crossings[i];
      const int k = TriMesh::corner_of(h);
      portals[i] = {tris[i][(k + 1) % 3], tris[i][k], mesh.head(h), mesh.tail(h)};
    }
    const Eigen::Vector2d start = point2d(tris.front(), source.bary);
    const Eigen::Vector2d end = point2d(tris.back(), target.bary);
    const auto corners = funnel(start, end, portals);

    // Path vertices: start, corners, end.
    std::vector<Eigen::Vector2d> path{start};
    for (const auto& c : corners) path.push_back(c.pos);
    path.push_back(end);

    std::vector<Contact> contacts;
    std::vector<std::pair<int, int>> runs;
    for (int j = 0; j < static_cast<int>(corners.size()); ++j) {
      const auto& c = corners[j];
      auto touches = [&](int i) {
        return c.left ? portals[i].left_vertex == c.vertex
                      : portals[i].right_vertex == c.vertex;
      };
      int lo = c.portal, hi = c.portal;
      while (lo > 0 && touches(lo - 1)) --lo;
      while (hi + 1 < n && touches(hi + 1)) ++hi;
      runs.emplace_back(lo, hi);

      const Eigen::Vector2d d_in = path[j] - c.pos;
      const Eigen::Vector2d d_out = path[j + 2] - c.pos;
      if (d_in.squaredNorm() == 0.0 || d_out.squaredNorm() == 0.0) continue;
      if (mesh.is_boundary_vertex(c.vertex)) continue;
      auto spoke = [&](int i) {
        return (c.left ? portals[i].right : portals[i].left) - c.pos;
      };
      double strip_side = angle_between(d_in, spoke(lo)) + angle_between(spoke(hi), d_out);
      for (int i = lo + 1; i <= hi; ++i) {
        strip_side += mesh.corner_angle(faces[i], mesh.corner_index(faces[i], c.vertex));
      }
      contacts.push_back({j, lo, hi, mesh.cone_angle(c.vertex) - strip_side});
    }

    const Contact* worst = nullptr;
    for (const auto& ct : contacts) {
      if (std::abs(ct.other_side - kPi) <= kTieTol) ambiguous = true;
      if (ct.other_side >= kPi - options.angle_tol) continue;
      if (worst == nullptr) {
        worst = &ct;
        continue;
      }
      const int v = corners[ct.corner].vertex;
      const int w = corners[worst->corner].vertex;
      if (std::abs(ct.other_side - worst->other_side) <= kTieTol && v != w) ambiguous = true;
      if (ct.other_side < worst->other_side - 1e-12 ||
          (std::abs(ct.other_side - worst->other_side) <= 1e-12 && v < w)) {
        worst = &ct;
      }
    }

    if (worst == nullptr) {
      MeshGeodesic out;
      out.faces = faces;
      out.iterations = iter;
      out.ambiguous = ambiguous;
      for (const auto& c : corners) out.through_vertices.push_back(c.vertex);
      // Crossing point on every portal.
      std::vector<Eigen::Vector2d> waypoint{start};
      std::size_t seg = 0;  // corners passed so far
      for (int i = 0; i < n; ++i) {
        while (seg < runs.size() && runs[seg].second < i) ++seg;
        if (seg < runs.size() && runs[seg].first <= i) {
          waypoint.push_back(corners[seg].pos);
          continue;
        }
        const Eigen::Vector2d& p = path[seg];
        const Eigen::Vector2d& q = path[seg + 1];
        const Eigen::Vector2d r = portals[i].right;
        const Eigen::Vector2d lr = portals[i].left - r;
        const double denom = cross2(lr, q - p);
        double t = 0.5;
        if (std::abs(denom) > 0.0) t = cross2(p - r, q - p) / denom;
        waypoint.push_back(r + std::clamp(t, 0.0, 1.0) * lr);
      }
      waypoint.push_back(end);
      double total = 0.0;
      for (int i = 0; i <= n; ++i) {
        out.segments.push_back({bary2d(tris[i], waypoint[i]), bary2d(tris[i], waypoint[i + 1])});
        total += (waypoint[i + 1] - waypoint[i]).norm();
        out.cumulative.push_back(total);
      }
      out.length = total;
      return out;
    }

    // Reroute the strip around the other side of the worst vertex.
    const int v = corners[worst->corner].vertex;
    const int f_in = faces[worst->lo];
    const int f_out = faces[worst->hi + 1];
    const bool went_cw = mesh.tail(strip.crossings[worst->lo]) == v;
    auto around = walk_around(mesh, v, f_in, f_out, went_cw);
    if (!around) {
      raise(ErrorKind::NoConvergence, kWhere,
            "cannot reroute around vertex " + std::to_string(v));
    }
    std::vector<int> rerouted(strip.crossings.begin(),
                              strip.crossings.begin() + worst->lo);
    rerouted.insert(rerouted.end(), around->begin(), around->end());
    rerouted.insert(rerouted.end(), strip.crossings.begin() + worst->hi + 1,
                    strip.crossings.end());
    strip.crossings = std::move(rerouted);
    remove_backtracks(mesh, strip);
  }
  raise(ErrorKind::NoConvergence, kWhere,
        "straightening did not converge in " +
            std::to_string(options.max_iterations) + " iterations");
}

}  // namespace closedgeo
