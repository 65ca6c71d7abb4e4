#pragma once

#include <string_view>
#include <variant>

#include <Eigen/Core>

namespace closedgeo {

// Unit vector in R^3 (chart coordinates on the round sphere of any radius).
struct SpherePoint {
  Eigen::Vector3d x;
};

// Fractional coordinates in [0,1)^2 on the square torus.
struct TorusPoint {
  double u = 0.0;
  double v = 0.0;
};

// A location on a triangle mesh: face id plus barycentric weights of its
// three corners (in face vertex order).
struct MeshPoint {
  int face = -1;
  Eigen::Vector3d bary = Eigen::Vector3d(1.0, 0.0, 0.0);
};

// The backend tag of a point is the active alternative.
using Point = std::variant<SpherePoint, TorusPoint, MeshPoint>;

enum class BackendKind { Sphere = 0, Torus = 1, Mesh = 2 };

inline BackendKind backend_of(const Point& p) {
  return static_cast<BackendKind>(p.index());
}

std::string_view backend_name(BackendKind kind);

// Exact coordinate equality (no tolerance).
bool same_coordinates(const Point& a, const Point& b);

}  // namespace closedgeo
