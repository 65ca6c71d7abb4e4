#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "closedgeo/analytic.hpp"
#include "closedgeo/curve.hpp"
#include "closedgeo/mesh/trimesh.hpp"

namespace testing {

using namespace closedgeo;

inline constexpr double kPi = std::numbers::pi;

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

// Unit vector at angular distance `angle` from x in a random direction.
inline Eigen::Vector3d random_at_angle(std::mt19937_64& rng, const Eigen::Vector3d& x,
                                       double angle) {
  Eigen::Vector3d t = random_unit(rng);
  t = (t - t.dot(x) * x).normalized();
  return std::cos(angle) * x + std::sin(angle) * t;
}

inline MeshPoint random_mesh_point(std::mt19937_64& rng, const TriMesh& mesh) {
  std::uniform_int_distribution<int> face(0, mesh.num_faces() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), t = u(rng);
  if (s > t) std::swap(s, t);
  return MeshPoint{face(rng), Eigen::Vector3d(s, t - s, 1.0 - t)};
}

// Closed curve t -> p(t) sampled at m uniform parameters.
template <class F>
PolyCurve sample_closed(int m, F&& p) {
  std::vector<Point> pts;
  for (int i = 0; i < m; ++i) pts.emplace_back(p(static_cast<double>(i) / m));
  return PolyCurve(std::move(pts), true);
}

inline PolyCurve latitude(double colatitude, int m) {
  return sample_closed(m, [&](double t) {
    return SphereSpace::make_point({std::sin(colatitude) * std::cos(2 * kPi * t),
                                    std::sin(colatitude) * std::sin(2 * kPi * t),
                                    std::cos(colatitude)});
  });
}

inline PolyCurve equator(int m) { return latitude(kPi / 2, m); }

}  // namespace testing
