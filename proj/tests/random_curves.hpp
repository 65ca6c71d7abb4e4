#pragma once

#include <random>

#include "closedgeo/curve_ops.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/shortening.hpp"
#include "support.hpp"

namespace testing {

// Random closed curves for the property suites. Each is returned already
// resampled to a valid k.
struct RandomCurve {
  PolyCurve curve;
  int k;
};

inline RandomCurve finish(const Space& space, PolyCurve c) {
  auto choice = choose_k(space, c);
  auto curve = resample_constant_speed(space, choice.curve, static_cast<int>(choice.curve.size()));
  auto again = choose_k(space, curve, 4096, choice.k);
  return {again.curve, again.k};
}

inline RandomCurve random_sphere_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> mdist(24, 96);
  const Eigen::Vector3d n = random_unit(rng);
  const Eigen::Vector3d e1 = random_unit(rng).cross(n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  const double colat = 0.2 + 1.37 * u(rng);
  const double a2 = 0.3 * u(rng), a3 = 0.2 * u(rng), ph = 2 * kPi * u(rng);
  const int m = mdist(rng);
  return finish(SphereSpace(), sample_closed(m, [&](double t) {
    const double th = 2 * kPi * t;
    const double c = colat + a2 * std::sin(2 * th + ph) + a3 * std::cos(3 * th);
    return SphereSpace::make_point(std::cos(c) * n +
                                   std::sin(c) * (std::cos(th) * e1 + std::sin(th) * e2));
  }));
}

inline RandomCurve random_torus_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> cls(-1, 1), mdist(32, 96);
  int a = cls(rng), b = cls(rng);
  const double r = a == 0 && b == 0 ? 0.05 + 0.1 * u(rng) : 0.0;
  const double u0 = u(rng), v0 = u(rng);
  const double w1 = 0.05 * u(rng), w2 = 0.05 * u(rng), ph = 2 * kPi * u(rng);
  const int m = mdist(rng);
  return finish(TorusSpace(), sample_closed(m, [&](double t) {
    const double th = 2 * kPi * t;
    return TorusSpace::make_point(u0 + a * t + r * std::cos(th) + w1 * std::sin(2 * th + ph),
                                  v0 + b * t + r * std::sin(th) + w2 * std::cos(3 * th));
  }));
}

inline RandomCurve random_mesh_curve(const MeshSpace& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::Vector3d n = random_unit(rng);
  const Eigen::Vector3d e1 = random_unit(rng).cross(n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  const double colat = 0.2 + 1.3 * u(rng);
  const double a2 = 0.2 * u(rng);
  return finish(space, sample_closed(48, [&](double t) {
    const double th = 2 * kPi * t;
    const double c = colat + a2 * std::sin(2 * th);
    return Point(space.project(std::cos(c) * n +
                               std::sin(c) * (std::cos(th) * e1 + std::sin(th) * e2)));
  }));
}

}  // namespace testing
