#include "closedgeo/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr double kCoordTol = 1e-12;
constexpr double kTieTol = 1e-12;
constexpr double kAntipodalSlack = 1e-9;

double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // -tiny rounds up to 1.0
  return r;
}

double arc_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

// ---------------------------------------------------------------- sphere

SphereSpace::SphereSpace(double radius, double epsilon)
    : radius_(radius),
      epsilon_(epsilon > 0.0 ? epsilon : 0.5 * std::numbers::pi * radius) {
  if (!(radius_ > 0.0)) {
    raise(ErrorKind::ConfigError, "analytic-backends/SphereSpace",
          "radius must be positive");
  }
  if (!(epsilon_ < std::numbers::pi * radius_)) {
    raise(ErrorKind::ConfigError, "analytic-backends/SphereSpace",
          "epsilon must lie in (0, pi*radius)");
  }
}

Point SphereSpace::make_point(const Eigen::Vector3d& x) {
  return SpherePoint{x.normalized()};
}

void SphereSpace::validate(const Point& p) const {
  require_kind(p, "analytic-backends/sphere_ops");
  const auto& x = std::get<SpherePoint>(p).x;
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > kCoordTol) {
    raise(ErrorKind::InvalidPoint, "analytic-backends/sphere_ops",
          "sphere point must be a unit vector");
  }
}

double SphereSpace::distance(const Point& a, const Point& b) const {
  require_kind(a, "analytic-backends/sphere_ops");
  require_kind(b, "analytic-backends/sphere_ops");
  const double d =
      radius_ * arc_angle(std::get<SpherePoint>(a).x, std::get<SpherePoint>(b).x);
  if (d >= std::numbers::pi * radius_ - kAntipodalSlack) {
    raise(ErrorKind::NotUnique, "analytic-backends/sphere_ops",
          "points are antipodal");
  }
  return d;
}

SegmentSamples SphereSpace::sample_shortest_path(
    const Point& a, const Point& b, std::span<const double> fractions) const {
  const double d = distance(a, b);
  if (d > epsilon_) {
    raise(ErrorKind::TooFar, "analytic-backends/sphere_ops",
          "distance " + std::to_string(d) + " exceeds epsilon " +
              std::to_string(epsilon_));
  }
  const auto& xa = std::get<SpherePoint>(a).x;
  const auto& xb = std::get<SpherePoint>(b).x;
  const double theta = d / radius_;
  SegmentSamples out;
  out.length = d;
  out.points.reserve(fractions.size());
  const double s = std::sin(theta);
  for (double f : fractions) {
    Eigen::Vector3d x;
    if (f <= 0.0) {
      x = xa;
    } else if (f >= 1.0) {
      x = xb;
    } else if (s < 1e-12) {
      x = ((1.0 - f) * xa + f * xb).normalized();
    } else {
      x = (std::sin((1.0 - f) * theta) * xa + std::sin(f * theta) * xb) / s;
      x.normalize();
    }
    out.points.emplace_back(SpherePoint{x});
  }
  return out;
}

Eigen::Vector3d SphereSpace::embed(const Point& p) const {
  return radius_ * std::get<SpherePoint>(p).x;
}

nlohmann::json SphereSpace::point_to_json(const Point& p) const {
  const auto& x = std::get<SpherePoint>(p).x;
  return nlohmann::json::array({x.x(), x.y(), x.z()});
}

Point SphereSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != 3) {
    raise(ErrorKind::ParseError, "analytic-backends/sphere_ops",
          "sphere point must be [x, y, z]");
  }
  Eigen::Vector3d x(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
  if (!(x.norm() > 0.0)) {
    raise(ErrorKind::InvalidPoint, "analytic-backends/sphere_ops",
          "zero vector is not a sphere point");
  }
  return make_point(x);
}

nlohmann::json SphereSpace::describe() const {
  return {{"name", "sphere"}, {"radius", radius_}, {"epsilon", epsilon_}};
}

// ---------------------------------------------------------------- torus

TorusSpace::TorusSpace(double side, double epsilon)
    : side_(side), epsilon_(epsilon > 0.0 ? epsilon : 0.25 * side) {
  if (!(side_ > 0.0)) {
    raise(ErrorKind::ConfigError, "analytic-backends/TorusSpace",
          "side must be positive");
  }
  if (!(epsilon_ < 0.5 * side_)) {
    raise(ErrorKind::ConfigError, "analytic-backends/TorusSpace",
          "epsilon must lie in (0, side/2)");
  }
}

Point TorusSpace::make_point(double u, double v) {
  return TorusPoint{wrap_unit(u), wrap_unit(v)};
}

void TorusSpace::validate(const Point& p) const {
  require_kind(p, "analytic-backends/torus_ops");
  const auto& t = std::get<TorusPoint>(p);
  if (!(t.u >= 0.0 && t.u < 1.0 && t.v >= 0.0 && t.v < 1.0)) {
    raise(ErrorKind::InvalidPoint, "analytic-backends/torus_ops",
          "torus coordinates must lie in [0,1)");
  }
}

Eigen::Vector2d TorusSpace::lift_displacement(const TorusPoint& a,
                                              const TorusPoint& b) const {
  const Eigen::Vector2d base(b.u - a.u, b.v - a.v);
  double best = std::numeric_limits<double>::infinity();
  double second = best;
  Eigen::Vector2d best_delta = base;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Eigen::Vector2d delta = base + Eigen::Vector2d(i, j);
      const double len = delta.norm();
      if (len < best) {
        second = best;
        best = len;
        best_delta = delta;
      } else if (len < second) {
        second = len;
      }
    }
  }
  if ((second - best) * side_ < kTieTol) {
    raise(ErrorKind::NotUnique, "analytic-backends/torus_ops",
          "two translates realize the distance");
  }
  return best_delta;
}

double TorusSpace::distance(const Point& a, const Point& b) const {
  require_kind(a, "analytic-backends/torus_ops");
  require_kind(b, "analytic-backends/torus_ops");
  return side_ *
         lift_displacement(std::get<TorusPoint>(a), std::get<TorusPoint>(b)).norm();
}

SegmentSamples TorusSpace::sample_shortest_path(
    const Point& a, const Point& b, std::span<const double> fractions) const {
  require_kind(a, "analytic-backends/torus_ops");
  require_kind(b, "analytic-backends/torus_ops");
  const auto& ta = std::get<TorusPoint>(a);
  const auto delta = lift_displacement(ta, std::get<TorusPoint>(b));
  const double d = side_ * delta.norm();
  if (d > epsilon_) {
    raise(ErrorKind::TooFar, "analytic-backends/torus_ops",
          "distance " + std::to_string(d) + " exceeds epsilon " +
              std::to_string(epsilon_));
  }
  SegmentSamples out;
  out.length = d;
  out.points.reserve(fractions.size());
  for (double f : fractions) {
    if (f <= 0.0) {
      out.points.push_back(a);
    } else if (f >= 1.0) {
      out.points.push_back(b);
    } else {
      out.points.push_back(make_point(ta.u + f * delta.x(), ta.v + f * delta.y()));
    }
  }
  return out;
}

Eigen::Vector3d TorusSpace::embed(const Point& p) const {
  const auto& t = std::get<TorusPoint>(p);
  return {side_ * t.u, side_ * t.v, 0.0};
}

nlohmann::json TorusSpace::point_to_json(const Point& p) const {
  const auto& t = std::get<TorusPoint>(p);
  return nlohmann::json::array({t.u, t.v});
}

Point TorusSpace::point_from_json(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != 2) {
    raise(ErrorKind::ParseError, "analytic-backends/torus_ops",
          "torus point must be [u, v]");
  }
  return make_point(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json TorusSpace::describe() const {
  return {{"name", "torus"}, {"side", side_}, {"epsilon", epsilon_}};
}

}  // namespace closedgeo
