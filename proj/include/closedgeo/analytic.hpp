#pragma once

#include "closedgeo/space.hpp"

namespace closedgeo {

// Round sphere S^2 of the given radius. Unique shortest paths exist below
// pi * radius; epsilon defaults to (pi/2) * radius.
class SphereSpace final : public Space {
 public:
  explicit SphereSpace(double radius = 1.0, double epsilon = 0.0);

  BackendKind kind() const override { return BackendKind::Sphere; }
  double epsilon() const override { return epsilon_; }
  double radius() const noexcept { return radius_; }

  void validate(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  SegmentSamples sample_shortest_path(
      const Point& a, const Point& b,
      std::span<const double> fractions) const override;
  Eigen::Vector3d embed(const Point& p) const override;
  nlohmann::json point_to_json(const Point& p) const override;
  Point point_from_json(const nlohmann::json& j) const override;
  nlohmann::json describe() const override;

  static Point make_point(const Eigen::Vector3d& x);

 private:
  double radius_;
  double epsilon_;
};

// Flat square torus R^2 / (side Z)^2 with fractional coordinates in [0,1)^2.
// epsilon defaults to side/4 and must stay below side/2.
class TorusSpace final : public Space {
 public:
  explicit TorusSpace(double side = 1.0, double epsilon = 0.0);

  BackendKind kind() const override { return BackendKind::Torus; }
  double epsilon() const override { return epsilon_; }
  double side() const noexcept { return side_; }

  void validate(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  SegmentSamples sample_shortest_path(
      const Point& a, const Point& b,
      std::span<const double> fractions) const override;
  Eigen::Vector3d embed(const Point& p) const override;
  nlohmann::json point_to_json(const Point& p) const override;
  Point point_from_json(const nlohmann::json& j) const override;
  nlohmann::json describe() const override;

  // Reduces arbitrary real coordinates mod 1 into [0,1).
  static Point make_point(double u, double v);

  // Displacement (in fractional units) of the minimizing lift from a to b.
  // Throws NotUnique when two translates tie within 1e-12.
  Eigen::Vector2d lift_displacement(const TorusPoint& a,
                                    const TorusPoint& b) const;

 private:
  double side_;
  double epsilon_;
};

}  // namespace closedgeo
