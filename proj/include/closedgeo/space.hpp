#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "closedgeo/curve.hpp"
#include "closedgeo/point.hpp"

namespace closedgeo {

// Points sampled along the unique shortest path between two endpoints.
struct SegmentSamples {
  std::vector<Point> points;
  double length = 0.0;
};

// A compact geodesic space that is epsilon-locally uniquely geodesic: any
// two points at distance <= epsilon() are joined by exactly one shortest
// path. Implementations are immutable after construction and safe to share
// between threads.
class Space {
 public:
  virtual ~Space() = default;

  virtual BackendKind kind() const = 0;
  virtual std::string_view name() const { return backend_name(kind()); }
  virtual double epsilon() const = 0;
  virtual int dimension_hint() const { return 2; }

  // Throws InvalidPoint when the coordinates violate the backend invariants
  // and MixedBackends when the point belongs to another backend.
  virtual void validate(const Point& p) const = 0;

  virtual double distance(const Point& a, const Point& b) const = 0;

  // Samples the shortest path from a to b at the given arc-length fractions
  // in [0,1]. Throws TooFar when d(a,b) > epsilon().
  virtual SegmentSamples sample_shortest_path(
      const Point& a, const Point& b, std::span<const double> fractions) const = 0;

  // Position in R^3 used for polyline export.
  virtual Eigen::Vector3d embed(const Point& p) const = 0;

  virtual nlohmann::json point_to_json(const Point& p) const = 0;
  virtual Point point_from_json(const nlohmann::json& j) const = 0;

  // Parameters echoed into reports.
  virtual nlohmann::json describe() const = 0;

 protected:
  void require_kind(const Point& p, std::string_view where) const;
};

// Free-function forms of the space contract.
double distance(const Space& space, const Point& a, const Point& b);

// Equally spaced samples (samples >= 2) along the unique shortest path.
OpenPath shortest_path(const Space& space, const Point& a, const Point& b,
                       int samples);

}  // namespace closedgeo
