#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "closedgeo/point.hpp"

namespace closedgeo {

// Discretized curve. Sample i sits at parameter t = i/m when closed and
// t = i/(m-1) when open; between samples the curve follows the unique
// shortest path of the owning space.
class PolyCurve {
 public:
  PolyCurve() = default;
  PolyCurve(std::vector<Point> points, bool closed);

  const std::vector<Point>& points() const noexcept { return points_; }
  bool closed() const noexcept { return closed_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  // Index arithmetic modulo m for closed curves.
  const Point& at_wrapped(std::ptrdiff_t i) const;

  // Number of gaps: m for closed, m-1 for open.
  std::size_t gap_count() const noexcept {
    return closed_ ? points_.size() : points_.size() - 1;
  }

  BackendKind backend() const { return backend_of(points_.front()); }

 private:
  std::vector<Point> points_;
  bool closed_ = true;
};

// A shortest path from source() to target().
struct OpenPath {
  std::vector<Point> points;
  double length = 0.0;

  const Point& source() const { return points.front(); }
  const Point& target() const { return points.back(); }
  PolyCurve as_curve() const { return PolyCurve(points, false); }
};

}  // namespace closedgeo
