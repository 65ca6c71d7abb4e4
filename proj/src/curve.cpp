#include "closedgeo/curve.hpp"

#include <string>

#include "closedgeo/error.hpp"

namespace closedgeo {

std::string_view backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::Sphere: return "sphere";
    case BackendKind::Torus: return "torus";
    case BackendKind::Mesh: return "mesh";
  }
  return "unknown";
}

bool same_coordinates(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& pa) -> bool {
        using T = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<T>(b);
        if constexpr (std::is_same_v<T, SpherePoint>) {
          return pa.x == pb.x;
        } else if constexpr (std::is_same_v<T, TorusPoint>) {
          return pa.u == pb.u && pa.v == pb.v;
        } else {
          return pa.face == pb.face && pa.bary == pb.bary;
        }
      },
      a);
}

PolyCurve::PolyCurve(std::vector<Point> points, bool closed)
    : points_(std::move(points)), closed_(closed) {
  const std::size_t min_size = closed_ ? 3 : 2;
  if (points_.size() < min_size) {
    raise(ErrorKind::InvalidCurve, "space-core/PolyCurve",
          "need at least " + std::to_string(min_size) + " points, got " +
              std::to_string(points_.size()));
  }
  const auto tag = points_.front().index();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].index() != tag) {
      raise(ErrorKind::MixedBackends, "space-core/PolyCurve",
            "point " + std::to_string(i) + " belongs to a different backend");
    }
  }
}

const Point& PolyCurve::at_wrapped(std::ptrdiff_t i) const {
  const auto m = static_cast<std::ptrdiff_t>(points_.size());
  return points_[static_cast<std::size_t>(((i % m) + m) % m)];
}

}  // namespace closedgeo
