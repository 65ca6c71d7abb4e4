#include "closedgeo/space.hpp"

#include <string>

#include "closedgeo/error.hpp"

namespace closedgeo {

void Space::require_kind(const Point& p, std::string_view where) const {
  if (backend_of(p) != kind()) {
    raise(ErrorKind::MixedBackends, where,
          "point of backend '" + std::string(backend_name(backend_of(p))) +
              "' passed to backend '" + std::string(name()) + "'");
  }
}

double distance(const Space& space, const Point& a, const Point& b) {
  return space.distance(a, b);
}

OpenPath shortest_path(const Space& space, const Point& a, const Point& b,
                       int samples) {
  if (samples < 2) {
    raise(ErrorKind::InvalidCurve, "space-core/shortest_path",
          "samples must be >= 2, got " + std::to_string(samples));
  }
  std::vector<double> fractions(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    fractions[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  auto seg = space.sample_shortest_path(a, b, fractions);
  // Endpoints are the inputs, bit for bit.
  seg.points.front() = a;
  seg.points.back() = b;
  return OpenPath{std::move(seg.points), seg.length};
}

}  // namespace closedgeo
