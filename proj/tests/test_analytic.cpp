#include <doctest.h>

#include <cmath>

#include "closedgeo/analytic.hpp"
#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"
#include "support.hpp"

using namespace closedgeo;
using namespace testing;

namespace {

ErrorKind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("sphere examples") {
  const SphereSpace s;
  CHECK(s.epsilon() == doctest::Approx(kPi / 2));
  CHECK(error_kind([&] {
          s.distance(SphereSpace::make_point({1, 0, 0}), SphereSpace::make_point({-1, 0, 0}));
        }) == ErrorKind::NotUnique);
  CHECK(s.distance(SphereSpace::make_point({0, 0, 1}),
                   SphereSpace::make_point({0, std::sin(1.0), std::cos(1.0)})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto mid = shortest_path(s, SphereSpace::make_point({1, 0, 0}),
                                 SphereSpace::make_point({0, 1, 0}), 3);
  const double h = std::sqrt(0.5);
  CHECK((std::get<SpherePoint>(mid.points[1]).x - Eigen::Vector3d(h, h, 0)).norm() < 1e-15);
}

TEST_CASE("sphere radius scales distances and the default epsilon") {
  const SphereSpace s(2.0);
  CHECK(s.epsilon() == doctest::Approx(kPi));
  CHECK(s.distance(SphereSpace::make_point({0, 0, 1}), SphereSpace::make_point({1, 0, 0})) ==
        doctest::Approx(kPi).epsilon(1e-15));
  CHECK(s.embed(SphereSpace::make_point({0, 0, 1})).z() == doctest::Approx(2.0));
}

TEST_CASE("backend parameter validation") {
  CHECK(error_kind([] { SphereSpace(1.0, kPi); }) == ErrorKind::ConfigError);
  CHECK(error_kind([] { SphereSpace(-1.0); }) == ErrorKind::ConfigError);
  CHECK(error_kind([] { TorusSpace(1.0, 0.5); }) == ErrorKind::ConfigError);
  CHECK(error_kind([] { TorusSpace(0.0); }) == ErrorKind::ConfigError);
  CHECK(TorusSpace().epsilon() == 0.25);
  CHECK(TorusSpace(2.0).epsilon() == 0.5);
}

TEST_CASE("point validation") {
  const SphereSpace s;
  const TorusSpace t;
  CHECK(error_kind([&] { s.validate(SpherePoint{Eigen::Vector3d(1, 1, 0)}); }) ==
        ErrorKind::InvalidPoint);
  CHECK_NOTHROW(s.validate(SphereSpace::make_point({1, 1, 0})));
  CHECK(error_kind([&] { t.validate(TorusPoint{1.0, 0.2}); }) == ErrorKind::InvalidPoint);
  CHECK(error_kind([&] { t.validate(TorusPoint{0.5, -0.1}); }) == ErrorKind::InvalidPoint);
  const auto wrapped = std::get<TorusPoint>(TorusSpace::make_point(-0.25, 3.5));
  CHECK(wrapped.u == doctest::Approx(0.75));
  CHECK(wrapped.v == doctest::Approx(0.5));
  CHECK_NOTHROW(t.validate(TorusSpace::make_point(-1e-18, 0.999999999999999999)));
}

TEST_CASE("torus examples") {
  const TorusSpace t;
  CHECK(error_kind([&] {
          t.distance(TorusSpace::make_point(0, 0), TorusSpace::make_point(0.5, 0.5));
        }) == ErrorKind::NotUnique);
  CHECK(t.distance(TorusSpace::make_point(0.1, 0.1), TorusSpace::make_point(0.2, 0.3)) ==
        doctest::Approx(std::sqrt(0.05)).epsilon(1e-12));
  const auto path =
      shortest_path(t, TorusSpace::make_point(0.95, 0), TorusSpace::make_point(0.05, 0), 3);
  CHECK(t.distance(path.points[1], TorusSpace::make_point(0, 0)) < 1e-12);
  CHECK(path.length == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("sphere shortest paths realize the distance") {
  const SphereSpace s;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> mdist(2, 64);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = SphereSpace::make_point(random_unit(rng));
    const auto b = SphereSpace::make_point(
        random_at_angle(rng, std::get<SpherePoint>(a).x, u(rng) * s.epsilon()));
    const int m = mdist(rng);
    const auto path = shortest_path(s, a, b, m);
    CHECK(std::abs(curve_length(s, path.as_curve()) - s.distance(a, b)) <= 1e-12 * m);
  }
}

TEST_CASE("torus distance is translation invariant") {
  const TorusSpace t;
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double au = u(rng), av = u(rng), bu = u(rng), bv = u(rng);
    const double su = u(rng), sv = u(rng);
    const double d = t.distance(TorusSpace::make_point(au, av), TorusSpace::make_point(bu, bv));
    const double ds = t.distance(TorusSpace::make_point(au + su, av + sv),
                                 TorusSpace::make_point(bu + su, bv + sv));
    CHECK(std::abs(d - ds) <= 1e-12);
  }
}

TEST_CASE("torus of side 2 scales lengths") {
  const TorusSpace t(2.0);
  CHECK(t.distance(TorusSpace::make_point(0, 0), TorusSpace::make_point(0.9, 0)) ==
        doctest::Approx(0.2).epsilon(1e-12));
  const auto loop = sample_closed(10, [](double s) { return TorusSpace::make_point(s, 0.2); });
  CHECK(curve_length(t, loop) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("point JSON round trips") {
  const SphereSpace s;
  const TorusSpace t;
  const auto p = SphereSpace::make_point({0.3, -0.4, 0.5});
  CHECK(s.distance(s.point_from_json(s.point_to_json(p)), p) < 1e-15);
  const auto q = TorusSpace::make_point(0.125, 0.75);
  CHECK(same_coordinates(t.point_from_json(t.point_to_json(q)), q));
  CHECK(s.describe()["name"] == "sphere");
  CHECK(t.describe()["epsilon"] == 0.25);
}
