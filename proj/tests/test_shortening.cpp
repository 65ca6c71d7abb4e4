#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"
#include "closedgeo/mesh/fixtures.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/shortening.hpp"
#include "random_curves.hpp"
#include "support.hpp"

using namespace closedgeo;
using namespace testing;

namespace {

PolyCurve torus_wiggle(int m, double amplitude = 0.1) {
  return sample_closed(m, [&](double t) {
    return TorusSpace::make_point(t, amplitude * std::sin(2 * kPi * t));
  });
}

// Segment of length L/2 along u traversed out and back: total length L.
PolyCurve torus_there_and_back(int m, double total) {
  return sample_closed(m, [&](double t) {
    const double s = t < 0.5 ? t : 1.0 - t;
    return TorusSpace::make_point(0.3 + total * s, 0.4);
  });
}

PolyCurve torus_circle(int m, double length) {
  const double r = length / (2 * kPi);
  return sample_closed(m, [&](double t) {
    return TorusSpace::make_point(0.5 + r * std::cos(2 * kPi * t),
                                  0.5 + r * std::sin(2 * kPi * t));
  });
}

// Smallest k >= 2 with f(k) < bound, f decreasing.
template <class F>
int smallest_k(F&& f, double bound) {
  int k = 2;
  while (!(f(k) < bound)) ++k;
  return k;
}

std::shared_ptr<const MeshSpace> icosphere_space() {
  MeshSpaceOptions o;
  o.epsilon = 0.5;
  return std::make_shared<const MeshSpace>(
      std::make_shared<const TriMesh>(fixtures::icosphere(2)), o);
}

template <class Gen>
void check_step_properties(const Space& space, Gen&& gen, int count) {
  std::mt19937_64 rng(0);
  const double eps = space.epsilon();
  for (int trial = 0; trial < count; ++trial) {
    const auto [c, k] = gen(rng);
    const auto d = birkhoff_step(space, c, k);
    CHECK(curve_length(space, d) <= curve_length(space, c) + 1e-12);
    CHECK(displacement(space, c, d) < eps);
    CHECK(lipschitz_bound(space, d, k) <=
          std::max(lipschitz_bound(space, c, k), k * eps / 2) + 1e-9);
  }
}

}  // namespace

TEST_CASE("choose_k on the equator with epsilon pi/2") {
  const SphereSpace s;
  // An equator arc of width 1/k has diameter 2pi/k (below pi).
  const int oracle = smallest_k([](int k) { return 2 * kPi / k; }, s.epsilon() / 2);
  CHECK(oracle == 9);
  const auto choice = choose_k(s, equator(64));
  CHECK(choice.k == oracle);
  CHECK(choice.curve.size() == 72);
  CHECK(choose_k(s, equator(144)).curve.size() == 144);
}

TEST_CASE("choose_k on short torus loops with epsilon 0.25") {
  const TorusSpace s(1.0, 0.25);
  // There and back: the widest window lies on one leg, diameter L/k.
  const int oracle_line = smallest_k([](int k) { return 0.4 / k; }, 0.125);
  CHECK(oracle_line == 4);
  CHECK(choose_k(s, torus_there_and_back(64, 0.4)).k == oracle_line);
  // Round circle: an arc of angle 2pi/k has diameter 2R sin(pi/k) (or 2R).
  const double r = 0.4 / (2 * kPi);
  const int oracle_circle = smallest_k(
      [&](int k) { return k == 2 ? 2 * r : 2 * r * std::sin(kPi / k); }, 0.125);
  CHECK(oracle_circle == 3);
  CHECK(choose_k(s, torus_circle(96, 0.4)).k == oracle_circle);
}

TEST_CASE("choose_k on a constant curve is 2") {
  const SphereSpace s;
  const auto c = sample_closed(16, [](double) { return SphereSpace::make_point({0, 0, 1}); });
  const auto choice = choose_k(s, c);
  CHECK(choice.k == 2);
  CHECK(choice.curve.size() == 16);
}

TEST_CASE("choose_k gives up past m_max") {
  const SphereSpace s;
  try {
    choose_k(s, equator(64), 4);
    FAIL("expected CannotSatisfy");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CannotSatisfy);
  }
}

TEST_CASE("birkhoff_step fixes the equator") {
  const SphereSpace s;
  const auto c = equator(144);
  const auto d = birkhoff_step(s, c, 9);
  CHECK(displacement(s, c, d) < 1e-9);
  CHECK(curve_length(s, d) == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("birkhoff_step on a latitude circle matches the spherical polygon oracle") {
  const SphereSpace s;
  const double theta = kPi / 4;
  const int k = 9;
  const auto c = latitude(theta, 144);
  const auto d = birkhoff_step(s, c, k);
  // Stage 1 yields the geodesic k-gon through latitude points 2pi/k apart;
  // stage 2 joins the midpoints of its sides, which sit at colatitude
  // theta' with cos theta' = cos theta / cos(side/2).
  const double side = std::acos(std::cos(theta) * std::cos(theta) +
                                std::sin(theta) * std::sin(theta) * std::cos(2 * kPi / k));
  const double theta2 = std::acos(std::cos(theta) / std::cos(side / 2));
  const double side2 = std::acos(std::cos(theta2) * std::cos(theta2) +
                                 std::sin(theta2) * std::sin(theta2) * std::cos(2 * kPi / k));
  CHECK(curve_length(s, d) == doctest::Approx(k * side2).epsilon(1e-9));
  CHECK(curve_length(s, d) < 2 * kPi * std::sin(theta));
}

TEST_CASE("birkhoff_step rejects the torus wiggle at k = 4") {
  const TorusSpace s(1.0, 0.25);
  const auto c = torus_wiggle(64);
  // A quarter of the wiggle spans more than epsilon/2 = 0.125 in u alone.
  CHECK_FALSE(windows_below(s, c, 4, 0.125));
  try {
    birkhoff_step(s, c, 4);
    FAIL("expected DiameterViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DiameterViolation);
  }
  CHECK(lipschitz_bound(s, c, 4) > 4 * 0.25 / 2);

  const auto choice = choose_k(s, c);
  const auto d = birkhoff_step(s, choice.curve, choice.k);
  CHECK(curve_length(s, d) < curve_length(s, choice.curve));
  CHECK(lipschitz_bound(s, choice.curve, choice.k) <= choice.k * 0.25 / 2);
}

TEST_CASE("birkhoff_step requires m divisible by 2k") {
  const SphereSpace s;
  CHECK_THROWS_AS(birkhoff_step(s, equator(64), 9), Error);
  CHECK_THROWS_AS(lipschitz_bound(s, equator(64), 9), Error);
}

TEST_CASE("lipschitz_bound examples") {
  const SphereSpace s;
  CHECK(lipschitz_bound(s, equator(144), 9) == doctest::Approx(2 * kPi).epsilon(1e-12));
  const auto c = sample_closed(36, [](double) { return SphereSpace::make_point({1, 0, 0}); });
  CHECK(lipschitz_bound(s, c, 9) == 0.0);
}

TEST_CASE("shorten_to_limit straightens the torus wiggle") {
  const TorusSpace s;
  ShorteningParams p;
  const auto r = shorten_to_limit(s, torus_wiggle(64), p);
  CHECK(r.trace.status == ShorteningStatus::Converged);
  CHECK(r.trace.lengths.back() == doctest::Approx(1.0).epsilon(1e-6));
  // The limit is a horizontal circle.
  double vmin = 1.0, vmax = 0.0;
  for (const auto& q : r.curve.points()) {
    const double v = std::get<TorusPoint>(q).v;
    const double vv = v > 0.5 ? v - 1.0 : v;
    vmin = std::min(vmin, vv);
    vmax = std::max(vmax, vv);
  }
  CHECK(vmax - vmin < 1e-5);
}

TEST_CASE("shorten_to_limit keeps the equator") {
  const SphereSpace s;
  const auto r = shorten_to_limit(s, equator(144), ShorteningParams{});
  CHECK(r.trace.status == ShorteningStatus::Converged);
  CHECK(r.trace.iterations() <= 2);
  CHECK(r.trace.lengths.back() == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("shorten_to_limit contracts a small latitude loop") {
  const SphereSpace s;
  const auto r = shorten_to_limit(s, latitude(0.1, 64), ShorteningParams{});
  CHECK(r.trace.status == ShorteningStatus::Converged);
  CHECK(r.trace.lengths.back() < s.epsilon());
  CHECK(r.trace.lengths.back() < 1e-6);
}

TEST_CASE("shortening traces are non-increasing and serialize to CSV") {
  const TorusSpace s;
  ShorteningParams p;
  p.max_iter = 5;
  const auto r = shorten_to_limit(s, torus_wiggle(64), p);
  CHECK(r.trace.status == ShorteningStatus::MaxIter);
  CHECK(r.trace.iterations() == 5);
  for (std::size_t i = 1; i < r.trace.lengths.size(); ++i) {
    CHECK(r.trace.lengths[i] <= r.trace.lengths[i - 1] + 1e-12);
  }
  std::ostringstream csv;
  write_trace_csv(csv, r.trace);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "iteration,length,sup_move");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("shorten_to_limit raises k when the curve is coarse for params.k") {
  const SphereSpace s;
  ShorteningParams p;
  p.k = 3;
  const auto r = shorten_to_limit(s, equator(144), p);
  CHECK(r.trace.k == 9);
  p.k = 12;
  CHECK(shorten_to_limit(s, equator(144), p).trace.k == 12);
}

TEST_CASE("birkhoff_step properties on random sphere curves") {
  const SphereSpace s;
  check_step_properties(s, [](auto& rng) { return random_sphere_curve(rng); }, 100);
}

TEST_CASE("birkhoff_step properties on random torus curves") {
  const TorusSpace s;
  check_step_properties(s, [](auto& rng) { return random_torus_curve(rng); }, 100);
}

TEST_CASE("birkhoff_step properties on random icosphere curves") {
  const auto s = icosphere_space();
  check_step_properties(*s, [&](auto& rng) { return random_mesh_curve(*s, rng); }, 100);
}
