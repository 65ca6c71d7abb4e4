#include "closedgeo/curve_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "closedgeo/error.hpp"

namespace closedgeo {

std::vector<double> gap_lengths(const Space& space, const PolyCurve& c) {
  const std::size_t gaps = c.gap_count();
  std::vector<double> out(gaps);
  for (std::size_t i = 0; i < gaps; ++i) {
    out[i] = space.distance(c[i], c[(i + 1) % c.size()]);
  }
  return out;
}

double curve_length(const Space& space, const PolyCurve& c) {
  double total = 0.0;
  for (double g : gap_lengths(space, c)) total += g;
  return total;
}

void validate_curve(const Space& space, const PolyCurve& c) {
  for (const auto& p : c.points()) space.validate(p);
  const auto gaps = gap_lengths(space, c);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] < space.epsilon())) {
      raise(ErrorKind::GapTooWide, "space-core/validate_curve",
            "gap " + std::to_string(i) + " has length " +
                std::to_string(gaps[i]) + " >= epsilon " +
                std::to_string(space.epsilon()));
    }
  }
}

PolyCurve resample_constant_speed(const Space& space, const PolyCurve& c,
                                  int m_out) {
  const int m_min = c.closed() ? 3 : 2;
  if (m_out < m_min) {
    raise(ErrorKind::InvalidCurve, "space-core/resample_constant_speed",
          "m_out must be >= " + std::to_string(m_min));
  }
  const auto gaps = gap_lengths(space, c);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] < space.epsilon())) {
      raise(ErrorKind::GapTooWide, "space-core/resample_constant_speed",
            "gap " + std::to_string(i) + " has length " +
                std::to_string(gaps[i]) + " >= epsilon");
    }
  }
  std::vector<double> cum(gaps.size() + 1, 0.0);
  for (std::size_t i = 0; i < gaps.size(); ++i) cum[i + 1] = cum[i] + gaps[i];
  const double total = cum.back();

  const auto n_out = static_cast<std::size_t>(m_out);
  std::vector<Point> out(n_out, c[0]);
  if (total <= 0.0) return PolyCurve(std::move(out), c.closed());

  const double divisions = c.closed() ? m_out : m_out - 1;
  // Targets grouped by the gap that contains them.
  std::vector<std::vector<std::pair<std::size_t, double>>> per_gap(gaps.size());
  std::size_t seg = 0;
  for (std::size_t j = 1; j < n_out; ++j) {
    if (!c.closed() && j + 1 == n_out) {
      out[j] = c.points().back();
      break;
    }
    const double s = total * static_cast<double>(j) / divisions;
    while (seg + 1 < gaps.size() && cum[seg + 1] <= s) ++seg;
    const double local = s - cum[seg];
    if (local <= 0.0 || gaps[seg] <= 0.0) {
      out[j] = c[seg];
      continue;
    }
    per_gap[seg].emplace_back(j, std::min(1.0, local / gaps[seg]));
  }
  std::vector<double> fractions;
  for (std::size_t g = 0; g < per_gap.size(); ++g) {
    if (per_gap[g].empty()) continue;
    fractions.clear();
    for (const auto& [idx, f] : per_gap[g]) fractions.push_back(f);
    auto samples =
        space.sample_shortest_path(c[g], c[(g + 1) % c.size()], fractions);
    for (std::size_t q = 0; q < per_gap[g].size(); ++q) {
      out[per_gap[g][q].first] = std::move(samples.points[q]);
    }
  }
  return PolyCurve(std::move(out), c.closed());
}

double sup_distance(const Space& space, const PolyCurve& a, const PolyCurve& b) {
  if (a.size() != b.size()) {
    raise(ErrorKind::InvalidCurve, "space-core/sup_distance",
          "curves differ in sample count");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, space.distance(a[i], b[i]));
  }
  return worst;
}

std::vector<OpenPath> contraction_paths(const Space& space, const PolyCurve& c,
                                        int samples) {
  std::vector<OpenPath> paths;
  paths.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    paths.push_back(shortest_path(space, c[0], c[i], samples));
  }
  return paths;
}

nlohmann::json curve_to_json(const Space& space, const PolyCurve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points()) pts.push_back(space.point_to_json(p));
  return {{"backend", std::string(space.name())},
          {"closed", c.closed()},
          {"points", std::move(pts)}};
}

PolyCurve curve_from_json(const Space& space, const nlohmann::json& j) {
  constexpr std::string_view where = "space-core/curve_from_json";
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    raise(ErrorKind::ParseError, where, "curve document needs a 'points' array");
  }
  if (j.contains("backend") && j["backend"].get<std::string>() != space.name()) {
    raise(ErrorKind::MixedBackends, where,
          "curve backend '" + j["backend"].get<std::string>() +
              "' does not match '" + std::string(space.name()) + "'");
  }
  const bool closed = j.value("closed", true);
  std::vector<Point> pts;
  for (const auto& p : j["points"]) pts.push_back(space.point_from_json(p));
  PolyCurve c(std::move(pts), closed);
  for (const auto& p : c.points()) space.validate(p);
  return c;
}

}  // namespace closedgeo
