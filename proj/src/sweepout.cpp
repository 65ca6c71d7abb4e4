#include "closedgeo/sweepout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "closedgeo/analytic.hpp"
#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/parallel.hpp"

namespace closedgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_distance(const Space& space, const Point& a, const Point& b) {
  try {
    return space.distance(a, b);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TooFar || e.kind() == ErrorKind::NotUnique) return kInf;
    throw;
  }
}

int next_multiple(int value, int step) { return (value + step - 1) / step * step; }

PolyCurve constant_curve(const Point& p, int m) {
  return PolyCurve(std::vector<Point>(static_cast<std::size_t>(m), p), true);
}

// Index of the largest entry; ties go to the lowest index.
int argmax(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

Eigen::VectorXd foliation_circle(int n, std::span<const double> x, double t) {
  constexpr std::string_view where = "sweepout/foliation_circle";
  if (n < 1 || static_cast<int>(x.size()) != n - 1) {
    raise(ErrorKind::InvalidPoint, where,
          "base parameter needs n-1 = " + std::to_string(n - 1) + " entries");
  }
  double sq = 0.0;
  for (double xi : x) sq += xi * xi;
  if (sq > 1.0 + 1e-12) {
    raise(ErrorKind::OutsideDisk, where,
          "|x|^2 = " + std::to_string(sq) + " exceeds 1");
  }
  const double r = std::sqrt(std::max(0.0, 1.0 - sq));
  const double a = 2.0 * std::numbers::pi * t;
  Eigen::VectorXd out(n + 1);
  for (int i = 0; i < n - 1; ++i) out[i] = x[i];
  out[n - 1] = r * std::sin(a);
  out[n] = r * std::cos(a);
  return out;
}

std::vector<std::vector<int>> base_lattice(int n, int grid_res) {
  if (n < 1 || grid_res < 1 || grid_res % 2 != 0) {
    raise(ErrorKind::ConfigError, "sweepout/build_family",
          "need n >= 1 and a positive even grid_res");
  }
  const int half = grid_res / 2;
  const int dims = n - 1;
  std::vector<std::vector<int>> out;
  std::vector<int> idx(dims, -half);
  while (true) {
    long sq = 0;
    for (int v : idx) sq += static_cast<long>(v) * v;
    if (sq <= static_cast<long>(half) * half) out.push_back(idx);
    int d = dims - 1;
    while (d >= 0 && idx[d] == half) idx[d--] = -half;
    if (d < 0) break;
    ++idx[d];
  }
  return out;
}

std::vector<double> lattice_point(std::span<const int> index, int grid_res) {
  std::vector<double> x;
  x.reserve(index.size());
  for (int i : index) x.push_back(2.0 * i / grid_res);
  return x;
}

std::vector<std::pair<int, int>> SweepFamily::neighbors() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = a + 1; b < lattice.size(); ++b) {
      int steps = 0;
      for (std::size_t d = 0; d < lattice[a].size(); ++d) {
        steps += std::abs(lattice[a][d] - lattice[b][d]);
      }
      if (steps == 1) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return out;
}

SweepFamily build_family(const Space& space, const SweepMap& f, int n,
                         int grid_res, int m, double r_min) {
  constexpr std::string_view where = "sweepout/build_family";
  if (m < 3) raise(ErrorKind::ConfigError, where, "m must be >= 3");
  SweepFamily fam;
  fam.n = n;
  fam.grid_res = grid_res;
  fam.r_min = r_min;
  fam.lattice = base_lattice(n, grid_res);
  const double half_eps = 0.5 * space.epsilon();
  for (const auto& idx : fam.lattice) {
    auto x = lattice_point(idx, grid_res);
    double sq = 0.0;
    for (double xi : x) sq += xi * xi;
    const bool degenerate = std::sqrt(std::max(0.0, 1.0 - sq)) < r_min;
    PolyCurve curve;
    if (degenerate) {
      curve = constant_curve(f(foliation_circle(n, x, 0.0)), m);
    } else {
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        pts.push_back(f(foliation_circle(n, x, static_cast<double>(i) / m)));
      }
      curve = PolyCurve(std::move(pts), true);
      for (int i = 0; i < m; ++i) {
        space.validate(curve[i]);
        const double d = safe_distance(space, curve[i], curve.at_wrapped(i + 1));
        if (!(d <= half_eps)) {
          raise(ErrorKind::ContinuityViolation, where,
                "samples " + std::to_string(i) + " and " + std::to_string((i + 1) % m) +
                    " of grid point " + std::to_string(fam.curves.size()) +
                    " are more than epsilon/2 apart; try doubling m or grid_res");
        }
      }
    }
    fam.grid.push_back(std::move(x));
    fam.curves.push_back(std::move(curve));
    fam.degenerate.push_back(degenerate);
  }
  return fam;
}

double max_base_point_jump(const Space& space, const SweepFamily& family) {
  double worst = 0.0;
  for (const auto& [a, b] : family.neighbors()) {
    worst = std::max(worst, safe_distance(space, family.curves[a][0], family.curves[b][0]));
  }
  return worst;
}

CertificationResult certify_geodesic(const Space& space, const PolyCurve& c,
                                     double tol, double window) {
  constexpr std::string_view where = "sweepout/certify_geodesic";
  if (!c.closed()) raise(ErrorKind::InvalidCurve, where, "curve must be closed");
  CertificationResult out;
  out.tol = tol;
  const auto gaps = gap_lengths(space, c);
  double length = 0.0;
  for (double g : gaps) length += g;
  const int m = static_cast<int>(c.size());
  if (window <= 0.0) {
    window = length > 0.0 ? std::min(space.epsilon() / (2.0 * length), 0.125) : 0.125;
  }
  const int w = std::clamp(static_cast<int>(std::floor(window * m)), 1, m - 1);
  out.window = static_cast<double>(w) / m;
  out.window_samples = w;
  std::vector<double> prefix(2 * m + 1, 0.0);
  for (int i = 0; i < 2 * m; ++i) prefix[i + 1] = prefix[i] + gaps[i % m];
  for (int s = 0; s < m; ++s) {
    const double arc = prefix[s + w] - prefix[s];
    if (arc > space.epsilon()) {
      raise(ErrorKind::WindowTooWide, where,
            "window of " + std::to_string(w) + " samples spans arc length " +
                std::to_string(arc) + " > epsilon");
    }
    if (arc <= 0.0) continue;
    const double d = space.distance(c[s], c.at_wrapped(s + w));
    const double defect = (arc - d) / arc;
    if (defect > out.max_defect) {
      out.max_defect = defect;
      out.worst_index = s;
    }
  }
  out.passed = out.max_defect < tol;
  return out;
}

std::string_view to_string(MinimaxStatus status) {
  switch (status) {
    case MinimaxStatus::Converged: return "Converged";
    case MinimaxStatus::MaxIter: return "MaxIter";
    case MinimaxStatus::FamilyCollapsed: return "FamilyCollapsed";
  }
  return "Unknown";
}

MinimaxReport minimax_evaluate(const Space& space, const SweepFamily& family,
                               const ShorteningParams& params,
                               const MinimaxOptions& options) {
  constexpr std::string_view where = "sweepout/minimax_run";
  if (family.curves.empty()) raise(ErrorKind::InvalidCurve, where, "empty family");
  const std::size_t count = family.size();
  const double eps = space.epsilon();
  const double tol_move = params.move_tolerance(space);

  // One k for the whole family.
  std::vector<int> ks(count, params.k);
  parallel_for(count, [&](std::size_t i) {
    if (!family.degenerate[i]) ks[i] = choose_k(space, family.curves[i], params.m_max, params.k).k;
  }, options.threads);
  int k = *std::max_element(ks.begin(), ks.end());
  const int m_in = static_cast<int>(family.curves.front().size());
  std::vector<PolyCurve> curves(count);
  int m = 0;
  while (true) {
    if (k > params.m_max) {
      raise(ErrorKind::CannotSatisfy, where,
            "no common k <= " + std::to_string(params.m_max) + " fits the family");
    }
    m = next_multiple(std::max(m_in, 8 * k), 2 * k);
    std::vector<char> ok(count, 1);
    parallel_for(count, [&](std::size_t i) {
      if (family.degenerate[i]) {
        curves[i] = constant_curve(family.curves[i][0], m);
        return;
      }
      curves[i] = resample_constant_speed(space, family.curves[i], m);
      ok[i] = windows_below(space, curves[i], k, 0.5 * eps * (1.0 - 1e-12));
    }, options.threads);
    if (std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; })) break;
    ++k;
  }

  MinimaxReport r;
  r.k = k;
  r.m = m;
  r.epsilon = eps;
  std::vector<double> lengths(count, 0.0);
  auto measure = [&] {
    parallel_for(count, [&](std::size_t i) {
      lengths[i] = family.degenerate[i] ? 0.0 : curve_length(space, curves[i]);
    }, options.threads);
  };
  measure();
  r.argmax_index = argmax(lengths);
  r.c_seq.push_back(lengths[r.argmax_index]);
  r.argmax_seq.push_back(r.argmax_index);

  if (r.c_seq.back() < eps) {
    r.status = MinimaxStatus::FamilyCollapsed;
    r.collapsed_at = 0;
  } else {
    std::vector<PolyCurve> next(count);
    for (int iter = 1; iter <= options.max_sweep_iters; ++iter) {
      parallel_for(count, [&](std::size_t i) {
        if (family.degenerate[i]) {
          next[i] = curves[i];
          return;
        }
        next[i] = resample_constant_speed(space, birkhoff_step(space, curves[i], k), m);
      }, options.threads);
      if (iter == 1) {
        std::vector<double> lips(count, 0.0);
        parallel_for(count, [&](std::size_t i) {
          lips[i] = lipschitz_bound(space, next[i], k);
        }, options.threads);
        r.lipschitz_after_first = *std::max_element(lips.begin(), lips.end());
      }
      std::swap(curves, next);
      measure();
      const double prev = r.c_seq.back();
      r.argmax_index = argmax(lengths);
      r.c_seq.push_back(lengths[r.argmax_index]);
      r.argmax_seq.push_back(r.argmax_index);
      const double move = displacement(space, next[r.argmax_index], curves[r.argmax_index]);
      r.argmax_moves.push_back(move);
      r.iterations = iter;
      if (r.c_seq.back() < eps) {
        r.status = MinimaxStatus::FamilyCollapsed;
        r.collapsed_at = iter;
        break;
      }
      const double rel = prev > 0.0 ? std::abs(prev - r.c_seq.back()) / prev : 0.0;
      if (rel < params.tol_length && move < tol_move) {
        r.status = MinimaxStatus::Converged;
        break;
      }
    }
  }

  r.candidate = curves[r.argmax_index];
  r.candidate_length = lengths[r.argmax_index];
  r.epsilon_check = r.c_seq.back() >= eps;
  if (r.status != MinimaxStatus::FamilyCollapsed) {
    r.certified = certify_geodesic(space, r.candidate, options.certify_tol);
  } else {
    r.certified.tol = options.certify_tol;
  }
  return r;
}

MinimaxReport minimax_run(const Space& space, const SweepFamily& family,
                          const ShorteningParams& params, const MinimaxOptions& options) {
  auto r = minimax_evaluate(space, family, params, options);
  if (r.status == MinimaxStatus::FamilyCollapsed) {
    raise(ErrorKind::FamilyCollapsed, "sweepout/minimax_run",
          "every curve is shorter than epsilon at iteration " +
              std::to_string(r.collapsed_at) + " (c = " + std::to_string(r.c_seq.back()) +
              "); the sweep-out is null-homotopic or the grid too coarse");
  }
  return r;
}

bool SystoleResult::any_converged() const {
  return std::any_of(seeds.begin(), seeds.end(), [](const SeedOutcome& s) {
    return s.status == ShorteningStatus::Converged;
  });
}

SystoleResult systole_evaluate(const Space& space, const std::vector<PolyCurve>& seeds,
                               const ShorteningParams& params, double certify_tol,
                               unsigned threads) {
  SystoleResult r;
  r.seeds.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    auto res = shorten_to_limit(space, seeds[i], params);
    auto& s = r.seeds[i];
    s.status = res.trace.status;
    s.length = res.trace.lengths.back();
    s.k = res.trace.k;
    s.m = res.trace.m;
    s.iterations = res.trace.iterations();
    s.curve = std::move(res.curve);
    s.trace = std::move(res.trace);
  }, threads);
  r.certified.tol = certify_tol;
  for (std::size_t i = 0; i < r.seeds.size(); ++i) {
    const auto& s = r.seeds[i];
    if (s.status != ShorteningStatus::Converged) continue;
    if (s.length < space.epsilon()) {
      r.warnings.push_back("ContractibleSeed: seed " + std::to_string(i) +
                           " shrank to length " + std::to_string(s.length) +
                           " < epsilon and is excluded");
      continue;
    }
    if (!r.best || s.length < r.seeds[*r.best].length) r.best = static_cast<int>(i);
  }
  if (r.best) {
    r.curve = r.seeds[*r.best].curve;
    r.length = r.seeds[*r.best].length;
    r.certified = certify_geodesic(space, r.curve, certify_tol);
  }
  return r;
}

SystoleResult systole_search(const Space& space, const std::vector<PolyCurve>& seeds,
                             const ShorteningParams& params, double certify_tol,
                             unsigned threads) {
  auto r = systole_evaluate(space, seeds, params, certify_tol, threads);
  if (!r.any_converged()) {
    raise(ErrorKind::NoneConverged, "sweepout/systole_search",
          "none of the " + std::to_string(seeds.size()) + " seeds converged");
  }
  return r;
}

nlohmann::json to_json(const CertificationResult& c) {
  return {{"passed", c.passed},
          {"max_defect", c.max_defect},
          {"window", c.window},
          {"window_samples", c.window_samples},
          {"tol", c.tol},
          {"worst_index", c.worst_index}};
}

nlohmann::json to_json(const ShorteningTrace& t) {
  return {{"status", std::string(to_string(t.status))},
          {"k", t.k},
          {"m", t.m},
          {"iterations", t.iterations()},
          {"lengths", t.lengths},
          {"moves", t.moves}};
}

nlohmann::json to_json(const Space& space, const MinimaxReport& r) {
  return {{"status", std::string(to_string(r.status))},
          {"c_seq", r.c_seq},
          {"argmax_seq", r.argmax_seq},
          {"argmax_moves", r.argmax_moves},
          {"argmax_index", r.argmax_index},
          {"iterations", r.iterations},
          {"collapsed_at", r.collapsed_at},
          {"k", r.k},
          {"m", r.m},
          {"epsilon", r.epsilon},
          {"lipschitz_after_first", r.lipschitz_after_first},
          {"lipschitz_limit", r.k * r.epsilon / 2.0},
          {"candidate_length", r.candidate_length},
          {"candidate", curve_to_json(space, r.candidate)},
          {"certified", to_json(r.certified)},
          {"epsilon_check", r.epsilon_check}};
}

nlohmann::json to_json(const Space& space, const SystoleResult& r) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : r.seeds) {
    seeds.push_back({{"status", std::string(to_string(s.status))},
                     {"length", s.length},
                     {"k", s.k},
                     {"m", s.m},
                     {"iterations", s.iterations}});
  }
  nlohmann::json out = {{"seeds", seeds},
                        {"warnings", r.warnings},
                        {"found", r.best.has_value()}};
  if (r.best) {
    out["best_seed"] = *r.best;
    out["length"] = r.length;
    out["candidate"] = curve_to_json(space, r.curve);
    out["certified"] = to_json(r.certified);
  } else {
    out["best_seed"] = nullptr;
  }
  return out;
}

void write_c_seq_csv(std::ostream& out, const MinimaxReport& r) {
  const auto old = out.precision(17);
  out << "iteration,c,argmax,argmax_move\n";
  for (std::size_t i = 0; i < r.c_seq.size(); ++i) {
    out << i << ',' << r.c_seq[i] << ',' << r.argmax_seq[i] << ',';
    if (i > 0) out << r.argmax_moves[i - 1];
    out << '\n';
  }
  out.precision(old);
}

SweepMap identity_map() {
  return [](const Eigen::VectorXd& u) {
    return SphereSpace::make_point(Eigen::Vector3d(u[0], u[1], u[2]));
  };
}

SweepMap rotation_map(const Eigen::Matrix3d& rotation) {
  return [rotation](const Eigen::VectorXd& u) {
    return SphereSpace::make_point(rotation * Eigen::Vector3d(u[0], u[1], u[2]));
  };
}

SweepMap nearest_mesh_map(const MeshSpace& space, const Eigen::Matrix3d& rotation) {
  return [&space, rotation](const Eigen::VectorXd& u) {
    return Point(space.project(rotation * Eigen::Vector3d(u[0], u[1], u[2])));
  };
}

SweepMap cap_map(const Space& space, const Point& center, double radius) {
  switch (space.kind()) {
    case BackendKind::Sphere: {
      const Eigen::Vector3d c = std::get<SpherePoint>(center).x;
      const double s = std::tan(radius);
      return [c, s](const Eigen::VectorXd& u) {
        const Eigen::Vector3d v(u[0], u[1], u[2]);
        return SphereSpace::make_point(c + s * (v - v.dot(c) * c));
      };
    }
    case BackendKind::Torus: {
      const auto c = std::get<TorusPoint>(center);
      const double s = radius / static_cast<const TorusSpace&>(space).side();
      return [c, s](const Eigen::VectorXd& u) {
        return TorusSpace::make_point(c.u + s * u[0], c.v + s * u[1]);
      };
    }
    case BackendKind::Mesh: {
      const auto& ms = static_cast<const MeshSpace&>(space);
      const Eigen::Vector3d c = ms.embed(center);
      return [&ms, c, radius](const Eigen::VectorXd& u) {
        return Point(ms.project(c + radius * Eigen::Vector3d(u[0], u[1], u[2])));
      };
    }
  }
  raise(ErrorKind::ConfigError, "sweepout/cap_map", "unknown backend");
}

}  // namespace closedgeo
