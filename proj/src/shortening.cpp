#include "closedgeo/shortening.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMargin = 1e-12;

bool out_of_range(const Error& e) {
  return e.kind() == ErrorKind::TooFar || e.kind() == ErrorKind::NotUnique;
}

double safe_distance(const Space& space, const Point& a, const Point& b) {
  try {
    return space.distance(a, b);
  } catch (const Error& e) {
    if (out_of_range(e)) return kInf;
    throw;
  }
}

void require_closed(const PolyCurve& c, std::string_view where) {
  if (!c.closed()) raise(ErrorKind::InvalidCurve, where, "curve must be closed");
}

int window_samples(std::size_t m, int k) {
  return std::max(1, static_cast<int>(m / static_cast<std::size_t>(k)));
}

// Diameter of the window starting at j, or a value >= bound once it is
// known to reach the bound.
double window_diameter(const Space& space, const PolyCurve& c, int j, int w,
                       double bound) {
  double diam = 0.0;
  for (int a = 0; a <= w; ++a) {
    for (int b = a + 1; b <= w; ++b) {
      diam = std::max(diam, safe_distance(space, c.at_wrapped(j + a), c.at_wrapped(j + b)));
      if (diam >= bound) return diam;
    }
  }
  return diam;
}

int next_multiple(int value, int step) { return (value + step - 1) / step * step; }

}  // namespace

std::string_view to_string(ShorteningStatus status) {
  switch (status) {
    case ShorteningStatus::Converged: return "Converged";
    case ShorteningStatus::MaxIter: return "MaxIter";
    case ShorteningStatus::DiameterViolation: return "DiameterViolation";
  }
  return "Unknown";
}

void write_trace_csv(std::ostream& out, const ShorteningTrace& trace) {
  const auto old = out.precision(17);
  out << "iteration,length,sup_move\n";
  for (std::size_t i = 0; i < trace.lengths.size(); ++i) {
    out << i << ',' << trace.lengths[i] << ',';
    if (i > 0) out << trace.moves[i - 1];
    out << '\n';
  }
  out.precision(old);
}

bool windows_below(const Space& space, const PolyCurve& c, int k, double bound) {
  const int m = static_cast<int>(c.size());
  const int w = window_samples(c.size(), k);
  std::vector<double> gaps(c.size());
  for (int i = 0; i < m; ++i) gaps[i] = safe_distance(space, c[i], c.at_wrapped(i + 1));
  // Cyclic prefix sums give the arc length of each window; an arc shorter
  // than the bound already bounds the diameter.
  std::vector<double> prefix(2 * m + 1, 0.0);
  for (int i = 0; i < 2 * m; ++i) prefix[i + 1] = prefix[i] + gaps[i % m];
  for (int j = 0; j < m; ++j) {
    const int span = std::min(w, m);
    if (prefix[j + span] - prefix[j] < bound) continue;
    if (window_diameter(space, c, j, std::min(w, m - 1), bound) >= bound) return false;
  }
  return true;
}

double max_window_diameter(const Space& space, const PolyCurve& c, int k) {
  const int m = static_cast<int>(c.size());
  const int w = std::min(window_samples(c.size(), k), m - 1);
  double worst = 0.0;
  for (int j = 0; j < m; ++j) worst = std::max(worst, window_diameter(space, c, j, w, kInf));
  return worst;
}

KChoice choose_k(const Space& space, const PolyCurve& c, int m_max, int k_min) {
  constexpr std::string_view where = "shortening/choose_k";
  require_closed(c, where);
  const double bound = 0.5 * space.epsilon() * (1.0 - kMargin);
  const int m = static_cast<int>(c.size());
  int k = std::max(2, k_min);
  while (true) {
    while (k <= m_max && !windows_below(space, c, k, bound)) ++k;
    if (k > m_max) {
      raise(ErrorKind::CannotSatisfy, where,
            "no k <= " + std::to_string(m_max) +
                " keeps every window below epsilon/2; the curve is too wild at "
                "this resolution");
    }
    const int m_out = next_multiple(std::max(m, 8 * k), 2 * k);
    if (m_out == m) return {k, c};
    PolyCurve resampled = resample_constant_speed(space, c, m_out);
    if (windows_below(space, resampled, k, bound)) return {k, std::move(resampled)};
    ++k;
  }
}

PolyCurve birkhoff_step(const Space& space, const PolyCurve& c, int k) {
  constexpr std::string_view where = "shortening/birkhoff_step";
  require_closed(c, where);
  const int m = static_cast<int>(c.size());
  if (k < 2 || m % (2 * k) != 0) {
    raise(ErrorKind::InvalidCurve, where,
          "sample count " + std::to_string(m) + " is not a multiple of 2k = " +
              std::to_string(2 * k));
  }
  if (!windows_below(space, c, k, 0.5 * space.epsilon() * (1.0 - kMargin))) {
    raise(ErrorKind::DiameterViolation, where,
          "an arc of width 1/" + std::to_string(k) +
              " has diameter >= epsilon/2; re-run choose_k");
  }
  const int q = m / (2 * k);
  std::vector<double> fractions(2 * q + 1);
  for (int j = 0; j <= 2 * q; ++j) fractions[j] = static_cast<double>(j) / (2 * q);

  // Replace the arcs [start, start + 2q] (mod m) for start = offset, offset
  // + 2q, ... by shortest paths, keeping the arc endpoints.
  auto stage = [&](const std::vector<Point>& in, int offset) {
    std::vector<Point> out(in);
    for (int i = 0; i < k; ++i) {
      const int s = (offset + 2 * i * q) % m;
      const int e = (s + 2 * q) % m;
      auto seg = space.sample_shortest_path(in[s], in[e], fractions);
      for (int j = 1; j < 2 * q; ++j) out[(s + j) % m] = std::move(seg.points[j]);
    }
    return out;
  };
  auto gamma1 = stage(c.points(), 0);
  return PolyCurve(stage(gamma1, q), true);
}

double lipschitz_bound(const Space& space, const PolyCurve& c, int k) {
  const int m = static_cast<int>(c.size());
  if (k < 2 || m % (2 * k) != 0) {
    raise(ErrorKind::InvalidCurve, "shortening/lipschitz_bound",
          "sample count " + std::to_string(m) + " is not a multiple of 2k");
  }
  const int q = m / (2 * k);
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    worst = std::max(worst, space.distance(c[2 * i * q], c.at_wrapped((2 * i + 2) * q)));
  }
  return k * worst;
}

double displacement(const Space& space, const PolyCurve& a, const PolyCurve& b) {
  if (a.size() != b.size()) {
    raise(ErrorKind::InvalidCurve, "shortening/displacement",
          "curves differ in sample count");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, safe_distance(space, a[i], b[i]));
  }
  return worst;
}

ShorteningResult shorten_to_limit(const Space& space, const PolyCurve& c,
                                  const ShorteningParams& params) {
  constexpr std::string_view where = "shortening/shorten_to_limit";
  require_closed(c, where);
  if (params.k < 2 || !(params.tol_length > 0.0) || params.max_iter < 0) {
    raise(ErrorKind::ConfigError, where, "need k >= 2, tol_length > 0, max_iter >= 0");
  }
  const double tol_move = params.move_tolerance(space);
  auto choice = choose_k(space, c, params.m_max, params.k);
  int k = choice.k;
  const int m = static_cast<int>(choice.curve.size());
  PolyCurve curve = resample_constant_speed(space, choice.curve, m);

  ShorteningResult result{curve, {}};
  auto& trace = result.trace;
  trace.lengths.push_back(curve_length(space, curve));
  bool rechecked = false;
  for (int iter = 0; iter < params.max_iter; ++iter) {
    PolyCurve next;
    try {
      next = birkhoff_step(space, curve, k);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DiameterViolation) throw;
      if (rechecked) {
        trace.status = ShorteningStatus::DiameterViolation;
        break;
      }
      rechecked = true;
      // k may only grow; keep the sample count a multiple of 2k.
      auto again = choose_k(space, curve, params.m_max, k);
      k = again.k;
      curve = std::move(again.curve);
      --iter;
      continue;
    }
    next = resample_constant_speed(space, next, static_cast<int>(next.size()));
    const double move = displacement(space, curve, next);
    const double before = trace.lengths.back();
    const double after = curve_length(space, next);
    trace.moves.push_back(move);
    trace.lengths.push_back(after);
    curve = std::move(next);
    const double rel = before > 0.0 ? (before - after) / before : 0.0;
    const bool collapsed = after < tol_move && move < tol_move;
    if ((rel < params.tol_length && move < tol_move) || collapsed) {
      trace.status = ShorteningStatus::Converged;
      break;
    }
  }
  trace.k = k;
  trace.m = static_cast<int>(curve.size());
  result.curve = std::move(curve);
  return result;
}

}  // namespace closedgeo
