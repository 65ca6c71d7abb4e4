#pragma once

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include "closedgeo/curve.hpp"
#include "closedgeo/space.hpp"

namespace closedgeo {

struct ShorteningParams {
  int k = 2;  // lower bound; choose_k may raise it
  double tol_length = 1e-7;
  double tol_move = 0.0;  // <= 0 selects 1e-7 * epsilon
  int max_iter = 10000;
  int m_max = 4096;

  double move_tolerance(const Space& space) const {
    return tol_move > 0.0 ? tol_move : 1e-7 * space.epsilon();
  }
};

enum class ShorteningStatus { Converged, MaxIter, DiameterViolation };
std::string_view to_string(ShorteningStatus status);

struct ShorteningTrace {
  std::vector<double> lengths;  // lengths[0] is the input length
  std::vector<double> moves;    // moves[i] is the displacement of step i+1
  ShorteningStatus status = ShorteningStatus::MaxIter;
  int k = 0;
  int m = 0;

  int iterations() const { return static_cast<int>(moves.size()); }
};

// CSV with header iteration,length,sup_move. Row 0 is the input curve and has
// an empty sup_move.
void write_trace_csv(std::ostream& out, const ShorteningTrace& trace);

// True when every window of samples j..j+floor(m/k) (cyclic) has diameter
// below `bound`. Pairs beyond the backend's unique-path radius count as too
// wide.
bool windows_below(const Space& space, const PolyCurve& c, int k, double bound);

// Largest window diameter as above; infinity if a pair is out of range.
double max_window_diameter(const Space& space, const PolyCurve& c, int k);

struct KChoice {
  int k = 2;
  PolyCurve curve;  // c itself, or c resampled to a multiple of 2k >= max(m, 8k)
};

// Smallest k >= k_min whose windows of width 1/k all have diameter below
// epsilon/2 (with a relative margin of 1e-12), checked again after the
// resampling that makes m a multiple of 2k. Throws CannotSatisfy past m_max.
KChoice choose_k(const Space& space, const PolyCurve& c, int m_max = 4096,
                 int k_min = 2);

// One application of the Birkhoff operator D with k arcs. c must be closed
// with m divisible by 2k and satisfy the window diameter precondition
// (DiameterViolation otherwise).
PolyCurve birkhoff_step(const Space& space, const PolyCurve& c, int k);

// k * max_i d(c(2i/2k), c((2i+2)/2k)).
double lipschitz_bound(const Space& space, const PolyCurve& c, int k);

// Sample-wise displacement, or infinity when some pair is beyond the
// backend's unique-path radius.
double displacement(const Space& space, const PolyCurve& a, const PolyCurve& b);

struct ShorteningResult {
  PolyCurve curve;
  ShorteningTrace trace;
};

// Iterates D with constant-speed resampling (base point kept) until the
// relative length decrease is below tol_length and the displacement below
// tol_move, or max_iter steps. A curve that has collapsed (length and
// displacement both below tol_move) also counts as converged.
ShorteningResult shorten_to_limit(const Space& space, const PolyCurve& c,
                                  const ShorteningParams& params);

}  // namespace closedgeo
