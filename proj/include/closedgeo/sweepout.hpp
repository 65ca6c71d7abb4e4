#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "closedgeo/curve.hpp"
#include "closedgeo/shortening.hpp"
#include "closedgeo/space.hpp"

namespace closedgeo {

// Circle of the foliation of S^n through base parameter x (n-1 entries,
// |x| <= 1):  t -> (x_1, ..., x_{n-1}, r sin 2pi t, r cos 2pi t),
// r = sqrt(1 - |x|^2). t = 0 is the base point (x, 0, r).
// Throws OutsideDisk when |x|^2 > 1 + 1e-12.
Eigen::VectorXd foliation_circle(int n, std::span<const double> x, double t);

// Lattice of spacing 2/grid_res in [-1,1]^{n-1} clipped to the unit disk,
// in lexicographic order of the integer lattice coordinates.
std::vector<std::vector<int>> base_lattice(int n, int grid_res);
std::vector<double> lattice_point(std::span<const int> index, int grid_res);

// Map from unit vectors of R^{n+1} into the space.
using SweepMap = std::function<Point(const Eigen::VectorXd&)>;

struct SweepFamily {
  int n = 2;
  int grid_res = 0;
  double r_min = 1e-3;
  std::vector<std::vector<int>> lattice;  // integer coordinates of each grid point
  std::vector<std::vector<double>> grid;  // base parameters
  std::vector<PolyCurve> curves;
  std::vector<bool> degenerate;  // r < r_min: stored as a constant curve

  std::size_t size() const { return curves.size(); }
  // Pairs of grid points one lattice step apart.
  std::vector<std::pair<int, int>> neighbors() const;
};

// One closed curve per grid point, t -> f(foliation_circle(n, x, t)) at m
// uniform t. Throws ContinuityViolation when consecutive samples of a curve
// are more than epsilon/2 apart.
SweepFamily build_family(const Space& space, const SweepMap& f, int n,
                         int grid_res, int m, double r_min = 1e-3);

// Largest distance between base points of neighbouring grid points
// (infinity if some pair is out of the backend's range).
double max_base_point_jump(const Space& space, const SweepFamily& family);

struct CertificationResult {
  bool passed = false;
  double max_defect = 0.0;
  double window = 0.0;      // parameter width actually tested
  int window_samples = 0;
  double tol = 1e-4;
  int worst_index = 0;
};

// Compares d(c_s, c_{s+w}) with the arc length over every window of w
// samples. window <= 0 selects min(epsilon / (2 length), 1/8).
// Throws WindowTooWide when some window's arc exceeds epsilon.
CertificationResult certify_geodesic(const Space& space, const PolyCurve& c,
                                     double tol = 1e-4, double window = 0.0);

enum class MinimaxStatus { Converged, MaxIter, FamilyCollapsed };
std::string_view to_string(MinimaxStatus status);

struct MinimaxReport {
  MinimaxStatus status = MinimaxStatus::MaxIter;
  std::vector<double> c_seq;  // c_seq[0] is the maximum before shortening
  std::vector<int> argmax_seq;
  std::vector<double> argmax_moves;  // displacement of the argmax curve per iteration
  int argmax_index = 0;
  int iterations = 0;
  int collapsed_at = -1;
  int k = 0;
  int m = 0;
  double epsilon = 0.0;
  // Largest lipschitz_bound over the family after the first iteration.
  double lipschitz_after_first = 0.0;
  PolyCurve candidate;
  double candidate_length = 0.0;
  CertificationResult certified;
  bool epsilon_check = false;
};

struct MinimaxOptions {
  int max_sweep_iters = 1000;
  double certify_tol = 1e-4;
  unsigned threads = 0;
};

// Iterates D over every family member with one global k (the largest
// choose_k over the family, never below params.k) and tracks
// c_k = max length. Stops when the relative change of c_k is below
// tol_length and the argmax curve moved less than tol_move. The candidate
// is the raw argmax curve. Records FamilyCollapsed when c_k < epsilon.
MinimaxReport minimax_evaluate(const Space& space, const SweepFamily& family,
                               const ShorteningParams& params,
                               const MinimaxOptions& options = {});

// As minimax_evaluate, but throws FamilyCollapsed naming the iteration.
MinimaxReport minimax_run(const Space& space, const SweepFamily& family,
                          const ShorteningParams& params,
                          const MinimaxOptions& options = {});

struct SeedOutcome {
  ShorteningStatus status = ShorteningStatus::MaxIter;
  double length = 0.0;
  int k = 0;
  int m = 0;
  int iterations = 0;
  PolyCurve curve;
  ShorteningTrace trace;
};

struct SystoleResult {
  std::vector<SeedOutcome> seeds;
  std::optional<int> best;  // index into seeds
  PolyCurve curve;
  double length = 0.0;
  CertificationResult certified;
  std::vector<std::string> warnings;

  bool any_converged() const;
};

// Shortens every seed; among converged limits of length >= epsilon returns
// the shortest, certified. Limits below epsilon are contractible and are
// excluded with a ContractibleSeed warning.
SystoleResult systole_evaluate(const Space& space, const std::vector<PolyCurve>& seeds,
                               const ShorteningParams& params,
                               double certify_tol = 1e-4, unsigned threads = 0);

// As systole_evaluate, but throws NoneConverged when no seed converged.
SystoleResult systole_search(const Space& space, const std::vector<PolyCurve>& seeds,
                             const ShorteningParams& params,
                             double certify_tol = 1e-4, unsigned threads = 0);

nlohmann::json to_json(const CertificationResult& c);
nlohmann::json to_json(const Space& space, const MinimaxReport& r);
nlohmann::json to_json(const Space& space, const SystoleResult& r);
nlohmann::json to_json(const ShorteningTrace& t);

// CSV with header iteration,c,argmax,argmax_move.
void write_c_seq_csv(std::ostream& out, const MinimaxReport& r);

// Sweep maps from S^2 (unit vectors of R^3).
SweepMap identity_map();                                  // sphere backend
SweepMap rotation_map(const Eigen::Matrix3d& rotation);   // sphere backend
// Nearest point of a mesh to the (rotated) unit vector.
SweepMap nearest_mesh_map(const class MeshSpace& space,
                          const Eigen::Matrix3d& rotation = Eigen::Matrix3d::Identity());
// Squeezes S^2 into a ball of the given radius around `center`:
//   sphere: normalize(c + tan(radius) (u - (u.c) c))
//   torus:  center + radius (u_x, u_y)
//   mesh:   nearest mesh point to position(center) + radius u
SweepMap cap_map(const Space& space, const Point& center, double radius);

}  // namespace closedgeo
