#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "closedgeo/mesh/geodesic.hpp"
#include "closedgeo/mesh/steiner.hpp"
#include "closedgeo/mesh/trimesh.hpp"
#include "closedgeo/space.hpp"

namespace closedgeo {

struct MeshSpaceOptions {
  int steiner_points = 4;
  double s_factor = 1.0;
  // Uniqueness radius; <= 0 selects epsilon_estimate().
  double epsilon = 0.0;
  StraightenOptions straighten;
};

// Heuristic uniqueness radius:
//   min(0.5 * shortest edge * s_factor, 0.25 * shortest vertex girth)
// where the girth of an interior vertex with cone angle < 2pi is the loop
// through the Steiner nodes nearest to it on each incident edge.
double epsilon_estimate(const TriMesh& mesh, int steiner_points, double s_factor);

// Shortest vertex girth as used by epsilon_estimate (infinity when no
// interior vertex has cone angle below 2pi).
double min_vertex_girth(const TriMesh& mesh, int steiner_points);

// Intrinsic (induced length) metric of a triangle mesh. Shortest paths are
// seeded by the Steiner graph and straightened by strip unfolding.
class MeshSpace final : public Space {
 public:
  MeshSpace(std::shared_ptr<const TriMesh> mesh, MeshSpaceOptions options = {});

  BackendKind kind() const override { return BackendKind::Mesh; }
  double epsilon() const override { return epsilon_; }
  const TriMesh& mesh() const noexcept { return *mesh_; }
  const SteinerGraph& steiner() const noexcept { return graph_; }
  const MeshSpaceOptions& options() const noexcept { return options_; }
  double estimated_epsilon() const noexcept { return estimated_epsilon_; }
  // Number of computed paths whose straightening hit a tie within 1e-9.
  std::uint64_t ambiguous_paths() const noexcept { return ambiguous_paths_.load(); }

  // Locally shortest path from a to b. Throws TooFar when its length
  // exceeds epsilon (or when enforce_epsilon is set and the straight-line
  // lower bound already does), NoConvergence when straightening stalls.
  MeshGeodesic geodesic(const MeshPoint& a, const MeshPoint& b,
                        bool enforce_epsilon = true) const;

  // Closest surface point to x (brute force over faces).
  MeshPoint project(const Eigen::Vector3d& x) const;

  void validate(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  SegmentSamples sample_shortest_path(
      const Point& a, const Point& b,
      std::span<const double> fractions) const override;
  Eigen::Vector3d embed(const Point& p) const override;
  nlohmann::json point_to_json(const Point& p) const override;
  Point point_from_json(const nlohmann::json& j) const override;
  nlohmann::json describe() const override;

 private:
  MeshGeodesic straighten_seed(const MeshPoint& a, const MeshPoint& b) const;

  std::shared_ptr<const TriMesh> mesh_;
  MeshSpaceOptions options_;
  SteinerGraph graph_;
  double estimated_epsilon_;
  double epsilon_;
  mutable std::atomic<std::uint64_t> ambiguous_paths_{0};
};

}  // namespace closedgeo
