#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace closedgeo {

struct BackendConfig {
  std::string name;  // sphere | torus | mesh
  double radius = 1.0;
  double side = 1.0;
  double epsilon = 0.0;  // 0 selects the backend default / mesh estimate
  std::string path;      // mesh OBJ, relative to the config file
  int steiner_points = 4;
  double s_factor = 1.0;
  double angle_tol = 1e-7;
  int max_straighten_iters = 200;
};

struct SweepConfig {
  std::string map;  // identity | rotation | nearest_mesh | cap
  Eigen::Vector3d axis = Eigen::Vector3d(0, 0, 1);
  double angle = 0.0;
  nlohmann::json cap_center;  // point in backend format; null picks a default
  double cap_radius = 0.0;    // 0 selects epsilon/4
};

struct RunConfig {
  std::string mode;  // sweepout | systole | shorten | certify
  BackendConfig backend;
  int n = 2;
  int grid_res = 16;
  int m = 128;
  double tol_length = 1e-7;
  double tol_move = 0.0;  // 0 selects 1e-7 * epsilon
  double certify_tol = 1e-4;
  int max_iter = 10000;
  int max_sweep_iters = 1000;
  int m_max = 4096;
  int k_min = 2;
  SweepConfig sweep;
  nlohmann::json seeds = nlohmann::json::array();
  nlohmann::json noncontractible;  // caller's assertion, echoed verbatim
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output_dir = "geodesic_out";
  std::filesystem::path base_dir;  // resolves relative input paths

  // Every effective parameter, defaults included.
  nlohmann::json echo() const;
};

// Sets a dotted path ("tolerances.tol_length=1e-8"). The value is parsed as
// JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, std::string_view assignment);

// Validates a config document; throws ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

// Reads the file, applies the overrides in order, and validates.
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

struct RunOutcome {
  int exit_code = 0;
  nlohmann::json report;
  std::filesystem::path output_dir;
};

// Executes the run and writes report.json, trace.csv, candidate.curve.json
// and (mesh backends) candidate.obj into output_dir.
// Exit codes: 0 certified success, 2 computational failure or uncertified
// result, 1 configuration or I/O error.
RunOutcome run(const RunConfig& config);

// Fields of report.json that vary between identical runs.
inline constexpr std::string_view kVolatileReportFields[] = {"timestamp", "runtime_seconds"};

}  // namespace closedgeo
