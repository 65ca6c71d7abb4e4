// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "closedgeo/analytic.hpp"
#include "closedgeo/curve_ops.hpp"
#include "closedgeo/mesh/fixtures.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/shortening.hpp"
#include "closedgeo/sweepout.hpp"
#include "random_curves.hpp"
#include "support.hpp"

using namespace closedgeo;
using namespace testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = CLOSEDGEO_CONFIG_DIR;
const fs::path kWork = CLOSEDGEO_ACCEPT_DIR;
const std::string kGeodesic = GEODESIC_BIN;
const double kTwoPi = 2 * std::numbers::pi;

struct CliRun {
  int exit_code = -1;
  double seconds = 0.0;
  fs::path dir;
  json report;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CliRun run_cli(const std::string& config, const std::string& tag) {
  CliRun r;
  r.dir = kWork / tag;
  fs::remove_all(r.dir);
  fs::create_directories(kWork);
  const std::string cmd = "'" + kGeodesic + "' run --quiet --config '" +
                          (kConfigs / (config + ".json")).string() + "' --set 'output_dir=" +
                          r.dir.string() + "' > '" + (kWork / (tag + ".log")).string() +
                          "' 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(r.dir / "report.json")) r.report = json::parse(slurp(r.dir / "report.json"));
  return r;
}

std::map<std::string, CliRun> g_first_runs;

const CliRun& first_run(const std::string& config) {
  auto it = g_first_runs.find(config);
  if (it == g_first_runs.end()) it = g_first_runs.emplace(config, run_cli(config, config)).first;
  return it->second;
}

bool non_increasing(const std::vector<double>& xs, double slack = 1e-12) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[i - 1] + slack) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

// ---- criteria ---------------------------------------------------------------

Verdict sphere_minimax() {
  const auto& r = first_run("sphere_sweepout");
  if (r.report.is_null()) return {false, "no report (exit " + std::to_string(r.exit_code) + ")"};
  const auto& res = r.report["result"];
  const double len = res["candidate_length"].get<double>();
  const bool certified = res["certified"]["passed"].get<bool>();
  const bool mono = non_increasing(res["c_seq"].get<std::vector<double>>());
  const bool in_range = len >= kTwoPi * 0.99 && len <= kTwoPi * 1.01;
  return {r.exit_code == 0 && in_range && certified && mono && r.seconds < 60.0,
          "length " + fmt(len) + " (2pi " + fmt(kTwoPi) + "), certified " +
              (certified ? "yes" : "no") + ", c_seq non-increasing " + (mono ? "yes" : "no") +
              ", " + fmt(r.seconds) + " s"};
}

Verdict torus_systole() {
  const auto& r = first_run("torus_systole");
  if (r.report.is_null()) return {false, "no report (exit " + std::to_string(r.exit_code) + ")"};
  const auto& res = r.report["result"];
  // Seed 0 is in class (1,0), seed 2 in class (1,1).
  const double l10 = res["seeds"][0]["length"].get<double>();
  const double l11 = res["seeds"][2]["length"].get<double>();
  const double best = res["length"].get<double>();
  const bool ok = std::abs(l10 - 1.0) < 1e-6 && std::abs(l11 - std::sqrt(2.0)) < 1e-6 &&
                  std::abs(best - 1.0) < 1e-6 && r.exit_code == 0 && r.seconds < 10.0;
  return {ok, "(1,0) " + fmt(l10) + ", (1,1) " + fmt(l11) + ", minimum " + fmt(best) + ", " +
                  fmt(r.seconds) + " s"};
}

Verdict monotonicity() {
  const SphereSpace sphere;
  const TorusSpace torus;
  MeshSpaceOptions o;
  o.epsilon = 0.5;
  const MeshSpace mesh(std::make_shared<const TriMesh>(fixtures::icosphere(3)), o);

  int violations = 0;
  double worst = -1e300;
  auto suite = [&](const Space& space, const std::function<RandomCurve(std::mt19937_64&)>& gen) {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto [c, k] = gen(rng);
      const double before = curve_length(space, c);
      const double after = curve_length(space, birkhoff_step(space, c, k));
      worst = std::max(worst, after - before);
      if (after > before + 1e-12) ++violations;
    }
  };
  suite(sphere, [](auto& rng) { return random_sphere_curve(rng); });
  suite(torus, [](auto& rng) { return random_torus_curve(rng); });
  suite(mesh, [&](auto& rng) { return random_mesh_curve(mesh, rng); });

  int shipped = 0, bad_configs = 0;
  std::string bad;
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".json") continue;
    const std::string name = entry.path().stem().string();
    const json cfg = json::parse(slurp(entry.path()));
    if (cfg["mode"] != "sweepout") continue;
    ++shipped;
    const auto& r = first_run(name);
    if (r.report.is_null() || !r.report.contains("result") ||
        !non_increasing(r.report["result"]["c_seq"].get<std::vector<double>>())) {
      ++bad_configs;
      bad += " " + name;
    }
  }
  return {violations == 0 && bad_configs == 0 && shipped > 0,
          "300 random curves, " + std::to_string(violations) +
              " length increases (largest change " + fmt(worst) + "); c_seq non-increasing on " +
              std::to_string(shipped - bad_configs) + "/" + std::to_string(shipped) +
              " sweep-out configs" + bad};
}

Verdict lipschitz() {
  const auto& r = first_run("sphere_sweepout");
  if (r.report.is_null()) return {false, "no report"};
  const auto& res = r.report["result"];
  const int k = res["k"].get<int>();
  const int m = res["m"].get<int>();
  const double eps = res["epsilon"].get<double>();
  const double limit = k * eps / 2 + 1e-9;

  // Independent replay of the first sweep iteration on the same family.
  const SphereSpace sphere;
  const auto family = build_family(sphere, identity_map(), 2, 16, 128);
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family.degenerate[i]) continue;
    const auto c = resample_constant_speed(sphere, family.curves[i], m);
    worst = std::max(worst, lipschitz_bound(sphere, birkhoff_step(sphere, c, k), k));
  }
  const double reported = res["lipschitz_after_first"].get<double>();
  return {worst <= limit && reported <= limit,
          "max lipschitz_bound " + fmt(worst) + " (reported " + fmt(reported) + ") vs k eps/2 = " +
              fmt(k * eps / 2) + " with k " + std::to_string(k)};
}

Verdict fixed_points() {
  const SphereSpace sphere;
  const TorusSpace torus;
  const PolyCurve eq = equator(128);
  const PolyCurve horizontal =
      sample_closed(64, [](double t) { return TorusSpace::make_point(t, 0.25); });
  std::string detail;
  bool ok = true;
  for (const auto& [space, curve, name] :
       {std::tuple<const Space*, const PolyCurve*, const char*>{&sphere, &eq, "equator"},
        {&torus, &horizontal, "torus circle"}}) {
    const auto choice = choose_k(*space, *curve);
    const auto stepped = birkhoff_step(*space, choice.curve, choice.k);
    const double move = displacement(*space, choice.curve, stepped);
    const auto cert = certify_geodesic(*space, *curve);
    ok = ok && move < 1e-9 && cert.passed && cert.max_defect < 1e-9;
    detail += std::string(name) + ": move " + fmt(move) + ", defect " + fmt(cert.max_defect) + "; ";
  }
  return {ok, detail};
}

Verdict continuity() {
  const double delta = 1e-4;
  const SphereSpace sphere;
  const TorusSpace torus;
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto sup = [](const Space& s, const OpenPath& a, const OpenPath& b) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) w = std::max(w, s.distance(a.points[i], b.points[i]));
    return w;
  };
  double worst_sphere = 0.0, worst_torus = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Vector3d x = random_unit(rng);
    const Eigen::Vector3d y = random_at_angle(rng, x, u(rng) * (sphere.epsilon() - 2 * delta));
    const auto base = shortest_path(sphere, SphereSpace::make_point(x), SphereSpace::make_point(y), 33);
    const auto moved = shortest_path(sphere, SphereSpace::make_point(random_at_angle(rng, x, delta)),
                                     SphereSpace::make_point(random_at_angle(rng, y, delta)), 33);
    worst_sphere = std::max(worst_sphere, sup(sphere, base, moved));
  }
  for (int t = 0; t < 200; ++t) {
    const double u0 = u(rng), v0 = u(rng), th = kTwoPi * u(rng);
    const double d = u(rng) * (torus.epsilon() - 2 * delta);
    const double u1 = u0 + d * std::cos(th), v1 = v0 + d * std::sin(th);
    const double a = kTwoPi * u(rng), b = kTwoPi * u(rng);
    const auto base = shortest_path(torus, TorusSpace::make_point(u0, v0), TorusSpace::make_point(u1, v1), 33);
    const auto moved = shortest_path(
        torus, TorusSpace::make_point(u0 + delta * std::cos(a), v0 + delta * std::sin(a)),
        TorusSpace::make_point(u1 + delta * std::cos(b), v1 + delta * std::sin(b)), 33);
    worst_torus = std::max(worst_torus, sup(torus, base, moved));
  }
  return {worst_sphere < 10 * delta && worst_torus < 10 * delta,
          "delta 1e-4, worst sup distance sphere " + fmt(worst_sphere) + ", torus " +
              fmt(worst_torus) + " (bound " + fmt(10 * delta) + ")"};
}

Verdict mesh_fidelity() {
  const auto& ico = first_run("icosphere_sweepout");
  const auto& cube = first_run("cube_belt");
  if (ico.report.is_null() || cube.report.is_null()) return {false, "missing report"};
  const auto& ir = ico.report["result"];
  const double ilen = ir["candidate_length"].get<double>();
  const bool icert = ir["certified"]["passed"].get<bool>();
  const bool iok = ico.exit_code == 0 && icert && std::abs(ilen - kTwoPi) <= 0.03 * kTwoPi;
  const auto& cs = cube.report["result"]["seeds"][0];
  const double clen = cs["length"].get<double>();
  const bool ccert = cs["certified"]["passed"].get<bool>();
  const bool cok = cube.exit_code == 0 && ccert && std::abs(clen - 4.0) <= 1e-3;
  return {iok && cok,
          "icosphere " + fmt(ilen) + " (" + fmt(100 * (ilen / kTwoPi - 1)) + "%, " +
              ir["status"].get<std::string>() + ", certified " + (icert ? "yes" : "no") +
              ", eps " + fmt(ico.report["backend"]["epsilon"].get<double>()) + "); cube belt " +
              fmt(clen) + " (certified " + (ccert ? "yes" : "no") + ")"};
}

Verdict failure_honesty() {
  const auto& r = first_run("collapsed_cap");
  if (r.report.is_null()) return {false, "no report"};
  const bool collapsed = r.report["status"] == "FamilyCollapsed";
  const bool no_candidate = !fs::exists(r.dir / "candidate.curve.json");
  return {r.exit_code == 2 && collapsed && no_candidate,
          "exit " + std::to_string(r.exit_code) + ", status " +
              r.report["status"].get<std::string>() + " at iteration " +
              std::to_string(r.report["result"]["collapsed_at"].get<int>()) +
              (no_candidate ? ", no candidate written" : ", candidate written")};
}

std::string strip_volatile(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.find("\"timestamp\"") != std::string::npos) continue;
    if (line.find("\"runtime_seconds\"") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

Verdict determinism() {
  int total = 0, same = 0;
  std::string differing;
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".json") continue;
    const std::string name = entry.path().stem().string();
    ++total;
    const auto& a = first_run(name);
    std::map<std::string, std::string> before;
    for (const auto& f : fs::directory_iterator(a.dir)) {
      before[f.path().filename().string()] = slurp(f.path());
    }
    const int first_exit = a.exit_code;
    const auto b = run_cli(name, name);
    bool equal = first_exit == b.exit_code;
    std::size_t files = 0;
    for (const auto& f : fs::directory_iterator(b.dir)) {
      const std::string fname = f.path().filename().string();
      ++files;
      const auto it = before.find(fname);
      if (it == before.end()) {
        equal = false;
      } else if (fname == "report.json") {
        equal = equal && strip_volatile(it->second) == strip_volatile(slurp(f.path()));
      } else {
        equal = equal && it->second == slurp(f.path());
      }
    }
    equal = equal && files == before.size();
    if (equal) {
      ++same;
    } else {
      differing += " " + name;
    }
  }
  return {total > 0 && same == total,
          std::to_string(same) + "/" + std::to_string(total) + " shipped configs reproduce" +
              (differing.empty() ? "" : "; differing:" + differing)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Verdict (*check)();
  };
  const Criterion criteria[] = {
      {1, "sphere minimax", sphere_minimax},
      {2, "torus systole", torus_systole},
      {3, "monotonicity", monotonicity},
      {4, "lipschitz bound", lipschitz},
      {5, "fixed points", fixed_points},
      {6, "continuity", continuity},
      {7, "mesh fidelity", mesh_fidelity},
      {8, "failure honesty", failure_honesty},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (v.pass ? "PASS" : "FAIL")
              << " - " << v.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
