#include "closedgeo/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Geometry>

#include "closedgeo/analytic.hpp"
#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/mesh/obj_io.hpp"
#include "closedgeo/parallel.hpp"
#include "closedgeo/shortening.hpp"
#include "closedgeo/sweepout.hpp"

namespace closedgeo {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kWhere = "cli/config";

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  raise(ErrorKind::ConfigError, kWhere, field + ": " + what);
}

// Reads the members of one config object and rejects unknown ones.
class Section {
 public:
  Section(const json& doc, std::string prefix) : prefix_(std::move(prefix)) {
    if (doc.is_null()) return;
    if (!doc.is_object()) config_error(prefix_.empty() ? "config" : prefix_, "expected an object");
    doc_ = doc;
  }

  std::string field(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  double number(std::string_view key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) config_error(field(key), "expected a number");
    return v->get<double>();
  }

  int integer(std::string_view key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number_integer()) return v->get<int>();
    if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>()) {
      return static_cast<int>(v->get<double>());
    }
    config_error(field(key), "expected an integer");
  }

  std::string string(std::string_view key, std::string fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) config_error(field(key), "expected a string");
    return v->get<std::string>();
  }

  json raw(std::string_view key, json fallback = nullptr) {
    const json* v = find(key);
    return v ? *v : fallback;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.contains(key)) config_error(field(key), "unknown field");
    }
  }

 private:
  json doc_ = json::object();
  std::string prefix_;
  std::set<std::string, std::less<>> seen_;
};

void require_one_of(const std::string& field, const std::string& value,
                    std::initializer_list<std::string_view> allowed) {
  std::string list;
  for (auto a : allowed) {
    if (value == a) return;
    if (!list.empty()) list += ", ";
    list += a;
  }
  config_error(field, "unknown value '" + value + "' (expected one of " + list + ")");
}

void require_positive(const std::string& field, double v) {
  if (!(v > 0.0)) config_error(field, "must be positive");
}

Eigen::Vector3d vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) config_error(field, "expected [x, y, z]");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) config_error(field, "expected [x, y, z]");
    v[i] = j[i].get<double>();
  }
  return v;
}

Eigen::Vector2d vec2(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) config_error(field, "expected [u, v]");
  if (!j[0].is_number() || !j[1].is_number()) config_error(field, "expected [u, v]");
  return {j[0].get<double>(), j[1].get<double>()};
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoError, "cli/read", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::ParseError, "cli/read", path.string() + ": " + e.what());
  }
}

// ---- backends and seeds --------------------------------------------------

std::unique_ptr<Space> make_space(const RunConfig& cfg) {
  const auto& b = cfg.backend;
  if (b.name == "sphere") return std::make_unique<SphereSpace>(b.radius, b.epsilon);
  if (b.name == "torus") return std::make_unique<TorusSpace>(b.side, b.epsilon);
  auto mesh = std::make_shared<const TriMesh>(load_mesh(resolve(cfg.base_dir, b.path)));
  MeshSpaceOptions opt;
  opt.steiner_points = b.steiner_points;
  opt.s_factor = b.s_factor;
  opt.epsilon = b.epsilon;
  opt.straighten.angle_tol = b.angle_tol;
  opt.straighten.max_iterations = b.max_straighten_iters;
  return std::make_unique<MeshSpace>(std::move(mesh), opt);
}

Point from_position(const Space& space, const Eigen::Vector3d& x, const std::string& field) {
  switch (space.kind()) {
    case BackendKind::Sphere:
      if (x.norm() == 0.0) config_error(field, "point at the origin has no projection");
      return SphereSpace::make_point(x);
    case BackendKind::Mesh:
      return static_cast<const MeshSpace&>(space).project(x);
    case BackendKind::Torus:
      break;
  }
  config_error(field, "3D positions need a sphere or mesh backend");
}

Point jittered(const Space& space, const Point& p, double amplitude, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, amplitude);
  switch (space.kind()) {
    case BackendKind::Torus: {
      const auto& q = std::get<TorusPoint>(p);
      return TorusSpace::make_point(q.u + g(rng), q.v + g(rng));
    }
    case BackendKind::Sphere: {
      const Eigen::Vector3d x = std::get<SpherePoint>(p).x;
      return SphereSpace::make_point(x + Eigen::Vector3d(g(rng), g(rng), g(rng)));
    }
    case BackendKind::Mesh: {
      const auto& ms = static_cast<const MeshSpace&>(space);
      return ms.project(ms.embed(p) + Eigen::Vector3d(g(rng), g(rng), g(rng)));
    }
  }
  return p;
}

PolyCurve generate_seed(const Space& space, const json& doc, const std::string& field,
                        int default_m) {
  Section s(doc, field);
  const std::string gen = s.string("generator", "");
  require_one_of(field + ".generator", gen, {"torus_line", "torus_circle", "loop3d"});
  const int m = s.integer("m", default_m);
  if (m < 3) config_error(s.field("m"), "closed seeds need at least 3 samples");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Point> pts;
  pts.reserve(m);

  if (gen == "torus_line" || gen == "torus_circle") {
    if (space.kind() != BackendKind::Torus) config_error(field, gen + " needs the torus backend");
    if (gen == "torus_line") {
      const json w = s.raw("winding");
      if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
          !w[1].is_number_integer()) {
        config_error(s.field("winding"), "expected [a, b] with integer entries");
      }
      const double a = w[0].get<int>(), b = w[1].get<int>();
      if (a == 0 && b == 0) config_error(s.field("winding"), "must not be [0, 0]");
      const Eigen::Vector2d off = vec2(s.raw("offset", json::array({0.0, 0.0})), s.field("offset"));
      const double wiggle = s.number("wiggle", 0.0);
      const double norm = std::hypot(a, b);
      for (int i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / m;
        const double w_t = wiggle * std::sin(two_pi * t) / norm;
        pts.push_back(TorusSpace::make_point(off[0] + a * t - b * w_t, off[1] + b * t + a * w_t));
      }
    } else {
      const Eigen::Vector2d c = vec2(s.raw("center", json::array({0.5, 0.5})), s.field("center"));
      const double r = s.number("radius", 0.1);
      for (int i = 0; i < m; ++i) {
        const double th = two_pi * i / m;
        pts.push_back(TorusSpace::make_point(c[0] + r * std::cos(th), c[1] + r * std::sin(th)));
      }
    }
  } else {
    const Eigen::Vector3d c = vec3(s.raw("center", json::array({0.0, 0.0, 0.0})), s.field("center"));
    Eigen::Vector3d axis = vec3(s.raw("axis", json::array({0.0, 0.0, 1.0})), s.field("axis"));
    if (axis.norm() == 0.0) config_error(s.field("axis"), "must be non-zero");
    axis.normalize();
    const double r = s.number("radius", 1.0);
    const double wiggle = s.number("wiggle", 0.0);
    const int freq = s.integer("frequency", 3);
    const Eigen::Vector3d e1 = axis.unitOrthogonal();
    const Eigen::Vector3d e2 = axis.cross(e1);
    for (int i = 0; i < m; ++i) {
      const double th = two_pi * i / m;
      const Eigen::Vector3d x =
          c + r * (std::cos(th) * e1 + std::sin(th) * e2) + wiggle * std::sin(freq * th) * axis;
      pts.push_back(from_position(space, x, field));
    }
  }
  s.raw("jitter");  // consumed by the caller
  s.finish();
  return PolyCurve(std::move(pts), true);
}

std::vector<PolyCurve> build_seeds(const Space& space, const RunConfig& cfg) {
  std::vector<PolyCurve> out;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::string field = "seeds[" + std::to_string(i) + "]";
    const json& doc = cfg.seeds[i];
    PolyCurve c;
    double jitter = 0.0;
    if (doc.contains("jitter")) {
      if (!doc["jitter"].is_number()) config_error(field + ".jitter", "expected a number");
      jitter = doc["jitter"].get<double>();
    }
    if (doc.contains("generator")) {
      c = generate_seed(space, doc, field, cfg.m);
    } else if (doc.contains("file")) {
      for (const auto& [key, value] : doc.items()) {
        if (key != "file" && key != "jitter") config_error(field + "." + key, "unknown field");
      }
      if (!doc["file"].is_string()) config_error(field + ".file", "expected a string");
      c = curve_from_json(space, read_json_file(resolve(cfg.base_dir, doc["file"].get<std::string>())));
    } else if (doc.contains("points")) {
      json curve = doc;
      curve.erase("jitter");
      c = curve_from_json(space, curve);
    } else {
      config_error(field, "expected a curve, {\"file\": ...} or {\"generator\": ...}");
    }
    if (jitter > 0.0) {
      std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
      std::vector<Point> pts;
      for (const auto& p : c.points()) pts.push_back(jittered(space, p, jitter, rng));
      c = PolyCurve(std::move(pts), c.closed());
    }
    validate_curve(space, c);
    out.push_back(std::move(c));
  }
  return out;
}

Point cap_center(const Space& space, const RunConfig& cfg) {
  if (!cfg.sweep.cap_center.is_null()) {
    try {
      const Point p = space.point_from_json(cfg.sweep.cap_center);
      space.validate(p);
      return p;
    } catch (const Error& e) {
      config_error("sweep.cap_center", e.detail());
    }
  }
  switch (space.kind()) {
    case BackendKind::Sphere: return SphereSpace::make_point(Eigen::Vector3d(1, 0, 0));
    case BackendKind::Torus: return TorusSpace::make_point(0.5, 0.5);
    case BackendKind::Mesh: {
      const auto& ms = static_cast<const MeshSpace&>(space);
      return ms.project(ms.mesh().position(0));
    }
  }
  return {};
}

SweepMap make_sweep_map(const Space& space, const RunConfig& cfg, json& effective) {
  const auto& sw = cfg.sweep;
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(sw.angle, sw.axis.normalized()).toRotationMatrix();
  const std::string map = sw.map.empty()
                              ? (space.kind() == BackendKind::Mesh ? "nearest_mesh" : "identity")
                              : sw.map;
  effective["sweep_map"] = map;
  if (map == "cap") {
    const double radius = sw.cap_radius > 0.0 ? sw.cap_radius : space.epsilon() / 4.0;
    const Point c = cap_center(space, cfg);
    effective["cap_radius"] = radius;
    effective["cap_center"] = space.point_to_json(c);
    return cap_map(space, c, radius);
  }
  switch (space.kind()) {
    case BackendKind::Sphere:
      if (map == "identity") return identity_map();
      if (map == "rotation") return rotation_map(rot);
      break;
    case BackendKind::Mesh:
      if (map == "nearest_mesh") return nearest_mesh_map(static_cast<const MeshSpace&>(space), rot);
      break;
    case BackendKind::Torus:
      break;
  }
  config_error("sweep.map", "'" + map + "' is not available for the " +
                                std::string(space.name()) + " backend");
}

// ---- outputs ---------------------------------------------------------------

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::IoError, "cli/write", "cannot write " + path.string());
  out << text;
  if (!out) raise(ErrorKind::IoError, "cli/write", "failed writing " + path.string());
}

std::string trace_csv(const ShorteningTrace& t) {
  std::ostringstream s;
  write_trace_csv(s, t);
  return s.str();
}

void write_candidate(const fs::path& dir, const std::string& stem, const Space& space,
                     const PolyCurve& c) {
  write_text(dir / (stem + ".curve.json"), curve_to_json(space, c).dump(2) + "\n");
  if (space.kind() == BackendKind::Mesh) {
    std::vector<Eigen::Vector3d> xs;
    for (const auto& p : c.points()) xs.push_back(space.embed(p));
    std::ostringstream s;
    s << std::setprecision(17);
    write_polyline_obj(s, xs, c.closed());
    write_text(dir / (stem + ".obj"), s.str());
  }
}

json error_json(const Error& e) {
  return {{"kind", std::string(to_string(e.kind()))}, {"where", e.where()}, {"message", e.detail()}};
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::IoError:
    case ErrorKind::ParseError:
    case ErrorKind::NonManifold:
    case ErrorKind::Disconnected:
    case ErrorKind::DegenerateFace:
    case ErrorKind::InvalidPoint:
    case ErrorKind::MixedBackends:
      return 1;
    default:
      return 2;
  }
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

ShorteningParams shortening_params(const RunConfig& cfg) {
  ShorteningParams p;
  p.k = cfg.k_min;
  p.tol_length = cfg.tol_length;
  p.tol_move = cfg.tol_move;
  p.max_iter = cfg.max_iter;
  p.m_max = cfg.m_max;
  return p;
}

struct ModeResult {
  std::string status;
  int exit_code = 0;
  json result;
  json error;
};

ModeResult run_sweepout(const Space& space, const RunConfig& cfg, const fs::path& dir,
                        json& effective) {
  const SweepMap f = make_sweep_map(space, cfg, effective);
  const SweepFamily family = build_family(space, f, cfg.n, cfg.grid_res, cfg.m);
  MinimaxOptions opt;
  opt.max_sweep_iters = cfg.max_sweep_iters;
  opt.certify_tol = cfg.certify_tol;
  opt.threads = cfg.threads;
  const MinimaxReport rep = minimax_evaluate(space, family, shortening_params(cfg), opt);

  ModeResult out;
  out.status = std::string(to_string(rep.status));
  out.result = to_json(space, rep);
  out.result["family_size"] = family.size();
  out.result["base_point_jump"] = max_base_point_jump(space, family);
  std::ostringstream csv;
  write_c_seq_csv(csv, rep);
  write_text(dir / "trace.csv", csv.str());
  if (rep.status == MinimaxStatus::FamilyCollapsed) {
    out.exit_code = 2;
    out.error = {{"kind", "FamilyCollapsed"},
                 {"where", "sweepout/minimax_run"},
                 {"message", "max length " + std::to_string(rep.c_seq.back()) +
                                 " fell below epsilon at iteration " +
                                 std::to_string(rep.collapsed_at)}};
    return out;
  }
  write_candidate(dir, "candidate", space, rep.candidate);
  out.exit_code = rep.certified.passed ? 0 : 2;
  return out;
}

ModeResult run_systole(const Space& space, const RunConfig& cfg, const fs::path& dir) {
  const auto seeds = build_seeds(space, cfg);
  if (seeds.empty()) config_error("seeds", "systole mode needs at least one seed");
  const SystoleResult r =
      systole_evaluate(space, seeds, shortening_params(cfg), cfg.certify_tol, cfg.threads);
  ModeResult out;
  out.result = to_json(space, r);
  for (std::size_t i = 0; i < r.seeds.size(); ++i) {
    write_text(dir / ("trace_seed_" + std::to_string(i) + ".csv"), trace_csv(r.seeds[i].trace));
  }
  if (!r.any_converged()) {
    out.status = "NoneConverged";
    out.exit_code = 2;
    out.error = {{"kind", "NoneConverged"},
                 {"where", "sweepout/systole_search"},
                 {"message", "none of the " + std::to_string(seeds.size()) + " seeds converged"}};
    write_text(dir / "trace.csv", trace_csv(r.seeds.front().trace));
    return out;
  }
  if (!r.best) {
    out.status = "NoNoncontractibleLimit";
    out.exit_code = 2;
    write_text(dir / "trace.csv", trace_csv(r.seeds.front().trace));
    return out;
  }
  out.status = "Converged";
  write_text(dir / "trace.csv", trace_csv(r.seeds[*r.best].trace));
  write_candidate(dir, "candidate", space, r.curve);
  out.exit_code = r.certified.passed ? 0 : 2;
  return out;
}

ModeResult run_shorten(const Space& space, const RunConfig& cfg, const fs::path& dir) {
  const auto seeds = build_seeds(space, cfg);
  if (seeds.empty()) config_error("seeds", "shorten mode needs at least one seed");
  const auto params = shortening_params(cfg);
  std::vector<ShorteningResult> results(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    results[i] = shorten_to_limit(space, seeds[i], params);
  }, cfg.threads);

  ModeResult out;
  out.result["seeds"] = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const auto cert = certify_geodesic(space, r.curve, cfg.certify_tol);
    const bool ok = r.trace.status == ShorteningStatus::Converged && cert.passed;
    all_ok = all_ok && ok;
    out.result["seeds"].push_back({{"status", std::string(to_string(r.trace.status))},
                                   {"length", r.trace.lengths.back()},
                                   {"initial_length", r.trace.lengths.front()},
                                   {"k", r.trace.k},
                                   {"m", r.trace.m},
                                   {"iterations", r.trace.iterations()},
                                   {"certified", to_json(cert)},
                                   {"curve", curve_to_json(space, r.curve)}});
    write_text(dir / ("trace_seed_" + std::to_string(i) + ".csv"), trace_csv(r.trace));
  }
  out.status = std::string(to_string(results.front().trace.status));
  out.result["length"] = results.front().trace.lengths.back();
  write_text(dir / "trace.csv", trace_csv(results.front().trace));
  write_candidate(dir, "candidate", space, results.front().curve);
  out.exit_code = all_ok ? 0 : 2;
  return out;
}

ModeResult run_certify(const Space& space, const RunConfig& cfg, const fs::path& dir) {
  const auto seeds = build_seeds(space, cfg);
  if (seeds.empty()) config_error("seeds", "certify mode needs at least one seed");
  ModeResult out;
  out.result["seeds"] = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "seed,length,max_defect,passed\n";
  bool all = true;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto cert = certify_geodesic(space, seeds[i], cfg.certify_tol);
    const double len = curve_length(space, seeds[i]);
    all = all && cert.passed;
    out.result["seeds"].push_back({{"length", len}, {"certified", to_json(cert)}});
    csv << i << ',' << len << ',' << cert.max_defect << ',' << (cert.passed ? 1 : 0) << '\n';
  }
  write_text(dir / "trace.csv", csv.str());
  write_candidate(dir, "candidate", space, seeds.front());
  out.status = all ? "Certified" : "NotCertified";
  out.exit_code = all ? 0 : 2;
  return out;
}

}  // namespace

// ---- config ------------------------------------------------------------------

json RunConfig::echo() const {
  json be = {{"name", backend.name}, {"epsilon", backend.epsilon}};
  if (backend.name == "sphere") be["radius"] = backend.radius;
  if (backend.name == "torus") be["side"] = backend.side;
  if (backend.name == "mesh") {
    be["path"] = backend.path;
    be["steiner_points"] = backend.steiner_points;
    be["s_factor"] = backend.s_factor;
    be["angle_tol"] = backend.angle_tol;
    be["max_straighten_iters"] = backend.max_straighten_iters;
  }
  return {{"mode", mode},
          {"backend", be},
          {"discretization", {{"n", n}, {"grid_res", grid_res}, {"m", m}}},
          {"tolerances",
           {{"tol_length", tol_length}, {"tol_move", tol_move}, {"certify_tol", certify_tol}}},
          {"limits",
           {{"max_iter", max_iter},
            {"max_sweep_iters", max_sweep_iters},
            {"m_max", m_max},
            {"k_min", k_min}}},
          {"sweep",
           {{"map", sweep.map},
            {"axis", {sweep.axis[0], sweep.axis[1], sweep.axis[2]}},
            {"angle", sweep.angle},
            {"cap_center", sweep.cap_center},
            {"cap_radius", sweep.cap_radius}}},
          {"seeds", seeds},
          {"noncontractible", noncontractible},
          {"seed", seed},
          {"threads", threads},
          {"output_dir", output_dir}};
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    raise(ErrorKind::ConfigError, "cli/override",
          "expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) raise(ErrorKind::ConfigError, "cli/override", "empty path segment in '" + key + "'");
    if (!node->is_object()) {
      if (!node->is_null()) {
        raise(ErrorKind::ConfigError, "cli/override", "'" + key + "' descends into a non-object");
      }
      *node = json::object();
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  Section top(doc, "");
  if (doc.is_null()) config_error("config", "expected an object");

  const json* mode = top.find("mode");
  if (!mode) config_error("mode", "missing");
  if (!mode->is_string()) config_error("mode", "expected a string");
  c.mode = mode->get<std::string>();
  require_one_of("mode", c.mode, {"sweepout", "systole", "shorten", "certify"});

  {
    const json* bdoc = top.find("backend");
    if (!bdoc) config_error("backend", "missing");
    Section b(*bdoc, "backend");
    auto& be = c.backend;
    be.name = b.string("name", "");
    require_one_of("backend.name", be.name, {"sphere", "torus", "mesh"});
    be.epsilon = b.number("epsilon", 0.0);
    if (be.epsilon < 0.0) config_error("backend.epsilon", "must not be negative");
    if (be.name == "sphere") {
      be.radius = b.number("radius", 1.0);
      require_positive("backend.radius", be.radius);
    } else if (be.name == "torus") {
      be.side = b.number("side", 1.0);
      require_positive("backend.side", be.side);
    } else {
      be.path = b.string("path", "");
      if (be.path.empty()) config_error("backend.path", "missing");
      be.steiner_points = b.integer("steiner_points", 4);
      if (be.steiner_points < 0) config_error("backend.steiner_points", "must not be negative");
      be.s_factor = b.number("s_factor", 1.0);
      require_positive("backend.s_factor", be.s_factor);
      be.angle_tol = b.number("angle_tol", 1e-7);
      require_positive("backend.angle_tol", be.angle_tol);
      be.max_straighten_iters = b.integer("max_straighten_iters", 200);
      if (be.max_straighten_iters < 1) config_error("backend.max_straighten_iters", "must be at least 1");
    }
    b.finish();
  }

  {
    Section d(top.raw("discretization"), "discretization");
    c.n = d.integer("n", 2);
    c.grid_res = d.integer("grid_res", 16);
    c.m = d.integer("m", 128);
    d.finish();
    if (c.mode == "sweepout" && c.n != 2) {
      config_error("discretization.n", "only n = 2 sweep-outs are supported");
    }
    if (c.grid_res < 2 || c.grid_res % 2 != 0) {
      config_error("discretization.grid_res", "must be an even integer >= 2");
    }
    if (c.m < 4) config_error("discretization.m", "must be at least 4");
  }

  {
    Section t(top.raw("tolerances"), "tolerances");
    c.tol_length = t.number("tol_length", 1e-7);
    c.tol_move = t.number("tol_move", 0.0);
    c.certify_tol = t.number("certify_tol", 1e-4);
    t.finish();
    require_positive("tolerances.tol_length", c.tol_length);
    if (c.tol_move < 0.0) config_error("tolerances.tol_move", "must not be negative");
    require_positive("tolerances.certify_tol", c.certify_tol);
  }

  {
    Section l(top.raw("limits"), "limits");
    c.max_iter = l.integer("max_iter", 10000);
    c.max_sweep_iters = l.integer("max_sweep_iters", 1000);
    c.m_max = l.integer("m_max", 4096);
    c.k_min = l.integer("k_min", 2);
    l.finish();
    if (c.max_iter < 1) config_error("limits.max_iter", "must be at least 1");
    if (c.max_sweep_iters < 1) config_error("limits.max_sweep_iters", "must be at least 1");
    if (c.m_max < c.m) config_error("limits.m_max", "must be at least discretization.m");
    if (c.k_min < 2) config_error("limits.k_min", "must be at least 2");
  }

  {
    Section s(top.raw("sweep"), "sweep");
    c.sweep.map = s.string("map", "");
    if (!c.sweep.map.empty()) {
      require_one_of("sweep.map", c.sweep.map, {"identity", "rotation", "nearest_mesh", "cap"});
    }
    if (const json* a = s.find("axis")) c.sweep.axis = vec3(*a, "sweep.axis");
    if (c.sweep.axis.norm() == 0.0) config_error("sweep.axis", "must be non-zero");
    c.sweep.angle = s.number("angle", 0.0);
    c.sweep.cap_center = s.raw("cap_center");
    c.sweep.cap_radius = s.number("cap_radius", 0.0);
    if (c.sweep.cap_radius < 0.0) config_error("sweep.cap_radius", "must not be negative");
    s.finish();
  }

  c.seeds = top.raw("seeds", json::array());
  if (!c.seeds.is_array()) config_error("seeds", "expected an array");
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    if (!c.seeds[i].is_object()) config_error("seeds[" + std::to_string(i) + "]", "expected an object");
  }
  if (c.mode != "sweepout" && c.seeds.empty()) config_error("seeds", "at least one seed is required");

  c.noncontractible = top.raw("noncontractible");
  {
    const json* s = top.find("seed");
    if (s) {
      if (!s->is_number_unsigned()) config_error("seed", "expected a non-negative integer");
      c.seed = s->get<std::uint64_t>();
    }
  }
  {
    const int threads = top.integer("threads", 0);
    if (threads < 0) config_error("threads", "must not be negative");
    c.threads = static_cast<unsigned>(threads);
  }
  c.output_dir = top.string("output_dir", "geodesic_out");
  if (c.output_dir.empty()) config_error("output_dir", "must not be empty");
  top.finish();
  return c;
}

RunConfig load_config(const fs::path& path, const std::vector<std::string>& overrides) {
  json doc = read_json_file(path);
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc, path.parent_path());
}

RunOutcome run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  outcome.output_dir = fs::path(cfg.output_dir);
  json& report = outcome.report;
  report["tool"] = "geodesic";
  report["mode"] = cfg.mode;
  report["config"] = cfg.echo();
  report["noncontractible"] = cfg.noncontractible;
  report["timestamp"] = iso_timestamp();
  report["error"] = nullptr;

  std::error_code ec;
  fs::create_directories(outcome.output_dir, ec);
  if (ec) {
    outcome.exit_code = 1;
    report["status"] = "Error";
    report["error"] = {{"kind", "IoError"},
                       {"where", "cli/write"},
                       {"message", "cannot create " + cfg.output_dir + ": " + ec.message()}};
    report["exit_code"] = outcome.exit_code;
    return outcome;
  }

  std::unique_ptr<Space> space;
  try {
    space = make_space(cfg);
    report["backend"] = space->describe();
    json effective = {{"epsilon", space->epsilon()},
                      {"tol_move", shortening_params(cfg).move_tolerance(*space)}};
    ModeResult res;
    if (cfg.mode == "sweepout") {
      res = run_sweepout(*space, cfg, outcome.output_dir, effective);
    } else if (cfg.mode == "systole") {
      res = run_systole(*space, cfg, outcome.output_dir);
    } else if (cfg.mode == "shorten") {
      res = run_shorten(*space, cfg, outcome.output_dir);
    } else {
      res = run_certify(*space, cfg, outcome.output_dir);
    }
    report["effective"] = effective;
    report["status"] = res.status;
    report["result"] = res.result;
    report["error"] = res.error;
    outcome.exit_code = res.exit_code;
  } catch (const Error& e) {
    report["status"] = "Error";
    report["error"] = error_json(e);
    outcome.exit_code = exit_code_for(e.kind());
  } catch (const json::exception& e) {
    report["status"] = "Error";
    report["error"] = {{"kind", "ConfigError"}, {"where", std::string(kWhere)}, {"message", e.what()}};
    outcome.exit_code = 1;
  }
  if (space && space->kind() == BackendKind::Mesh) {
    const auto& ms = static_cast<const MeshSpace&>(*space);
    report["mesh_diagnostics"] = {{"epsilon_used", ms.epsilon()},
                                  {"epsilon_estimate", ms.estimated_epsilon()},
                                  {"ambiguous_paths", ms.ambiguous_paths()}};
  }
  report["exit_code"] = outcome.exit_code;
  report["runtime_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_text(outcome.output_dir / "report.json", report.dump(2) + "\n");
  } catch (const Error& e) {
    report["error"] = error_json(e);
    outcome.exit_code = 1;
    report["exit_code"] = 1;
  }
  return outcome;
}

}  // namespace closedgeo
