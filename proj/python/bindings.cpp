#include <memory>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "closedgeo/analytic.hpp"
#include "closedgeo/cli.hpp"
#include "closedgeo/curve_ops.hpp"
#include "closedgeo/error.hpp"
#include "closedgeo/mesh/mesh_space.hpp"
#include "closedgeo/mesh/obj_io.hpp"
#include "closedgeo/shortening.hpp"
#include "closedgeo/sweepout.hpp"

namespace py = pybind11;
using namespace closedgeo;
using nlohmann::json;

namespace {

json to_json(const py::handle& o) {
  if (o.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(o)) return o.cast<bool>();
  if (py::isinstance<py::int_>(o)) return o.cast<long long>();
  if (py::isinstance<py::float_>(o)) return o.cast<double>();
  if (py::isinstance<py::str>(o)) return o.cast<std::string>();
  if (py::isinstance<py::dict>(o)) {
    json j = json::object();
    for (auto [k, v] : o.cast<py::dict>()) j[py::str(k).cast<std::string>()] = to_json(v);
    return j;
  }
  if (py::isinstance<py::sequence>(o)) {
    json j = json::array();
    for (auto v : o.cast<py::sequence>()) j.push_back(to_json(v));
    return j;
  }
  // numpy scalars and anything else convertible to float
  return o.cast<double>();
}

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return std::move(l);
    }
    case json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return std::move(d);
    }
    default: return py::none();
  }
}

Point point_arg(const Space& s, const py::handle& p) {
  Point q = s.point_from_json(to_json(p));
  s.validate(q);
  return q;
}

PolyCurve curve_arg(const Space& s, const py::sequence& pts, bool closed) {
  std::vector<Point> v;
  for (auto p : pts) v.push_back(point_arg(s, p));
  return PolyCurve(std::move(v), closed);
}

py::list points_out(const Space& s, const std::vector<Point>& pts) {
  py::list l;
  for (const auto& p : pts) l.append(to_py(s.point_to_json(p)));
  return l;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed geodesics by curve shortening and min-max sweep-outs";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(to_string(e.kind())) + " in " + e.where() + ": " +
                                 e.detail()).c_str());
    }
  });

  py::class_<Space, std::shared_ptr<Space>>(m, "Space")
      .def_property_readonly("name", [](const Space& s) { return std::string(s.name()); })
      .def_property_readonly("epsilon", &Space::epsilon)
      .def("describe", [](const Space& s) { return to_py(s.describe()); })
      .def("distance", [](const Space& s, py::handle a, py::handle b) {
        return s.distance(point_arg(s, a), point_arg(s, b));
      })
      .def("shortest_path", [](const Space& s, py::handle a, py::handle b, int samples) {
        const auto path = shortest_path(s, point_arg(s, a), point_arg(s, b), samples);
        return py::make_tuple(points_out(s, path.points), path.length);
      }, py::arg("a"), py::arg("b"), py::arg("samples") = 17)
      .def("curve_length", [](const Space& s, py::sequence pts, bool closed) {
        return curve_length(s, curve_arg(s, pts, closed));
      }, py::arg("points"), py::arg("closed") = true)
      .def("embed", [](const Space& s, py::handle p) {
        const auto x = s.embed(point_arg(s, p));
        return std::vector<double>{x[0], x[1], x[2]};
      });

  py::class_<SphereSpace, Space, std::shared_ptr<SphereSpace>>(m, "SphereSpace")
      .def(py::init<double, double>(), py::arg("radius") = 1.0, py::arg("epsilon") = 0.0)
      .def_property_readonly("radius", &SphereSpace::radius);

  py::class_<TorusSpace, Space, std::shared_ptr<TorusSpace>>(m, "TorusSpace")
      .def(py::init<double, double>(), py::arg("side") = 1.0, py::arg("epsilon") = 0.0)
      .def_property_readonly("side", &TorusSpace::side);

  py::class_<MeshSpace, Space, std::shared_ptr<MeshSpace>>(m, "MeshSpace")
      .def(py::init([](const std::filesystem::path& path, double epsilon, int steiner_points,
                       double s_factor) {
             MeshSpaceOptions o;
             o.epsilon = epsilon;
             o.steiner_points = steiner_points;
             o.s_factor = s_factor;
             return std::make_shared<MeshSpace>(std::make_shared<const TriMesh>(load_mesh(path)), o);
           }),
           py::arg("path"), py::arg("epsilon") = 0.0, py::arg("steiner_points") = 4,
           py::arg("s_factor") = 1.0)
      .def_property_readonly("estimated_epsilon", &MeshSpace::estimated_epsilon)
      .def("project", [](const MeshSpace& s, std::vector<double> x) {
        if (x.size() != 3) throw py::value_error("expected [x, y, z]");
        return to_py(s.point_to_json(s.project(Eigen::Vector3d(x[0], x[1], x[2]))));
      });

  m.def("shorten", [](const Space& s, py::sequence pts, int k, double tol_length,
                      double tol_move, int max_iter, int m_max) {
    ShorteningParams p;
    p.k = k;
    p.tol_length = tol_length;
    p.tol_move = tol_move;
    p.max_iter = max_iter;
    p.m_max = m_max;
    const auto r = shorten_to_limit(s, curve_arg(s, pts, true), p);
    py::dict d;
    d["curve"] = points_out(s, r.curve.points());
    d["status"] = std::string(to_string(r.trace.status));
    d["length"] = r.trace.lengths.back();
    d["lengths"] = r.trace.lengths;
    d["moves"] = r.trace.moves;
    d["k"] = r.trace.k;
    d["m"] = r.trace.m;
    return d;
  }, py::arg("space"), py::arg("points"), py::arg("k") = 2, py::arg("tol_length") = 1e-7,
     py::arg("tol_move") = 0.0, py::arg("max_iter") = 10000, py::arg("m_max") = 4096);

  m.def("certify", [](const Space& s, py::sequence pts, double tol, double window) {
    return to_py(closedgeo::to_json(certify_geodesic(s, curve_arg(s, pts, true), tol, window)));
  }, py::arg("space"), py::arg("points"), py::arg("tol") = 1e-4, py::arg("window") = 0.0);

  m.def("run", [](py::dict config, const std::filesystem::path& base_dir) {
    const auto cfg = parse_config(to_json(config), base_dir);
    RunOutcome out;
    {
      py::gil_scoped_release release;
      out = closedgeo::run(cfg);
    }
    return py::make_tuple(out.exit_code, to_py(out.report));
  }, py::arg("config"), py::arg("base_dir") = std::filesystem::path("."),
     "Executes a run config (same schema as the geodesic CLI); returns (exit_code, report).");
}
