#include "closedgeo/mesh/obj_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "closedgeo/error.hpp"

namespace closedgeo {

namespace {

constexpr std::string_view kWhere = "mesh-backend/load_mesh";

int parse_index(const std::string& token, int vertex_count, int line_no) {
  const std::string head = token.substr(0, token.find('/'));
  try {
    std::size_t used = 0;
    const int idx = std::stoi(head, &used);
    if (used != head.size() || idx == 0) throw std::invalid_argument(head);
    return idx > 0 ? idx - 1 : vertex_count + idx;
  } catch (const std::exception&) {
    raise(ErrorKind::ParseError, kWhere,
          "line " + std::to_string(line_no) + ": bad vertex index '" + token + "'");
  }
}

}  // namespace

TriMesh parse_obj(std::istream& in) {
  std::vector<Eigen::Vector3d> positions;
  std::vector<TriMesh::Face> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Eigen::Vector3d p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        raise(ErrorKind::ParseError, kWhere,
              "line " + std::to_string(line_no) + ": malformed vertex");
      }
      positions.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(t);
      const auto face_id = faces.size();
      if (tokens.size() != 3) {
        raise(ErrorKind::ParseError, kWhere,
              "face " + std::to_string(face_id) + " (line " +
                  std::to_string(line_no) + ") has " +
                  std::to_string(tokens.size()) +
                  " vertices; only triangles are supported");
      }
      const int nv = static_cast<int>(positions.size());
      faces.push_back({parse_index(tokens[0], nv, line_no),
                       parse_index(tokens[1], nv, line_no),
                       parse_index(tokens[2], nv, line_no)});
    }
  }
  return TriMesh(std::move(positions), std::move(faces));
}

TriMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoError, kWhere, "cannot open " + path.string());
  return parse_obj(in);
}

void write_obj(std::ostream& out, const TriMesh& mesh) {
  out << std::setprecision(17);
  for (const auto& p : mesh.positions()) {
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (const auto& f : mesh.faces()) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void save_mesh(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::IoError, "mesh-backend/save_mesh", "cannot write " + path.string());
  write_obj(out, mesh);
}

void write_polyline_obj(std::ostream& out,
                        const std::vector<Eigen::Vector3d>& points, bool closed) {
  out << std::setprecision(17);
  for (const auto& p : points) {
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  out << 'l';
  for (std::size_t i = 0; i < points.size(); ++i) out << ' ' << i + 1;
  if (closed && !points.empty()) out << ' ' << 1;
  out << '\n';
}

}  // namespace closedgeo
