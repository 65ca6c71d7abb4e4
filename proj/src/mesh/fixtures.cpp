#include "closedgeo/mesh/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace closedgeo::fixtures {

TriMesh cube() {
  std::vector<Eigen::Vector3d> v;
  for (int i = 0; i < 8; ++i) v.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  std::vector<TriMesh::Face> f = {
      {0, 2, 3}, {0, 3, 1},  // z = 0
      {4, 5, 7}, {4, 7, 6},  // z = 1
      {0, 1, 5}, {0, 5, 4},  // y = 0
      {3, 2, 6}, {3, 6, 7},  // y = 1
      {2, 0, 4}, {2, 4, 6},  // x = 0
      {1, 3, 7}, {1, 7, 5},  // x = 1
  };
  return TriMesh(std::move(v), std::move(f));
}

TriMesh icosphere(int level) {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Eigen::Vector3d> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto& p : v) p.normalize();
  std::vector<TriMesh::Face> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<TriMesh::Face> next;
    next.reserve(4 * f.size());
    for (const auto& t : f) {
      const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    f = std::move(next);
  }
  return TriMesh(std::move(v), std::move(f));
}

TriMesh flat_patch(int nx, int ny, double cell) {
  std::vector<Eigen::Vector3d> v;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) v.emplace_back(i * cell, j * cell, 0.0);
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<TriMesh::Face> f;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriMesh(std::move(v), std::move(f));
}

}  // namespace closedgeo::fixtures
