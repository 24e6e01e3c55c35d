#include "mlsa/plh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "mlsa/diagram_metrics.hpp"

namespace mlsa {

namespace {

constexpr int kMaxSphereLevel = 7;

Point normalized(const Point& p) {
  const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return {p[0] / n, p[1] / n, p[2] / n};
}

void finish_edges(SphereMesh& mesh) {
  double longest = 0.0;
  for (std::size_t e = 0; e < mesh.complex.num_edges(); ++e) {
    const auto& edge = mesh.complex.edge(e);
    longest = std::max(longest, distance(mesh.directions[edge[0]], mesh.directions[edge[1]]));
  }
  mesh.max_edge_length = longest;
}

SphereMesh build_circle(int vertex_count) {
  if (vertex_count < 3) {
    throw std::invalid_argument("circle resolution must be at least 3 vertices, got " +
                                std::to_string(vertex_count));
  }
  SphereMesh mesh;
  mesh.dim = 2;
  mesh.resolution = vertex_count;
  for (int i = 0; i < vertex_count; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / vertex_count;
    mesh.directions.push_back({std::cos(angle), std::sin(angle), 0.0});
    mesh.complex.add_vertex(0.0);
  }
  for (int i = 0; i < vertex_count; ++i) {
    mesh.complex.add_edge(static_cast<std::uint32_t>(i),
                          static_cast<std::uint32_t>((i + 1) % vertex_count), 0.0);
  }
  finish_edges(mesh);
  return mesh;
}

SphereMesh build_icosphere(int level) {
  if (level < 0 || level > kMaxSphereLevel) {
    throw std::invalid_argument("sphere subdivision level must be in [0, " +
                                std::to_string(kMaxSphereLevel) + "], got " +
                                std::to_string(level));
  }
  const double phi = std::numbers::phi;
  std::vector<Point> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (Point& v : verts) v = normalized(v);
  std::vector<std::array<std::uint32_t, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      const auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const Point& p = verts[a];
      const Point& q = verts[b];
      verts.push_back(normalized({p[0] + q[0], p[1] + q[1], p[2] + q[2]}));
      const auto id = static_cast<std::uint32_t>(verts.size() - 1);
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<std::array<std::uint32_t, 3>> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const std::uint32_t ab = midpoint(f[0], f[1]);
      const std::uint32_t bc = midpoint(f[1], f[2]);
      const std::uint32_t ca = midpoint(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }

  SphereMesh mesh;
  mesh.dim = 3;
  mesh.resolution = level;
  mesh.directions = std::move(verts);
  for (std::size_t i = 0; i < mesh.directions.size(); ++i) mesh.complex.add_vertex(0.0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) edges.push_back(std::minmax(f[k], f[(k + 1) % 3]));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [a, b] : edges) mesh.complex.add_edge(a, b, 0.0);
  for (const auto& f : faces) mesh.complex.add_triangle(f[0], f[1], f[2], 0.0);
  finish_edges(mesh);
  return mesh;
}

}  // namespace

int default_resolution(int dim) {
  return dim == 3 ? kDefaultSphereLevel : kDefaultCircleResolution;
}

std::shared_ptr<const SphereMesh> sphere_mesh(int dim, int resolution) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("sphere dimension must be 2 or 3");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SphereMesh>> cache;
  {
    std::lock_guard lock(mutex);
    const auto it = cache.find({dim, resolution});
    if (it != cache.end()) return it->second;
  }
  auto mesh = std::make_shared<const SphereMesh>(dim == 2 ? build_circle(resolution)
                                                          : build_icosphere(resolution));
  std::lock_guard lock(mutex);
  return cache.try_emplace({dim, resolution}, std::move(mesh)).first->second;
}

SphereComplex SphereComplex::build(const Point& center, double radius, int dim, int resolution) {
  return SphereComplex(sphere_mesh(dim, resolution), center, radius);
}

SphereComplex::SphereComplex(std::shared_ptr<const SphereMesh> mesh, const Point& center,
                             double radius)
    : mesh_(std::move(mesh)), center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sphere radius must be positive and finite");
  }
}

Point SphereComplex::vertex(std::size_t i) const {
  const Point& u = mesh_->directions[i];
  return {center_[0] + radius_ * u[0], center_[1] + radius_ * u[1], center_[2] + radius_ * u[2]};
}

FilteredComplex plh_filtration(const PointCloud& cloud, const SphereComplex& sphere) {
  if (cloud.dim() != sphere.dim()) {
    throw std::invalid_argument("cloud and sphere dimensions differ");
  }
  std::vector<double> values(sphere.num_vertices());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = cloud.dist_to_cloud(sphere.vertex(i));
  FilteredComplex complex = sphere.complex();
  complex.assign_lower_star(values);
  return complex;
}

PersistenceDiagram plh_diagram(const PointCloud& cloud, const SphereComplex& sphere, int degree) {
  return persistence(plh_filtration(cloud, sphere), degree);
}

PersistenceDiagram plh_diagram(const PointCloud& cloud, const Point& center, double radius,
                               int degree, int resolution) {
  return plh_diagram(cloud, SphereComplex::build(center, radius, cloud.dim(), resolution), degree);
}

std::size_t plh_feature_width(std::size_t num_radii, const PlhSpec& spec) {
  std::size_t per_radius = 0;
  for (const auto& entry : spec) per_radius += entry.count;
  return num_radii * per_radius;
}

std::vector<double> plh_features(const PointCloud& cloud, const Point& center,
                                 std::span<const double> radii, const PlhSpec& spec,
                                 int resolution) {
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("radii must be strictly increasing");
  }
  const auto mesh = sphere_mesh(cloud.dim(), resolution);
  std::vector<double> out;
  out.reserve(plh_feature_width(radii.size(), spec));
  for (double radius : radii) {
    const FilteredComplex complex = plh_filtration(cloud, SphereComplex(mesh, center, radius));
    for (const auto& entry : spec) {
      const auto top = top_k_persistences(persistence(complex, entry.degree), entry.count, radius);
      out.insert(out.end(), top.begin(), top.end());
    }
  }
  return out;
}

}  // namespace mlsa
