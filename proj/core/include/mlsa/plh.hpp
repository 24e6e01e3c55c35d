#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mlsa/geometry.hpp"
#include "mlsa/persistence.hpp"

namespace mlsa {

inline constexpr int kDefaultCircleResolution = 360;  // polygon vertex count in 2-D
inline constexpr int kDefaultSphereLevel = 4;          // icosahedron subdivisions in 3-D

int default_resolution(int dim);

// Unit-sphere triangulation shared by every placement with the same
// (dim, resolution): a regular polygon in 2-D, a subdivided icosahedron in 3-D.
struct SphereMesh {
  int dim = 2;
  int resolution = 0;
  std::vector<Point> directions;  // unit vectors, one per vertex
  FilteredComplex complex;        // filtration values all zero
  double max_edge_length = 0.0;   // on the unit sphere
};

// Cached, immutable; safe to call from several threads.
std::shared_ptr<const SphereMesh> sphere_mesh(int dim, int resolution);

// Discretised S_R(z): a shared mesh scaled by `radius` and moved to `center`.
class SphereComplex {
 public:
  static SphereComplex build(const Point& center, double radius, int dim, int resolution);
  SphereComplex(std::shared_ptr<const SphereMesh> mesh, const Point& center, double radius);

  int dim() const { return mesh_->dim; }
  int resolution() const { return mesh_->resolution; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  std::size_t num_vertices() const { return mesh_->directions.size(); }
  Point vertex(std::size_t i) const;
  const FilteredComplex& complex() const { return mesh_->complex; }
  double max_edge_length() const { return radius_ * mesh_->max_edge_length; }

 private:
  std::shared_ptr<const SphereMesh> mesh_;
  Point center_;
  double radius_;
};

// The sphere complex filtered by the lower star of the distance to `cloud`.
FilteredComplex plh_filtration(const PointCloud& cloud, const SphereComplex& sphere);

PersistenceDiagram plh_diagram(const PointCloud& cloud, const SphereComplex& sphere, int degree);
PersistenceDiagram plh_diagram(const PointCloud& cloud, const Point& center, double radius,
                               int degree, int resolution);

struct PlhClassCount {
  int degree;
  std::size_t count;
};

// Which classes to keep per radius, e.g. {{0, 6}} keeps the six most persistent
// degree-0 classes.
using PlhSpec = std::vector<PlhClassCount>;

std::size_t plh_feature_width(std::size_t num_radii, const PlhSpec& spec);

// For each radius (ascending) and each spec entry: the top persistences of the
// PLH diagram, infinite classes capped at the radius.
std::vector<double> plh_features(const PointCloud& cloud, const Point& center,
                                 std::span<const double> radii, const PlhSpec& spec,
                                 int resolution);

}  // namespace mlsa
