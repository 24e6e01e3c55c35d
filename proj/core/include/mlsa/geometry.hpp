#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mlsa/kdtree.hpp"

namespace mlsa {

// Points live in R^2 or R^3. A 2-D point keeps its third coordinate at zero so
// every distance computation runs on the same fixed-size type.
using Point = std::array<double, 3>;

Point make_point(std::span<const double> coords);

double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

class Ball {
 public:
  Ball(const Point& center, double radius);

  const Point& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point center_;
  double radius_;
};

// Immutable indexed point sample. Indices follow input order and are the stable
// identifiers used by every downstream stage.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int dim, std::vector<Point> points);

  static PointCloud from_rows(int dim, const std::vector<std::vector<double>>& rows);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

  // Indices i with ||p_i - center|| <= radius, ascending.
  std::vector<std::size_t> range_query(const Ball& ball) const;
  void range_query(const Ball& ball, std::vector<std::size_t>& out) const;

  // Distance from x to its nearest sample point.
  double dist_to_cloud(const Point& x) const;
  std::size_t nearest(const Point& x) const;

 private:
  int dim_ = 2;
  std::vector<Point> points_;
  KdTree index_;
};

double hausdorff(const PointCloud& a, const PointCloud& b);

}  // namespace mlsa
