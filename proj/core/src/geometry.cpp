#include "mlsa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlsa {

Point make_point(std::span<const double> coords) {
  if (coords.size() < 2 || coords.size() > 3) {
    throw std::invalid_argument("point must have 2 or 3 coordinates, got " +
                                std::to_string(coords.size()));
  }
  Point p{0.0, 0.0, 0.0};
  std::copy(coords.begin(), coords.end(), p.begin());
  return p;
}

double squared_distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

Ball::Ball(const Point& center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
}

PointCloud::PointCloud(int dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("point cloud dimension must be 2 or 3");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    for (int a = 0; a < 3; ++a) {
      if (!std::isfinite(p[a])) {
        throw std::invalid_argument("point " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
    if (dim == 2 && p[2] != 0.0) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " has a third coordinate in a 2-D cloud");
    }
  }
  index_ = KdTree(points_, dim_);
}

PointCloud PointCloud::from_rows(int dim, const std::vector<std::vector<double>>& rows) {
  std::vector<Point> points;
  points.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " coordinates, expected " +
                                  std::to_string(dim));
    }
    points.push_back(make_point(rows[i]));
  }
  return PointCloud(dim, std::move(points));
}

std::vector<std::size_t> PointCloud::range_query(const Ball& ball) const {
  std::vector<std::size_t> out;
  range_query(ball, out);
  return out;
}

void PointCloud::range_query(const Ball& ball, std::vector<std::size_t>& out) const {
  index_.radius_search(points_, ball.center(), ball.radius(), out);
}

double PointCloud::dist_to_cloud(const Point& x) const {
  if (points_.empty()) throw std::invalid_argument("empty cloud has no distance function");
  return index_.nearest(points_, x).distance;
}

std::size_t PointCloud::nearest(const Point& x) const {
  if (points_.empty()) throw std::invalid_argument("empty cloud has no distance function");
  return index_.nearest(points_, x).index;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff distance needs nonempty clouds");
  double worst = 0.0;
  for (const Point& p : a.points()) worst = std::max(worst, b.dist_to_cloud(p));
  for (const Point& p : b.points()) worst = std::max(worst, a.dist_to_cloud(p));
  return worst;
}

}  // namespace mlsa
