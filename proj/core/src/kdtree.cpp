#include "mlsa/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mlsa {

KdTree::KdTree(std::span<const Coord> points, int dim) : dim_(dim) {
  if (points.empty()) return;
  order_.resize(points.size());
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * points.size() / kLeafSize + 1);
  build(points, 0, static_cast<std::uint32_t>(points.size()));
}

std::int32_t KdTree::build(std::span<const Coord> points, std::uint32_t begin,
                           std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo.fill(std::numeric_limits<double>::infinity());
  node.hi.fill(-std::numeric_limits<double>::infinity());
  for (std::uint32_t i = begin; i < end; ++i) {
    const Coord& p = points[order_[i]];
    for (int a = 0; a < 3; ++a) {
      node.lo[a] = std::min(node.lo[a], p[a]);
      node.hi[a] = std::max(node.hi[a], p[a]);
    }
  }
  if (end - begin > kLeafSize) {
    int axis = 0;
    for (int a = 1; a < dim_; ++a) {
      if (node.hi[a] - node.lo[a] > node.hi[axis] - node.lo[axis]) axis = a;
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t x, std::uint32_t y) {
                       return points[x][axis] < points[y][axis];
                     });
    node.left = build(points, begin, mid);
    node.right = build(points, mid, end);
  }
  nodes_[id] = node;
  return id;
}

// Evaluated with the same operation order as the point distance, so the bound
// never exceeds the rounded distance of any point inside the box.
double KdTree::box_distance(const Node& node, const Coord& q) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    double d = 0.0;
    if (q[a] < node.lo[a]) {
      d = node.lo[a] - q[a];
    } else if (q[a] > node.hi[a]) {
      d = q[a] - node.hi[a];
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

double point_distance(const KdTree::Coord& p, const KdTree::Coord& q) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double d = p[a] - q[a];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

void KdTree::radius_search(std::span<const Coord> points, const Coord& query, double radius,
                           std::vector<std::size_t>& out) const {
  out.clear();
  if (nodes_.empty()) return;
  std::int32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (box_distance(node, query) > radius) continue;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (point_distance(points[idx], query) <= radius) out.push_back(idx);
      }
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
  std::sort(out.begin(), out.end());
}

KdTree::Hit KdTree::nearest(std::span<const Coord> points, const Coord& query) const {
  Hit best{0, std::numeric_limits<double>::infinity()};
  if (nodes_.empty()) return best;
  std::int32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (box_distance(node, query) > best.distance) continue;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        const double d = point_distance(points[idx], query);
        if (d < best.distance || (d == best.distance && idx < best.index)) best = {idx, d};
      }
    } else {
      // Visit the closer child first.
      const double dl = box_distance(nodes_[node.left], query);
      const double dr = box_distance(nodes_[node.right], query);
      if (dl <= dr) {
        stack[top++] = node.right;
        stack[top++] = node.left;
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
  }
  return best;
}

}  // namespace mlsa
