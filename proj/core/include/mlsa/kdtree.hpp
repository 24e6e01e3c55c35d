#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mlsa {

// Static k-d tree over an external point array. The tree stores only a
// permutation and node bounds; callers pass the same point span they built with.
class KdTree {
 public:
  using Coord = std::array<double, 3>;

  KdTree() = default;
  KdTree(std::span<const Coord> points, int dim);

  void radius_search(std::span<const Coord> points, const Coord& query, double radius,
                     std::vector<std::size_t>& out) const;

  struct Hit {
    std::size_t index;
    double distance;
  };
  Hit nearest(std::span<const Coord> points, const Coord& query) const;

  bool empty() const { return nodes_.empty(); }

 private:
  static constexpr std::uint32_t kLeafSize = 8;

  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    Coord lo{};
    Coord hi{};
  };

  std::int32_t build(std::span<const Coord> points, std::uint32_t begin, std::uint32_t end);
  static double box_distance(const Node& node, const Coord& q);

  int dim_ = 0;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace mlsa
