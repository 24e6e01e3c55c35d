#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

namespace mlsa {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Simplicial complex of dimension <= 2 with one filtration value per simplex.
// Faces must be added before their cofaces; vertex indices are assigned in
// insertion order.
class FilteredComplex {
 public:
  using Edge = std::array<std::uint32_t, 2>;
  using Triangle = std::array<std::uint32_t, 3>;

  std::uint32_t add_vertex(double value);
  std::uint32_t add_edge(std::uint32_t a, std::uint32_t b, double value);
  std::uint32_t add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c, double value);

  std::size_t num_vertices() const { return vertex_values_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  // Vertex pairs/triples are stored sorted ascending.
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const Triangle& triangle(std::size_t i) const { return triangles_[i]; }
  // Edge indices of a triangle's boundary.
  const std::array<std::uint32_t, 3>& triangle_edges(std::size_t i) const {
    return triangle_edges_[i];
  }
  std::uint32_t find_edge(std::uint32_t a, std::uint32_t b) const;

  double vertex_value(std::size_t i) const { return vertex_values_[i]; }
  double edge_value(std::size_t i) const { return edge_values_[i]; }
  double triangle_value(std::size_t i) const { return triangle_values_[i]; }

  void set_vertex_value(std::size_t i, double v) { vertex_values_[i] = v; }
  void set_edge_value(std::size_t i, double v) { edge_values_[i] = v; }
  void set_triangle_value(std::size_t i, double v) { triangle_values_[i] = v; }

  // Lower-star filtration: vertices take the given values, every other simplex
  // the max over its vertices.
  void assign_lower_star(std::span<const double> vertex_values);

  // Throws std::invalid_argument on non-finite values or when a simplex has a
  // smaller value than one of its faces.
  void validate() const;

 private:
  static std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::vector<double> vertex_values_;
  std::vector<Edge> edges_;
  std::vector<double> edge_values_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<std::uint32_t, 3>> triangle_edges_;
  std::vector<double> triangle_values_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_lookup_;
};

struct Dot {
  double birth;
  double death;  // kInfinity for classes that never die

  double persistence() const { return death - birth; }
  bool infinite() const { return death == kInfinity; }
  friend bool operator==(const Dot&, const Dot&) = default;
};

struct PersistenceDiagram {
  int degree = 0;
  std::vector<Dot> dots;

  std::size_t size() const { return dots.size(); }
  bool empty() const { return dots.empty(); }
  std::size_t count_infinite() const;
  // Dots sorted by (birth, death); handy for comparisons.
  PersistenceDiagram sorted() const;
};

PersistenceDiagram persistence_deg0(const FilteredComplex& complex);
PersistenceDiagram persistence_deg1(const FilteredComplex& complex);
PersistenceDiagram persistence(const FilteredComplex& complex, int degree);

// Replaces infinite deaths by cap, clamps deaths to cap and drops dots born at
// or after cap.
PersistenceDiagram restrict_to_cap(const PersistenceDiagram& diagram, double cap);

// "k birth death" per line, "inf" for an infinite death.
void write_diagram(std::ostream& os, const PersistenceDiagram& diagram);
// Reads every dot of the requested degree; lines of other degrees are skipped.
PersistenceDiagram read_diagram(std::istream& is, int degree);

}  // namespace mlsa
