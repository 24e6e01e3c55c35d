#include "mlsa/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mlsa/text_io.hpp"
#include "mlsa/union_find.hpp"

namespace mlsa {

std::uint32_t FilteredComplex::add_vertex(double value) {
  vertex_values_.push_back(value);
  return static_cast<std::uint32_t>(vertex_values_.size() - 1);
}

std::uint32_t FilteredComplex::add_edge(std::uint32_t a, std::uint32_t b, double value) {
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
  if (a >= num_vertices() || b >= num_vertices()) {
    throw std::invalid_argument("edge references a missing vertex");
  }
  if (a > b) std::swap(a, b);
  const auto [it, inserted] =
      edge_lookup_.emplace(edge_key(a, b), static_cast<std::uint32_t>(edges_.size()));
  if (!inserted) throw std::invalid_argument("duplicate edge");
  edges_.push_back({a, b});
  edge_values_.push_back(value);
  return it->second;
}

std::uint32_t FilteredComplex::find_edge(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  const auto it = edge_lookup_.find(edge_key(a, b));
  if (it == edge_lookup_.end()) throw std::invalid_argument("missing face: edge not present");
  return it->second;
}

std::uint32_t FilteredComplex::add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                            double value) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw std::invalid_argument("triangle vertices must differ");
  const std::array<std::uint32_t, 3> e{find_edge(t[0], t[1]), find_edge(t[0], t[2]),
                                       find_edge(t[1], t[2])};
  triangles_.push_back(t);
  triangle_edges_.push_back(e);
  triangle_values_.push_back(value);
  return static_cast<std::uint32_t>(triangles_.size() - 1);
}

void FilteredComplex::assign_lower_star(std::span<const double> vertex_values) {
  if (vertex_values.size() != vertex_values_.size()) {
    throw std::invalid_argument("lower-star assignment needs one value per vertex");
  }
  std::copy(vertex_values.begin(), vertex_values.end(), vertex_values_.begin());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    edge_values_[i] = std::max(vertex_values_[edges_[i][0]], vertex_values_[edges_[i][1]]);
  }
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const auto& t = triangles_[i];
    triangle_values_[i] =
        std::max({vertex_values_[t[0]], vertex_values_[t[1]], vertex_values_[t[2]]});
  }
}

void FilteredComplex::validate() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(vertex_values_) || !finite(edge_values_) || !finite(triangle_values_)) {
    throw std::invalid_argument("filtration values must be finite");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edge_values_[i] < vertex_values_[edges_[i][0]] ||
        edge_values_[i] < vertex_values_[edges_[i][1]]) {
      throw std::invalid_argument("filtration violates face ordering");
    }
  }
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    for (std::uint32_t e : triangle_edges_[i]) {
      if (triangle_values_[i] < edge_values_[e]) {
        throw std::invalid_argument("filtration violates face ordering");
      }
    }
  }
}

std::size_t PersistenceDiagram::count_infinite() const {
  return static_cast<std::size_t>(
      std::count_if(dots.begin(), dots.end(), [](const Dot& d) { return d.infinite(); }));
}

PersistenceDiagram PersistenceDiagram::sorted() const {
  PersistenceDiagram out = *this;
  std::sort(out.dots.begin(), out.dots.end(), [](const Dot& a, const Dot& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return out;
}

namespace {

// Filtration order on edges: (value, lexicographic vertex indices).
std::vector<std::uint32_t> edge_order(const FilteredComplex& c) {
  std::vector<std::uint32_t> order(c.num_edges());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (c.edge_value(x) != c.edge_value(y)) return c.edge_value(x) < c.edge_value(y);
    return c.edge(x) < c.edge(y);
  });
  return order;
}

struct ZeroDimResult {
  PersistenceDiagram diagram;
  std::vector<bool> negative_edge;  // edge merged two components
};

// Union-find sweep over edges in filtration order. Each root remembers its
// oldest vertex; on a merge the root whose oldest vertex comes later in the
// (value, index) order dies.
ZeroDimResult sweep_components(const FilteredComplex& c, const std::vector<std::uint32_t>& order) {
  const std::size_t n = c.num_vertices();
  UnionFind sets(n);
  std::vector<std::uint32_t> elder(n);
  std::iota(elder.begin(), elder.end(), 0u);
  auto older = [&](std::uint32_t u, std::uint32_t v) {
    if (c.vertex_value(u) != c.vertex_value(v)) return c.vertex_value(u) < c.vertex_value(v);
    return u < v;
  };

  ZeroDimResult result;
  result.diagram.degree = 0;
  result.negative_edge.assign(c.num_edges(), false);
  for (std::uint32_t e : order) {
    const std::uint32_t ra = sets.find(c.edge(e)[0]);
    const std::uint32_t rb = sets.find(c.edge(e)[1]);
    if (ra == rb) continue;
    result.negative_edge[e] = true;
    const std::uint32_t survivor = older(elder[ra], elder[rb]) ? elder[ra] : elder[rb];
    const std::uint32_t victim = survivor == elder[ra] ? elder[rb] : elder[ra];
    const double birth = c.vertex_value(victim);
    const double death = c.edge_value(e);
    if (death > birth) result.diagram.dots.push_back({birth, death});
    elder[sets.unite(ra, rb)] = survivor;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (sets.find(v) == v) result.diagram.dots.push_back({c.vertex_value(elder[v]), kInfinity});
  }
  return result;
}

// Symmetric difference of two sorted index lists.
void add_columns(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
                 std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram persistence_deg0(const FilteredComplex& complex) {
  complex.validate();
  return sweep_components(complex, edge_order(complex)).diagram;
}

PersistenceDiagram persistence_deg1(const FilteredComplex& complex) {
  complex.validate();
  const std::vector<std::uint32_t> order = edge_order(complex);
  const ZeroDimResult zero = sweep_components(complex, order);

  std::vector<std::uint32_t> edge_rank(complex.num_edges());
  for (std::uint32_t r = 0; r < order.size(); ++r) edge_rank[order[r]] = r;

  std::vector<std::uint32_t> tri_order(complex.num_triangles());
  std::iota(tri_order.begin(), tri_order.end(), 0u);
  std::sort(tri_order.begin(), tri_order.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (complex.triangle_value(x) != complex.triangle_value(y)) {
      return complex.triangle_value(x) < complex.triangle_value(y);
    }
    return complex.triangle(x) < complex.triangle(y);
  });

  // Standard column reduction of the edge-triangle boundary matrix over Z/2,
  // rows indexed by edge rank.
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> pivot_owner(order.size(), kNone);
  std::vector<std::vector<std::uint32_t>> columns(tri_order.size());
  std::vector<bool> killed(complex.num_edges(), false);
  std::vector<std::uint32_t> scratch;

  PersistenceDiagram diagram;
  diagram.degree = 1;
  for (std::uint32_t j = 0; j < tri_order.size(); ++j) {
    const std::uint32_t t = tri_order[j];
    auto& col = columns[j];
    for (std::uint32_t e : complex.triangle_edges(t)) col.push_back(edge_rank[e]);
    std::sort(col.begin(), col.end());
    while (!col.empty() && pivot_owner[col.back()] != kNone) {
      add_columns(col, columns[pivot_owner[col.back()]], scratch);
    }
    if (col.empty()) continue;
    pivot_owner[col.back()] = j;
    const std::uint32_t e = order[col.back()];
    killed[e] = true;
    const double birth = complex.edge_value(e);
    const double death = complex.triangle_value(t);
    if (death > birth) diagram.dots.push_back({birth, death});
  }
  for (std::uint32_t e : order) {
    if (!zero.negative_edge[e] && !killed[e]) {
      diagram.dots.push_back({complex.edge_value(e), kInfinity});
    }
  }
  return diagram;
}

PersistenceDiagram persistence(const FilteredComplex& complex, int degree) {
  switch (degree) {
    case 0:
      return persistence_deg0(complex);
    case 1:
      return persistence_deg1(complex);
    default:
      throw std::invalid_argument("only degrees 0 and 1 are supported");
  }
}

PersistenceDiagram restrict_to_cap(const PersistenceDiagram& diagram, double cap) {
  PersistenceDiagram out;
  out.degree = diagram.degree;
  for (const Dot& d : diagram.dots) {
    if (d.birth >= cap) continue;
    out.dots.push_back({d.birth, std::min(d.death, cap)});
  }
  return out;
}

void write_diagram(std::ostream& os, const PersistenceDiagram& diagram) {
  for (const Dot& d : diagram.dots) {
    os << diagram.degree << ' ' << format_double(d.birth) << ' ' << format_double(d.death)
       << '\n';
  }
}

PersistenceDiagram read_diagram(std::istream& is, int degree) {
  PersistenceDiagram out;
  out.degree = degree;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 3) throw ParseError(lineno, "expected 'k birth death'");
    const auto k = parse_integer(tokens[0]);
    const auto birth = parse_double(tokens[1]);
    const auto death = parse_double(tokens[2]);
    if (!k || !birth || !death || std::isinf(*birth)) {
      throw ParseError(lineno, "malformed diagram entry");
    }
    if (*death < *birth) throw ParseError(lineno, "death precedes birth");
    if (*k == degree) out.dots.push_back({*birth, *death});
  }
  return out;
}

}  // namespace mlsa
