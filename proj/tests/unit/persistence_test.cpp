#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "mlsa/persistence.hpp"
#include "mlsa/random.hpp"
#include "oracles/homology.hpp"
#include "oracles/random_complex.hpp"

using mlsa::Dot;
using mlsa::FilteredComplex;
using mlsa::kInfinity;
using mlsa::PersistenceDiagram;

namespace {

FilteredComplex circle(const std::vector<double>& values) {
  FilteredComplex c;
  for (double v : values) c.add_vertex(v);
  const auto n = static_cast<std::uint32_t>(values.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    c.add_edge(i, j, std::max(values[i], values[j]));
  }
  return c;
}

std::vector<Dot> dots_of(const PersistenceDiagram& d) { return d.sorted().dots; }

std::vector<Dot> sorted(std::vector<Dot> dots) {
  PersistenceDiagram d;
  d.dots = std::move(dots);
  return d.sorted().dots;
}

}  // namespace

TEST_CASE("worked example: four components on a circle") {
  const double a1 = 0.1, a2 = 0.15, a3 = 0.2, a4 = 0.5;
  // A, B close together; D appears late near C; two wide gaps close at a4.
  const auto c = circle({0.0, a2, 0.0, 0.3, a4, 0.3, 0.0, a3, a1, 0.3, a4, 0.3});
  const auto d0 = mlsa::persistence_deg0(c);
  CHECK(dots_of(d0) == sorted({{0, kInfinity}, {0, a4}, {0, a2}, {a1, a3}}));
  const auto capped = mlsa::restrict_to_cap(d0, 1.0);
  CHECK(dots_of(capped) == sorted({{0, 1.0}, {0, a4}, {0, a2}, {a1, a3}}));
  CHECK(dots_of(mlsa::persistence_deg1(c)) == std::vector<Dot>{{a4, kInfinity}});
}

TEST_CASE("small examples") {
  FilteredComplex single;
  single.add_vertex(0.7);
  CHECK(dots_of(mlsa::persistence_deg0(single)) == std::vector<Dot>{{0.7, kInfinity}});

  FilteredComplex path;
  path.add_vertex(0);
  path.add_vertex(1);
  path.add_vertex(0);
  path.add_edge(0, 1, 1);
  path.add_edge(1, 2, 1);
  CHECK(dots_of(mlsa::persistence_deg0(path)) == sorted({{0, kInfinity}, {0, 1}}));

  const auto flat = circle(std::vector<double>(6, 0.0));
  CHECK(dots_of(mlsa::persistence_deg1(flat)) == std::vector<Dot>{{0, kInfinity}});
  auto late = flat;
  late.set_edge_value(3, 1.0);
  CHECK(dots_of(mlsa::persistence_deg1(late)) == std::vector<Dot>{{1, kInfinity}});

  // A filled triangle kills its loop.
  FilteredComplex tri;
  for (int i = 0; i < 3; ++i) tri.add_vertex(0);
  tri.add_edge(0, 1, 1);
  tri.add_edge(1, 2, 2);
  tri.add_edge(0, 2, 3);
  tri.add_triangle(0, 1, 2, 5);
  CHECK(dots_of(mlsa::persistence_deg1(tri)) == std::vector<Dot>{{3, 5}});
  CHECK(dots_of(mlsa::persistence_deg0(tri)) == sorted({{0, kInfinity}, {0, 1}, {0, 2}}));
}

TEST_CASE("invalid complexes are rejected") {
  FilteredComplex c;
  c.add_vertex(1.0);
  c.add_vertex(0.0);
  c.add_edge(0, 1, 0.5);
  CHECK_THROWS_WITH_AS(mlsa::persistence_deg0(c), "filtration violates face ordering",
                       std::invalid_argument);
  FilteredComplex nan;
  nan.add_vertex(std::nan(""));
  CHECK_THROWS_WITH_AS(mlsa::persistence_deg0(nan), "filtration values must be finite",
                       std::invalid_argument);
  FilteredComplex open;
  for (int i = 0; i < 3; ++i) open.add_vertex(0);
  open.add_edge(0, 1, 0);
  open.add_edge(1, 2, 0);
  CHECK_THROWS_WITH_AS(open.add_triangle(0, 1, 2, 0), "missing face: edge not present",
                       std::invalid_argument);
}

TEST_CASE("restrict_to_cap examples") {
  PersistenceDiagram d;
  d.dots = {{0.1, kInfinity}, {0.2, 0.9}, {0.0, 0.3}, {0.6, 0.8}};
  const auto r = mlsa::restrict_to_cap(d, 0.5);
  CHECK(dots_of(r) == sorted({{0.1, 0.5}, {0.2, 0.5}, {0.0, 0.3}}));
}

TEST_CASE("diagram text round trip") {
  PersistenceDiagram d;
  d.degree = 1;
  d.dots = {{0.1, kInfinity}, {0.125, 0.3}};
  std::stringstream ss;
  mlsa::write_diagram(ss, d);
  ss << "0 0 1\n";
  const auto back = mlsa::read_diagram(ss, 1);
  CHECK(back.degree == 1);
  CHECK(back.dots == d.dots);
}

TEST_CASE("random complexes match the rank-invariant oracle") {
  mlsa::Rng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const auto c = oracle::random_complex(rng, 12);
    for (int k = 0; k <= 1; ++k) {
      const auto fast = mlsa::persistence(c, k);
      const auto slow = oracle::brute_force_diagram(c, k);
      CHECK(dots_of(fast) == dots_of(slow));
    }
  }
}

TEST_CASE("diagram invariants on random complexes") {
  mlsa::Rng rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    const auto c = oracle::random_complex(rng, 12);
    const oracle::Sweep sweep(c);
    const auto d0 = mlsa::persistence_deg0(c);
    const auto d1 = mlsa::persistence_deg1(c);
    for (const auto& d : {d0, d1}) {
      for (const auto& dot : d.dots) CHECK(dot.birth < dot.death);
    }
    // Infinite dots count the Betti numbers of the full complex.
    const std::size_t m = sweep.values.size();
    CHECK(d0.count_infinite() == static_cast<std::size_t>(sweep.betti(0, m)));
    CHECK(d1.count_infinite() == static_cast<std::size_t>(sweep.betti(1, m)));
    // Euler characteristic at the top of the filtration.
    const long chi = static_cast<long>(c.num_vertices()) - static_cast<long>(c.num_edges()) +
                     static_cast<long>(c.num_triangles());
    const long b2 = static_cast<long>(c.num_triangles()) -
                    oracle::gf2_rank(sweep.boundaries(1, sweep.values.back()));
    CHECK(chi == static_cast<long>(d0.count_infinite()) -
                     static_cast<long>(d1.count_infinite()) + b2);
  }
}
