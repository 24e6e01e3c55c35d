#include <doctest.h>

#include <cmath>
#include <vector>

#include "mlsa/diagram_metrics.hpp"
#include "mlsa/random.hpp"
#include "oracles/matching.hpp"

using mlsa::Dot;
using mlsa::kInfinity;
using mlsa::PersistenceDiagram;

namespace {

PersistenceDiagram dgm(std::vector<Dot> dots, int degree = 0) {
  PersistenceDiagram d;
  d.degree = degree;
  d.dots = std::move(dots);
  return d;
}

PersistenceDiagram random_diagram(mlsa::Rng& rng, std::size_t max_dots, std::size_t infinite) {
  PersistenceDiagram d;
  const auto n = rng.below(max_dots + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    // Quantised coordinates so equal costs show up.
    const double b = 0.25 * static_cast<double>(rng.below(8));
    if (i < infinite) {
      d.dots.push_back({b, kInfinity});
    } else {
      d.dots.push_back({b, b + 0.25 * static_cast<double>(1 + rng.below(8)) + rng.uniform() * 0.1});
    }
  }
  return d;
}

}  // namespace

TEST_CASE("bottleneck examples") {
  const auto a = dgm({{0, 2}, {1, 3}, {0, kInfinity}});
  CHECK(mlsa::bottleneck(a, a) == 0.0);
  CHECK(mlsa::bottleneck(dgm({{0, 2}}), dgm({{0, 2.5}})) == doctest::Approx(0.5));
  CHECK(mlsa::bottleneck(dgm({{0, 2}}), dgm({})) == doctest::Approx(1.0));
  CHECK(mlsa::bottleneck(dgm({}), dgm({})) == 0.0);
  CHECK(std::isinf(mlsa::bottleneck(dgm({{0, kInfinity}}), dgm({{0, 5}}))));
  CHECK(mlsa::bottleneck(dgm({{0, kInfinity}}), dgm({{0.3, kInfinity}})) == doctest::Approx(0.3));
  CHECK_THROWS_AS(mlsa::bottleneck(dgm({}, 0), dgm({}, 1)), std::invalid_argument);
}

TEST_CASE("wasserstein examples") {
  const auto a = dgm({{0, 2}, {1, 3}});
  for (double p : {1.0, 2.0, 3.5}) CHECK(mlsa::wasserstein(a, a, p) == 0.0);
  CHECK(mlsa::wasserstein(dgm({{0, 2}}), dgm({{0, 2.5}}), 1) == doctest::Approx(0.5));
  // Matching (0,2) to itself and sending (0,4) to the diagonal costs 2 in the
  // l-infinity ground metric; the crossed matching costs 2 + 1.
  CHECK(mlsa::wasserstein(dgm({{0, 2}, {0, 4}}), dgm({{0, 2}}), 1) == doctest::Approx(2.0));
  CHECK(mlsa::wasserstein(dgm({{0, 2}}), dgm({}), 2) == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(mlsa::wasserstein(a, a, 0.5), "wasserstein order p must be >= 1",
                       std::invalid_argument);
  CHECK_THROWS_AS(mlsa::wasserstein(dgm({}, 0), dgm({}, 1), 1), std::invalid_argument);
}

TEST_CASE("metrics match exhaustive enumeration") {
  mlsa::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t inf_a = trial % 3 == 0 ? rng.below(3) : 0;
    const std::size_t inf_b = trial % 3 == 0 ? (rng.below(2) ? inf_a : rng.below(3)) : 0;
    const auto a = random_diagram(rng, 6, inf_a);
    const auto b = random_diagram(rng, 6, inf_b);
    const double bn = oracle::bottleneck(a, b);
    const double w1 = oracle::wasserstein(a, b, 1.0);
    const double w2 = oracle::wasserstein(a, b, 2.0);
    if (std::isinf(bn)) {
      CHECK(std::isinf(mlsa::bottleneck(a, b)));
      CHECK(std::isinf(mlsa::wasserstein(a, b, 1.0)));
      continue;
    }
    CHECK(std::abs(mlsa::bottleneck(a, b) - bn) <= 1e-9);
    CHECK(std::abs(mlsa::wasserstein(a, b, 1.0) - w1) <= 1e-9);
    CHECK(std::abs(mlsa::wasserstein(a, b, 2.0) - w2) <= 1e-9);
  }
}

TEST_CASE("bottleneck is a pseudometric bounded by wasserstein") {
  mlsa::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_diagram(rng, 8, 1);
    const auto b = random_diagram(rng, 8, 1);
    const auto c = random_diagram(rng, 8, 1);
    if (a.count_infinite() != b.count_infinite() || b.count_infinite() != c.count_infinite()) {
      continue;
    }
    const double ab = mlsa::bottleneck(a, b);
    CHECK(ab == mlsa::bottleneck(b, a));
    CHECK(mlsa::bottleneck(a, c) <= ab + mlsa::bottleneck(b, c) + 1e-9);
    for (double p : {1.0, 2.0, 4.0}) CHECK(ab <= mlsa::wasserstein(a, b, p) + 1e-9);
  }
}

TEST_CASE("top-k persistences") {
  CHECK(mlsa::top_k_persistences(dgm({}), 6, 0.3) == std::vector<double>(6, 0.0));
  const auto two = mlsa::top_k_persistences(dgm({{0, 0.3}, {0.1, 0.2}}), 2, 0.3);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(0.3));
  CHECK(two[1] == doctest::Approx(0.1));
  CHECK(mlsa::top_k_persistences(dgm({{0, kInfinity}}), 3, 0.3) ==
        std::vector<double>{0.3, 0.0, 0.0});
  const auto trunc = mlsa::top_k_persistences(dgm({{0, 1}, {0, 0.5}, {0, 0.7}}), 2, 10);
  CHECK(trunc == std::vector<double>{1.0, 0.7});
}
