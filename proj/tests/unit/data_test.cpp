#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mlsa/data.hpp"
#include "mlsa/plh.hpp"
#include "mlsa/text_io.hpp"

using mlsa::Point;
using mlsa::Shape;

namespace {

double segment_residual(const mlsa::Segment& s, const Point& p, double* t_out = nullptr) {
  double len2 = 0.0, dot = 0.0;
  for (int i = 0; i < 3; ++i) {
    len2 += (s.b[i] - s.a[i]) * (s.b[i] - s.a[i]);
    dot += (p[i] - s.a[i]) * (s.b[i] - s.a[i]);
  }
  const double t = std::clamp(dot / len2, 0.0, 1.0);
  if (t_out) *t_out = t;
  Point q;
  for (int i = 0; i < 3; ++i) q[i] = s.a[i] + t * (s.b[i] - s.a[i]);
  return mlsa::distance(p, q);
}

// Arc-length position of p in [0, 1) along the concatenated segments.
double arc_position(const std::vector<mlsa::Segment>& segs, const Point& p) {
  double total = 0.0;
  for (const auto& s : segs) total += s.length();
  double offset = 0.0;
  for (const auto& s : segs) {
    double t = 0.0;
    if (segment_residual(s, p, &t) <= 1e-12) return (offset + t * s.length()) / total;
    offset += s.length();
  }
  return -1.0;
}

const Shape kCrossings[] = {Shape::kPlus, Shape::kX, Shape::kY, Shape::kTriple};

}  // namespace

TEST_CASE("shape names") {
  for (Shape s : {Shape::kPlus, Shape::kX, Shape::kY, Shape::kTriple, Shape::kSideOne,
                  Shape::kSideBoth}) {
    CHECK(mlsa::parse_shape(mlsa::shape_name(s)) == s);
  }
  CHECK_THROWS_AS(mlsa::parse_shape("star"), std::invalid_argument);
  CHECK_THROWS_AS(mlsa::generate_crossing(Shape::kSideOne, 10, 1), std::invalid_argument);
}

TEST_CASE("crossing samples lie on their segments inside the disk") {
  for (Shape s : kCrossings) {
    const auto segs = mlsa::crossing_segments(s);
    const auto cloud = mlsa::generate_crossing(s, 2000, 7);
    CHECK(cloud.size() == 2000);
    for (const auto& p : cloud.points()) {
      CHECK(std::hypot(p[0], p[1]) <= 0.4 + 1e-15);
      double best = 1.0;
      for (const auto& seg : segs) best = std::min(best, segment_residual(seg, p));
      CHECK(best <= 1e-12);
    }
    // Deterministic per seed.
    const auto again = mlsa::generate_crossing(s, 2000, 7);
    CHECK(std::equal(cloud.points().begin(), cloud.points().end(), again.points().begin()));
  }
  // The Y lies above the x axis except for its stem.
  for (const auto& p : mlsa::generate_crossing(Shape::kY, 500, 2).points()) {
    if (p[1] < 0) CHECK(p[0] == 0.0);
  }
}

TEST_CASE("plus splits evenly between its axes") {
  // Binomial(200, 1/2): 3 sigma is about 21.2.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cloud = mlsa::generate_crossing(Shape::kPlus, 200, seed);
    int on_x = 0;
    for (const auto& p : cloud.points()) on_x += p[1] == 0.0 && p[0] != 0.0;
    CHECK(std::abs(on_x - 100) <= 21);
  }
}

TEST_CASE("arc length uniformity passes a chi-square test") {
  // 9 degrees of freedom, p = 0.01.
  const double critical = 21.666;
  for (Shape s : kCrossings) {
    const auto segs = mlsa::crossing_segments(s);
    const auto cloud = mlsa::generate_crossing(s, 10000, 123);
    std::array<int, 10> cells{};
    for (const auto& p : cloud.points()) {
      const double u = arc_position(segs, p);
      REQUIRE(u >= 0.0);
      ++cells[std::min(9, static_cast<int>(u * 10))];
    }
    double chi2 = 0.0;
    for (int c : cells) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    CHECK(chi2 < critical);
  }
}

TEST_CASE("local homology rank at the crossing point") {
  auto near_zero_dots = [](Shape s) {
    const auto cloud = mlsa::generate_crossing(s, 6000, 11);
    const auto d = mlsa::plh_diagram(cloud, {0, 0, 0}, 0.3, 0, 1440);
    int n = 0;
    for (const auto& dot : d.dots) n += dot.birth < 0.01;
    return std::pair{n, d.size()};
  };
  CHECK(near_zero_dots(Shape::kTriple) == std::pair<int, std::size_t>{6, 6});
  CHECK(near_zero_dots(Shape::kY) == std::pair<int, std::size_t>{3, 3});
  CHECK(near_zero_dots(Shape::kPlus) == std::pair<int, std::size_t>{4, 4});
  CHECK(near_zero_dots(Shape::kX) == std::pair<int, std::size_t>{4, 4});
}

TEST_CASE("sides generators") {
  const auto both = mlsa::generate_sides(mlsa::Sides::kBoth, 200, 200, 3);
  CHECK(both.cloud.size() == 400);
  CHECK(both.sites.size() == 200);
  int left = 0, right = 0;
  for (std::size_t i = 200; i < 400; ++i) {
    left += both.cloud[i][0] < 0;
    right += both.cloud[i][0] > 0;
  }
  CHECK(left == 100);
  CHECK(right == 100);
  for (std::size_t i : both.sites) {
    CHECK(both.cloud[i][0] == 0.0);
    CHECK(both.cloud[i][1] >= 0.0);
    CHECK(both.cloud[i][1] <= 1.0);
  }
  const auto one = mlsa::generate_sides(mlsa::Sides::kOne, 200, 200, 3);
  CHECK(std::none_of(one.cloud.points().begin(), one.cloud.points().end(),
                     [](const Point& p) { return p[0] < 0; }));
  CHECK_THROWS_AS(mlsa::generate_sides(mlsa::Sides::kOne, 0, 10, 1), std::invalid_argument);
}

TEST_CASE("points on both sides close the circle earlier") {
  int earlier = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto birth = [&](mlsa::Sides which) {
      const auto s = mlsa::generate_sides(which, 400, 3000, seed);
      const auto d = mlsa::plh_diagram(s.cloud, {0, 0.5, 0}, 0.2, 1, 1440);
      REQUIRE(d.size() == 1);
      return d.dots[0].birth;
    };
    earlier += birth(mlsa::Sides::kBoth) < birth(mlsa::Sides::kOne);
  }
  CHECK(earlier >= 9);
}

TEST_CASE("labeled xyz parsing") {
  std::istringstream six(
      "# x y label subset\n"
      "0.1 0.2 0 1\n0.3 0.4 1 1\n0.5 0.6 0 2\n\n0.7 0.8 0 2\n0.9 1.0 1 2\n1.1 1.2 1 1\n");
  const auto set = mlsa::read_labeled_xyz(six, "six");
  CHECK(set.dim() == 2);
  CHECK(set.clouds.size() == 4);
  std::size_t total = 0;
  for (const auto& c : set.clouds) total += c.cloud.size();
  CHECK(total == 6);
  CHECK(set.clouds[0].subset == 1);
  CHECK(set.clouds[0].label == 0);
  CHECK(set.clouds[1].cloud.size() == 2);

  std::istringstream bad("0 0 0 1 1\n0.1 0.2 not-a-number 1 1\n");
  try {
    mlsa::read_labeled_xyz(bad);
    FAIL("expected a parse error");
  } catch (const mlsa::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream label("0 0 0 7 1\n");
  CHECK_THROWS_AS(mlsa::read_labeled_xyz(label), mlsa::ParseError);
  std::istringstream mixed("0 0 0 1\n0 0 0 1 1\n");
  CHECK_THROWS_AS(mlsa::read_labeled_xyz(mixed), mlsa::ParseError);
}

TEST_CASE("labeled xyz round trip is bitwise") {
  mlsa::LabeledCloudSet set;
  set.clouds.push_back({mlsa::PointCloud(3, {{0.1, 1.0 / 3.0, -2e-9}, {5e300, 0.0, 7.0}}), 0, 1});
  set.clouds.push_back({mlsa::PointCloud(3, {{0.2, 0.30000000000000004, 1e-320}}), 1, 2});
  std::stringstream ss;
  mlsa::write_labeled_xyz(ss, set);
  const auto back = mlsa::read_labeled_xyz(ss);
  REQUIRE(back.clouds.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    CHECK(back.clouds[c].label == set.clouds[c].label);
    CHECK(back.clouds[c].subset == set.clouds[c].subset);
    CHECK(std::equal(back.clouds[c].cloud.points().begin(), back.clouds[c].cloud.points().end(),
                     set.clouds[c].cloud.points().begin(), set.clouds[c].cloud.points().end()));
  }
}

TEST_CASE("subset split") {
  mlsa::LabeledCloudSet set;
  for (int subset = 1; subset <= 10; ++subset) {
    for (int label = 0; label <= 1; ++label) {
      set.clouds.push_back({mlsa::PointCloud(3, {{0.1 * subset, 0.0, 1.0 * label}}), label, subset});
    }
  }
  const std::vector<int> train{1, 2, 4, 6, 8};
  const std::vector<int> test{3, 5, 7, 9, 10};
  const auto [tr, te] = mlsa::split(set, train, test);
  CHECK(tr.clouds.size() == 10);
  CHECK(te.clouds.size() == 10);
  for (int label = 0; label <= 1; ++label) {
    CHECK(std::count_if(tr.clouds.begin(), tr.clouds.end(),
                        [&](const auto& c) { return c.label == label; }) == 5);
  }
  for (const auto& c : te.clouds) CHECK(std::find(test.begin(), test.end(), c.subset) != test.end());

  const std::vector<int> overlap{3, 4};
  CHECK_THROWS_AS(mlsa::split(set, train, overlap), std::invalid_argument);
  CHECK_THROWS_AS(mlsa::split(set, train, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(mlsa::split(set, train, std::vector<int>{11}), std::invalid_argument);
}
