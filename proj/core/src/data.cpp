#include "mlsa/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "mlsa/random.hpp"
#include "mlsa/text_io.hpp"

namespace mlsa {

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kPlus:
      return "plus";
    case Shape::kX:
      return "x";
    case Shape::kY:
      return "y";
    case Shape::kTriple:
      return "triple";
    case Shape::kSideOne:
      return "side-one";
    case Shape::kSideBoth:
      return "side-both";
  }
  return "plus";
}

Shape parse_shape(std::string_view name) {
  for (Shape s : {Shape::kPlus, Shape::kX, Shape::kY, Shape::kTriple, Shape::kSideOne,
                  Shape::kSideBoth}) {
    if (name == shape_name(s)) return s;
  }
  throw std::invalid_argument("unknown shape '" + std::string(name) + "'");
}

bool is_crossing(Shape shape) { return shape != Shape::kSideOne && shape != Shape::kSideBoth; }

namespace {

Point along(double dx, double dy, double t) {
  const double n = std::hypot(dx, dy);
  return {t * dx / n, t * dy / n, 0.0};
}

// Full chord of the disk through the origin in direction (dx, dy).
Segment diameter(double dx, double dy) {
  return {along(dx, dy, -kCrossingDiskRadius), along(dx, dy, kCrossingDiskRadius)};
}

Segment ray(double dx, double dy) { return {{0.0, 0.0, 0.0}, along(dx, dy, kCrossingDiskRadius)}; }

}  // namespace

std::vector<Segment> crossing_segments(Shape shape) {
  switch (shape) {
    case Shape::kPlus:
      return {diameter(1, 0), diameter(0, 1)};
    case Shape::kX:
      return {diameter(1, -2), diameter(1, 3)};
    case Shape::kY:
      return {ray(-1, 1), ray(1, 1), ray(0, -1)};
    case Shape::kTriple:
      return {diameter(1, 0), diameter(0, 1), diameter(1, 1)};
    default:
      throw std::invalid_argument("'" + std::string(shape_name(shape)) +
                                  "' is not a crossing shape");
  }
}

PointCloud generate_crossing(Shape shape, std::size_t n, std::uint64_t seed, double jitter) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  const auto segments = crossing_segments(shape);
  double total = 0.0;
  for (const auto& s : segments) total += s.length();
  Rng rng(seed);
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform() * total;
    std::size_t k = 0;
    while (k + 1 < segments.size() && u >= segments[k].length()) {
      u -= segments[k].length();
      ++k;
    }
    const Segment& s = segments[k];
    const double t = std::min(u / s.length(), 1.0);
    Point p{s.a[0] + t * (s.b[0] - s.a[0]), s.a[1] + t * (s.b[1] - s.a[1]), 0.0};
    if (jitter > 0.0) {
      p[0] += jitter * rng.normal();
      p[1] += jitter * rng.normal();
    }
    points.push_back(p);
  }
  return PointCloud(2, std::move(points));
}

SampledCloud generate_sides(Sides which, std::size_t n_segment, std::size_t n_ambient,
                            std::uint64_t seed, double jitter) {
  if (n_segment == 0 || n_ambient == 0) throw std::invalid_argument("sample counts must be positive");
  Rng rng(seed);
  std::vector<Point> points;
  points.reserve(n_segment + n_ambient);
  for (std::size_t i = 0; i < n_segment; ++i) {
    Point p{0.0, rng.uniform(0.0, 1.0), 0.0};
    if (jitter > 0.0) {
      p[0] += jitter * rng.normal();
      p[1] += jitter * rng.normal();
    }
    points.push_back(p);
  }
  const std::size_t left = which == Sides::kBoth ? n_ambient / 2 : 0;
  for (std::size_t i = 0; i < n_ambient; ++i) {
    const double x = i < left ? rng.uniform(-1.0, 0.0) : rng.uniform(0.0, 1.0);
    points.push_back({x, rng.uniform(0.0, 1.0), 0.0});
  }
  SampledCloud out{PointCloud(2, std::move(points)), {}};
  out.sites.resize(n_segment);
  for (std::size_t i = 0; i < n_segment; ++i) out.sites[i] = i;
  return out;
}

SampledCloud generate_shape(Shape shape, std::size_t n, std::size_t n_ambient, std::uint64_t seed,
                            double jitter) {
  if (shape == Shape::kSideOne) return generate_sides(Sides::kOne, n, n_ambient, seed, jitter);
  if (shape == Shape::kSideBoth) return generate_sides(Sides::kBoth, n, n_ambient, seed, jitter);
  SampledCloud out{generate_crossing(shape, n, seed, jitter), {}};
  out.sites.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.sites[i] = i;
  return out;
}

PointFile read_point_cloud(std::istream& is, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("point cloud dimension must be 2 or 3");
  std::vector<Point> points;
  std::vector<int> labels;
  std::optional<bool> labelled;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto tokens = split_whitespace(line);
    const bool has_label = tokens.size() == static_cast<std::size_t>(dim) + 1;
    if (tokens.size() != static_cast<std::size_t>(dim) && !has_label) {
      throw ParseError(lineno, "expected " + std::to_string(dim) + " coordinates");
    }
    if (labelled && *labelled != has_label) throw ParseError(lineno, "inconsistent label column");
    labelled = has_label;
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
      const auto v = parse_double(tokens[a]);
      if (!v) throw ParseError(lineno, "bad coordinate '" + std::string(tokens[a]) + "'");
      p[a] = *v;
    }
    if (has_label) {
      const auto label = parse_integer(tokens.back());
      if (!label) throw ParseError(lineno, "bad label '" + std::string(tokens.back()) + "'");
      labels.push_back(static_cast<int>(*label));
    }
    points.push_back(p);
  }
  return {PointCloud(dim, std::move(points)), std::move(labels)};
}

LabeledCloudSet read_labeled_xyz(std::istream& is, std::string provenance) {
  std::map<std::pair<int, int>, std::vector<Point>> groups;  // (subset, label)
  int dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 4 && tokens.size() != 5) {
      throw ParseError(lineno, "expected 'x y [z] label subset_id', got " +
                                   std::to_string(tokens.size()) + " fields");
    }
    const int line_dim = static_cast<int>(tokens.size()) - 2;
    if (dim == 0) dim = line_dim;
    if (line_dim != dim) throw ParseError(lineno, "inconsistent coordinate count");
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
      const auto v = parse_double(tokens[a]);
      if (!v) throw ParseError(lineno, "bad coordinate '" + std::string(tokens[a]) + "'");
      p[a] = *v;
    }
    const auto label = parse_integer(tokens[dim]);
    const auto subset = parse_integer(tokens[dim + 1]);
    if (!label) throw ParseError(lineno, "bad label '" + std::string(tokens[dim]) + "'");
    if (!subset) throw ParseError(lineno, "bad subset id '" + std::string(tokens[dim + 1]) + "'");
    if (*label < 0 || *label > kMaxLabel) {
      throw ParseError(lineno, "unknown label " + std::to_string(*label));
    }
    groups[{static_cast<int>(*subset), static_cast<int>(*label)}].push_back(p);
  }
  LabeledCloudSet set;
  set.provenance = std::move(provenance);
  for (auto& [key, points] : groups) {
    set.clouds.push_back({PointCloud(dim, std::move(points)), key.second, key.first});
  }
  return set;
}

LabeledCloudSet load_labeled_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_labeled_xyz(in, path.string());
}

void write_labeled_xyz(std::ostream& os, const LabeledCloudSet& set) {
  for (const auto& c : set.clouds) {
    for (const Point& p : c.cloud.points()) {
      for (int a = 0; a < c.cloud.dim(); ++a) os << format_double(p[a]) << ' ';
      os << c.label << ' ' << c.subset << '\n';
    }
  }
}

std::pair<LabeledCloudSet, LabeledCloudSet> split(const LabeledCloudSet& set,
                                                  std::span<const int> train_ids,
                                                  std::span<const int> test_ids) {
  if (train_ids.empty()) throw std::invalid_argument("train subset list is empty");
  if (test_ids.empty()) throw std::invalid_argument("test subset list is empty");
  const std::set<int> train(train_ids.begin(), train_ids.end());
  const std::set<int> test(test_ids.begin(), test_ids.end());
  std::set<int> present;
  for (const auto& c : set.clouds) present.insert(c.subset);
  for (int id : train) {
    if (test.contains(id)) {
      throw std::invalid_argument("subset " + std::to_string(id) + " is in both train and test");
    }
  }
  for (const auto* ids : {&train, &test}) {
    for (int id : *ids) {
      if (!present.contains(id)) {
        throw std::invalid_argument("subset " + std::to_string(id) + " is not in the data set");
      }
    }
  }
  LabeledCloudSet train_set{{}, set.provenance};
  LabeledCloudSet test_set{{}, set.provenance};
  for (const auto& c : set.clouds) {
    if (train.contains(c.subset)) train_set.clouds.push_back(c);
    if (test.contains(c.subset)) test_set.clouds.push_back(c);
  }
  return {std::move(train_set), std::move(test_set)};
}

}  // namespace mlsa
