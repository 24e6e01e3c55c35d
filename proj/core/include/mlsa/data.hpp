#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlsa/geometry.hpp"

namespace mlsa {

enum class Shape { kPlus, kX, kY, kTriple, kSideOne, kSideBoth };

std::string_view shape_name(Shape shape);
Shape parse_shape(std::string_view name);
bool is_crossing(Shape shape);

inline constexpr double kCrossingDiskRadius = 0.4;

struct Segment {
  Point a;
  Point b;
  double length() const { return distance(a, b); }
};

// The line pieces making up a crossing shape, clipped to the closed disk of
// radius kCrossingDiskRadius about the origin.
std::vector<Segment> crossing_segments(Shape shape);

// n points drawn uniformly by arc length over the union of the shape's
// segments. jitter > 0 adds isotropic Gaussian noise of that deviation.
PointCloud generate_crossing(Shape shape, std::size_t n, std::uint64_t seed, double jitter = 0.0);

// A cloud together with the indices at which features are extracted.
struct SampledCloud {
  PointCloud cloud;
  std::vector<std::size_t> sites;
};

enum class Sides { kOne, kBoth };

// n_segment points on {x = 0, 0 <= y <= 1} (the sites, stored first) plus
// n_ambient points on [0,1]^2 (one side) or split evenly between [-1,0]x[0,1]
// and [0,1]x[0,1] (both sides).
SampledCloud generate_sides(Sides which, std::size_t n_segment, std::size_t n_ambient,
                            std::uint64_t seed, double jitter = 0.0);

// Every point of a crossing cloud is a site; side shapes use their segment points.
SampledCloud generate_shape(Shape shape, std::size_t n, std::size_t n_ambient, std::uint64_t seed,
                            double jitter = 0.0);

// Plain point-cloud text: coordinates per line, optional trailing integer label.
struct PointFile {
  PointCloud cloud;
  std::vector<int> labels;  // empty when the file carries none
};
PointFile read_point_cloud(std::istream& is, int dim);

struct LabeledCloud {
  PointCloud cloud;
  int label = 0;
  int subset = 0;
};

// Clouds keyed by (subset, label), ordered by subset then label.
struct LabeledCloudSet {
  std::vector<LabeledCloud> clouds;
  std::string provenance;

  int dim() const { return clouds.empty() ? 0 : clouds.front().cloud.dim(); }
};

inline constexpr int kMaxLabel = 1;  // labels are 0 or 1

// "x y [z] label subset_id" per line, '#' comments.
LabeledCloudSet read_labeled_xyz(std::istream& is, std::string provenance = {});
LabeledCloudSet load_labeled_xyz(const std::filesystem::path& path);
void write_labeled_xyz(std::ostream& os, const LabeledCloudSet& set);

// Partition by subset id. Both lists must be nonempty, disjoint and present.
std::pair<LabeledCloudSet, LabeledCloudSet> split(const LabeledCloudSet& set,
                                                  std::span<const int> train_ids,
                                                  std::span<const int> test_ids);

}  // namespace mlsa
