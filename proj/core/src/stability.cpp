#include "mlsa/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mlsa/diagram_metrics.hpp"
#include "mlsa/geometry.hpp"
#include "mlsa/parallel.hpp"
#include "mlsa/plh.hpp"
#include "mlsa/random.hpp"

namespace mlsa {

namespace {

Point random_direction(Rng& rng, int dim) {
  Point v{0.0, 0.0, 0.0};
  double n = 0.0;
  do {
    for (int a = 0; a < dim; ++a) v[a] = rng.normal();
    n = std::sqrt(squared_distance(v, {0.0, 0.0, 0.0}));
  } while (n < 1e-12);
  for (int a = 0; a < dim; ++a) v[a] /= n;
  return v;
}

Point offset(const Point& p, const Point& dir, double t) {
  return {p[0] + t * dir[0], p[1] + t * dir[1], p[2] + t * dir[2]};
}

// A few sampled line pieces through the region around the origin plus scatter,
// so spheres of radius 0.1-0.4 about points near the origin cross structure.
PointCloud random_cloud(Rng& rng, int dim) {
  std::vector<Point> points;
  const int pieces = 1 + static_cast<int>(rng.below(3));
  for (int s = 0; s < pieces; ++s) {
    Point anchor{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) anchor[a] = rng.uniform(-0.15, 0.15);
    const Point dir = random_direction(rng, dim);
    const int count = 40 + static_cast<int>(rng.below(80));
    for (int i = 0; i < count; ++i) points.push_back(offset(anchor, dir, rng.uniform(-0.6, 0.6)));
  }
  const int scatter = static_cast<int>(rng.below(30));
  for (int i = 0; i < scatter; ++i) {
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = rng.uniform(-0.6, 0.6);
    points.push_back(p);
  }
  return PointCloud(dim, std::move(points));
}

PointCloud perturb_cloud(Rng& rng, const PointCloud& cloud, double max_shift) {
  std::vector<Point> points;
  points.reserve(cloud.size());
  for (const Point& p : cloud.points()) {
    points.push_back(offset(p, random_direction(rng, cloud.dim()), max_shift * rng.uniform()));
  }
  return PointCloud(cloud.dim(), std::move(points));
}

struct Check {
  double distance;
  double bound;
  double slack;
};

// Degree 0 and 1 both contribute; the larger distance is the one that matters.
double plh_bottleneck(const PointCloud& a, const SphereComplex& sa, const PointCloud& b,
                      const SphereComplex& sb) {
  const FilteredComplex fa = plh_filtration(a, sa);
  const FilteredComplex fb = plh_filtration(b, sb);
  double worst = 0.0;
  for (int k = 0; k <= 1; ++k) worst = std::max(worst, bottleneck(persistence(fa, k), persistence(fb, k)));
  return worst;
}

struct TrialResult {
  Check radius;
  Check center;
  Check cloud;
};

TrialResult run_trial(const StabilityOptions& opt, int trial) {
  Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(trial)));
  const int dim = opt.include_3d && trial % 2 == 1 ? 3 : 2;
  const int resolution = dim == 2 ? opt.circle_resolution : opt.sphere_level;
  const auto mesh = sphere_mesh(dim, resolution);

  const PointCloud cloud = random_cloud(rng, dim);
  Point z{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) z[a] = rng.uniform(-0.2, 0.2);
  const double r = rng.uniform(0.1, 0.4);
  // Every tenth trial uses a zero perturbation.
  const bool degenerate = trial % 10 == 0;
  const SphereComplex base(mesh, z, r);

  TrialResult out{};
  {
    const double r2 = degenerate ? r : r + rng.uniform(-0.08, 0.08);
    const SphereComplex other(mesh, z, r2);
    out.radius = {plh_bottleneck(cloud, base, cloud, other), std::abs(r - r2),
                  2.0 * std::max(base.max_edge_length(), other.max_edge_length())};
  }
  {
    const Point dir = random_direction(rng, dim);
    const Point z2 = degenerate ? z : offset(z, dir, rng.uniform(0.0, 0.1));
    const SphereComplex other(mesh, z2, r);
    out.center = {plh_bottleneck(cloud, base, cloud, other), distance(z, z2),
                  2.0 * base.max_edge_length()};
  }
  {
    const PointCloud moved = degenerate ? cloud : perturb_cloud(rng, cloud, rng.uniform(0.0, 0.05));
    out.cloud = {plh_bottleneck(cloud, base, moved, base), hausdorff(cloud, moved),
                 2.0 * base.max_edge_length()};
  }
  return out;
}

void record(InequalityReport& rep, const Check& c) {
  ++rep.checks;
  const double limit = c.bound + c.slack;
  if (c.distance > limit + 1e-12) ++rep.violations;
  rep.max_ratio = std::max(rep.max_ratio, limit > 0.0 ? c.distance / limit : 0.0);
  if (c.bound > 0.0) rep.max_raw_ratio = std::max(rep.max_raw_ratio, c.distance / c.bound);
  rep.max_distance = std::max(rep.max_distance, c.distance);
  rep.max_slack = std::max(rep.max_slack, c.slack);
}

}  // namespace

bool StabilityReport::passed() const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [](const InequalityReport& r) { return r.checks > 0 && r.violations == 0; });
}

StabilityReport stability_suite(const StabilityOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("stability suite needs at least one trial");
  std::vector<TrialResult> results(static_cast<std::size_t>(options.trials));
  parallel_for(results.size(), options.threads,
               [&](std::size_t t) { results[t] = run_trial(options, static_cast<int>(t)); });
  StabilityReport report;
  report.inequalities = {{"radius"}, {"center"}, {"cloud"}};
  for (const auto& r : results) {
    record(report.inequalities[0], r.radius);
    record(report.inequalities[1], r.center);
    record(report.inequalities[2], r.cloud);
  }
  return report;
}

void write_stability_report(std::ostream& os, const StabilityReport& report) {
  char line[160];
  for (const auto& r : report.inequalities) {
    std::snprintf(line, sizeof(line),
                  "%-7s checks=%d violations=%d max_ratio=%.6f max_raw_ratio=%.6f "
                  "max_distance=%.6g max_slack=%.3g %s\n",
                  r.name.c_str(), r.checks, r.violations, r.max_ratio, r.max_raw_ratio,
                  r.max_distance, r.max_slack, r.violations == 0 ? "PASS" : "FAIL");
    os << line;
  }
  os << (report.passed() ? "stability: PASS\n" : "stability: FAIL\n");
}

}  // namespace mlsa
