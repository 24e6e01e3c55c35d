#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlsa {

struct StabilityOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  int circle_resolution = 360;  // 2-D trials
  int sphere_level = 4;         // 3-D trials
  bool include_3d = true;       // odd trials run in 3-D
  int threads = 1;
};

// Bottleneck distance between PLH diagrams against the bound for one input
// perturbation (radius, center or cloud). Slack is twice the longest sphere
// complex edge of the pair.
struct InequalityReport {
  std::string name;
  int checks = 0;
  int violations = 0;
  double max_ratio = 0.0;      // distance / (bound + slack)
  double max_raw_ratio = 0.0;  // distance / bound over checks with bound > 0
  double max_distance = 0.0;
  double max_slack = 0.0;
};

struct StabilityReport {
  std::vector<InequalityReport> inequalities;
  bool passed() const;
};

StabilityReport stability_suite(const StabilityOptions& options);

void write_stability_report(std::ostream& os, const StabilityReport& report);

}  // namespace mlsa
