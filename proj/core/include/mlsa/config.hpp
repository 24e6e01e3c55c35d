#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlsa/data.hpp"
#include "mlsa/features.hpp"
#include "mlsa/learn.hpp"
#include "mlsa/plh.hpp"

namespace mlsa {

enum class ExperimentKind { kCrossing, kSides, kLidar };
enum class Binning { kNone, kBins10 };

std::string_view binning_name(Binning b);  // "No" / "10", as in the result tables

// Collects every violation found while reading or validating a config.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct LidarConfig {
  std::string input;
  std::vector<int> train_subsets{1, 2, 4, 6, 8};
  std::vector<int> test_subsets{3, 5, 7, 9, 10};
  std::size_t sample_per_subset = 1000;
  int class_a_label = 0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::kCrossing;
  std::uint64_t seed = 1;
  // First-listed class is class A (label +1, sensitivity).
  std::vector<Shape> classes;
  std::size_t points = 200;          // crossing: points per instance; sides: segment points
  std::size_t ambient_points = 200;  // sides only
  double jitter = 0.0;
  std::size_t train_instances = 50;
  std::size_t test_instances = 15;
  std::vector<double> radii;
  int resolution = 0;
  PlhSpec plh;
  std::vector<FeatureMode> features{FeatureMode::kPlh, FeatureMode::kMlpca, FeatureMode::kMlsa};
  std::vector<Binning> binning{Binning::kNone, Binning::kBins10};
  SvmParams svm;
  std::string output;
  LidarConfig lidar;

  int dim() const { return kind == ExperimentKind::kLidar ? 3 : 2; }
};

// Defaults for radii, PLH classes and resolution per experiment kind.
ExperimentConfig default_config(ExperimentKind kind);

ExperimentConfig parse_config(std::string_view yaml_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Throws ConfigError listing every violation.
void validate(const ExperimentConfig& config);

}  // namespace mlsa
