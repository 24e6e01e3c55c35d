#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlsa {

enum class Layout { kCrossing36, kSides14, kLidar31, kGeneric };

std::string_view layout_name(Layout layout);
Layout parse_layout(std::string_view name);

// Which column groups a classifier sees.
enum class FeatureMode { kPlh, kMlpca, kMlsa };

std::string_view feature_mode_name(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view name);

struct ColumnRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t width() const { return end - begin; }
};

// Per-point feature rows with binary labels in {-1, +1}.
struct FeatureMatrix {
  Layout layout = Layout::kGeneric;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  ColumnRange mlpca;
  ColumnRange plh;
  ColumnRange coords;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return columns.size(); }

  // Throws std::invalid_argument if rows, labels or layout widths disagree.
  void validate() const;

  // Keeps only the columns of the requested feature mode. Coordinates travel
  // with the MLPCA block, matching how the coordinates augment geometric features.
  FeatureMatrix select(FeatureMode mode) const;
};

struct FeatureBlock {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
};

// Concatenates MLPCA, PLH and (optionally) coordinate blocks column-wise.
FeatureMatrix assemble(Layout layout, const FeatureBlock& mlpca, const FeatureBlock& plh,
                       const std::optional<FeatureBlock>& coords, std::vector<int> labels);

struct ColumnStats {
  std::vector<double> mean;
  std::vector<double> stdev;  // population convention
};

inline constexpr double kMinStdev = 1e-12;

ColumnStats column_stats(const FeatureMatrix& m);
// Subtract the statistics' means and divide by their deviations; degenerate
// columns (stdev < kMinStdev) become zero.
FeatureMatrix apply_standardization(const FeatureMatrix& m, const ColumnStats& stats);

struct Standardized {
  FeatureMatrix matrix;
  ColumnStats stats;
};
// Statistics come from `train` and are applied unchanged to `apply_to`.
Standardized standardize(const FeatureMatrix& train, const FeatureMatrix& apply_to);

// Standard normal quantile function.
double normal_quantile(double p);

struct BinningSpec {
  std::array<double, 11> boundaries;
  std::array<double, 10> representatives;

  // Ten bins of equal standard-normal mass; representatives sit at the
  // probability midpoint of each bin.
  static BinningSpec equal_probability10();

  // Index of the half-open bin [b_i, b_{i+1}) containing x, in 0..9.
  std::size_t bin_of(double x) const;
};

FeatureMatrix discretize(const FeatureMatrix& m, const BinningSpec& spec);

// Header of column names plus "label", one row per point.
void write_feature_csv(std::ostream& os, const FeatureMatrix& m);
FeatureMatrix read_feature_csv(std::istream& is);

}  // namespace mlsa
