#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlsa/config.hpp"
#include "mlsa/features.hpp"
#include "mlsa/learn.hpp"

namespace mlsa {

// A failure inside one pipeline stage; what() is prefixed with the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RunOptions {
  int threads = 1;
  std::optional<std::filesystem::path> out_dir;  // overrides config.output
  bool lambda_sweep = false;
  bool log = true;  // stage timings to std::clog
};

struct ExtractedFeatures {
  FeatureMatrix train;
  FeatureMatrix test;
};

struct ResultRow {
  FeatureMode mode;
  Binning binning;
  double lambda;
  Metrics metrics;
};

struct ExperimentResult {
  std::string name;
  std::vector<ResultRow> rows;   // config binning order, then feature order
  std::vector<ResultRow> sweep;  // only with RunOptions::lambda_sweep
};

inline constexpr double kLambdaSweep[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};

std::vector<std::string> mlpca_column_names(int dim, const std::vector<double>& radii);
std::vector<std::string> plh_column_names(const std::vector<double>& radii, const PlhSpec& spec);

// Generate (or load) the clouds and compute full MLSA feature matrices.
ExtractedFeatures extract_features(const ExperimentConfig& config, const RunOptions& options);

// Preprocess, train and evaluate every (binning, feature mode) pair.
ExperimentResult evaluate_modes(const ExperimentConfig& config, const ExtractedFeatures& features,
                                const RunOptions& options);

// extract_features + evaluate_modes, writing artifacts when an output
// directory is configured.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

// Extraction only; writes train_features.csv and test_features.csv.
ExtractedFeatures dump_features(const ExperimentConfig& config, const RunOptions& options);

// Header "features,bins,sensitivity,specificity,max_error".
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<ResultRow>& rows);
// Features / Bins / Sens. / Spec. / Max Errors, percentages to two decimals.
void write_results_table(std::ostream& os, const ExperimentResult& result);

const ResultRow* find_row(const ExperimentResult& result, FeatureMode mode, Binning binning);

}  // namespace mlsa
