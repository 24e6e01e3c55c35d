#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mlsa/experiment.hpp"
#include "mlsa/random.hpp"
#include "mlsa/stability.hpp"

using mlsa::Binning;
using mlsa::ExperimentKind;
using mlsa::FeatureMode;

namespace {

mlsa::ExperimentConfig small_crossing() {
  auto c = mlsa::default_config(ExperimentKind::kCrossing);
  c.name = "small";
  c.classes = {mlsa::Shape::kX, mlsa::Shape::kY};
  c.points = 80;
  c.train_instances = 3;
  c.test_instances = 2;
  c.resolution = 120;
  c.seed = 4;
  return c;
}

mlsa::RunOptions quiet(int threads = 1) {
  mlsa::RunOptions o;
  o.threads = threads;
  o.log = false;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lidar_standin(const std::filesystem::path& path) {
  mlsa::Rng rng(1);
  std::ofstream out(path);
  for (int subset = 1; subset <= 10; ++subset) {
    for (int i = 0; i < 60; ++i) {
      // Ground: a noisy plane. Vegetation: a vertical blob.
      out << rng.uniform() << ' ' << rng.uniform() << ' ' << 0.01 * rng.normal() << " 0 " << subset
          << '\n';
      out << 0.5 + 0.05 * rng.normal() << ' ' << 0.5 + 0.05 * rng.normal() << ' '
          << rng.uniform(0, 0.5) << " 1 " << subset << '\n';
    }
  }
}

}  // namespace

TEST_CASE("column names") {
  const auto m = mlsa::mlpca_column_names(2, {0.1, 0.2, 0.3});
  CHECK(m.size() == 18);
  CHECK(m.front() == "mlpca_r0.1_eig1");
  CHECK(m[2] == "mlpca_r0.1_vec1_x");
  const auto p = mlsa::plh_column_names({0.0625, 0.125}, {{0, 1}, {1, 1}});
  CHECK(p == std::vector<std::string>{"plh_r0.0625_h0_1", "plh_r0.0625_h1_1", "plh_r0.125_h0_1",
                                      "plh_r0.125_h1_1"});
}

TEST_CASE("crossing run produces the six-row table deterministically") {
  const auto cfg = small_crossing();
  const auto a = mlsa::run_experiment(cfg, quiet(1));
  REQUIRE(a.rows.size() == 6);
  CHECK(a.rows[0].binning == Binning::kNone);
  CHECK(a.rows[0].mode == FeatureMode::kPlh);
  CHECK(a.rows[5].binning == Binning::kBins10);
  CHECK(a.rows[5].mode == FeatureMode::kMlsa);
  for (const auto& r : a.rows) {
    CHECK(r.metrics.max_error ==
          std::max(100 - r.metrics.sensitivity, 100 - r.metrics.specificity));
  }
  const auto b = mlsa::run_experiment(cfg, quiet(3));
  std::ostringstream ca, cb;
  mlsa::write_results_csv(ca, a.rows);
  mlsa::write_results_csv(cb, b.rows);
  CHECK(ca.str() == cb.str());
  CHECK(ca.str().rfind("features,bins,sensitivity,specificity,max_error\n", 0) == 0);
  CHECK(mlsa::find_row(a, FeatureMode::kMlsa, Binning::kNone) == &a.rows[2]);

  std::ostringstream table;
  mlsa::write_results_table(table, a);
  CHECK(table.str().find("Features | Bins | Sens.") != std::string::npos);
}

TEST_CASE("feature artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "mlsa_experiment_test";
  std::filesystem::remove_all(dir);
  auto cfg = small_crossing();
  auto opts = quiet(2);
  opts.out_dir = dir;
  opts.lambda_sweep = true;
  const auto result = mlsa::run_experiment(cfg, opts);
  CHECK(result.sweep.size() == 6 * std::size(mlsa::kLambdaSweep));
  for (const char* f : {"train_features.csv", "test_features.csv", "results.csv", "results.txt",
                        "lambda_sweep.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  std::ifstream train(dir / "train_features.csv");
  const auto m = mlsa::read_feature_csv(train);
  CHECK(m.num_columns() == 36);
  CHECK(m.layout == mlsa::Layout::kCrossing36);
  CHECK(m.num_rows() == 2 * 3 * 80);
  const std::string first = slurp(dir / "results.csv");
  mlsa::run_experiment(cfg, opts);
  CHECK(slurp(dir / "results.csv") == first);

  auto sides = mlsa::default_config(ExperimentKind::kSides);
  sides.classes = {mlsa::Shape::kSideOne, mlsa::Shape::kSideBoth};
  sides.points = 30;
  sides.ambient_points = 40;
  sides.train_instances = 2;
  sides.test_instances = 1;
  const auto sf = mlsa::extract_features(sides, quiet());
  CHECK(sf.train.num_columns() == 14);
  CHECK(sf.train.num_rows() == 2 * 2 * 30);
  CHECK(sf.test.layout == mlsa::Layout::kSides14);
}

TEST_CASE("lidar stand-in file") {
  const auto dir = std::filesystem::temp_directory_path() / "mlsa_lidar_test";
  std::filesystem::create_directories(dir);
  write_lidar_standin(dir / "standin.xyz");
  auto cfg = mlsa::default_config(ExperimentKind::kLidar);
  cfg.lidar.input = (dir / "standin.xyz").string();
  cfg.lidar.sample_per_subset = 20;
  cfg.resolution = 2;
  const auto f = mlsa::extract_features(cfg, quiet());
  CHECK(f.train.num_columns() == 31);
  CHECK(f.train.layout == mlsa::Layout::kLidar31);
  CHECK(f.train.num_rows() == 5 * 2 * 20);
  CHECK(f.test.num_rows() == 5 * 2 * 20);
  CHECK(f.train.columns.back() == "z");
  const auto r = mlsa::evaluate_modes(cfg, f, quiet());
  CHECK(r.rows.size() == 6);

  cfg.lidar.input = (dir / "nope.xyz").string();
  try {
    mlsa::extract_features(cfg, quiet());
    FAIL("expected a stage error");
  } catch (const mlsa::StageError& e) {
    CHECK(!e.stage().empty());
  }
}

TEST_CASE("doubling epochs barely moves the error") {
  auto cfg = small_crossing();
  cfg.classes = {mlsa::Shape::kPlus, mlsa::Shape::kTriple};
  cfg.points = 200;
  cfg.train_instances = 10;
  cfg.test_instances = 5;
  cfg.resolution = 360;
  cfg.binning = {Binning::kNone};
  const auto features = mlsa::extract_features(cfg, quiet());
  const auto base = mlsa::evaluate_modes(cfg, features, quiet());
  cfg.svm.epochs *= 2;
  const auto doubled = mlsa::evaluate_modes(cfg, features, quiet());
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    CHECK(std::abs(base.rows[i].metrics.max_error - doubled.rows[i].metrics.max_error) < 1.0);
  }
}

TEST_CASE("stability suite smoke") {
  mlsa::StabilityOptions o;
  o.trials = 6;
  o.circle_resolution = 180;
  o.sphere_level = 2;
  const auto report = mlsa::stability_suite(o);
  CHECK(report.inequalities.size() == 3);
  CHECK(report.passed());
  for (const auto& r : report.inequalities) CHECK(r.checks == 6);
}
