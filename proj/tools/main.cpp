#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mlsa/config.hpp"
#include "mlsa/data.hpp"
#include "mlsa/diagram_metrics.hpp"
#include "mlsa/experiment.hpp"
#include "mlsa/plh.hpp"
#include "mlsa/stability.hpp"
#include "mlsa/text_io.hpp"

namespace {

mlsa::PersistenceDiagram read_diagram_file(const std::string& path, int degree) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return mlsa::read_diagram(in, degree);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-scale local shape analysis: MLPCA + persistent local homology features"};
  app.require_subcommand(1);

  int threads = 1;
  std::string out_dir;
  bool quiet = false;

  std::string config_path;
  bool lambda_sweep = false;
  auto* run = app.add_subcommand("run", "Generate, extract, train and evaluate an experiment");
  run->add_option("config", config_path, "Experiment config (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides config 'output')");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--lambda-sweep", lambda_sweep, "Also evaluate a fixed grid of SVM lambdas");
  run->add_flag("--quiet", quiet, "Suppress stage timings");

  auto* features = app.add_subcommand("features", "Extract and write feature CSVs only");
  features->add_option("config", config_path, "Experiment config (YAML)")->required()->check(CLI::ExistingFile);
  features->add_option("--out", out_dir, "Output directory (overrides config 'output')");
  features->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  features->add_flag("--quiet", quiet, "Suppress stage timings");

  mlsa::StabilityOptions stab;
  bool no_3d = false;
  auto* stability = app.add_subcommand("stability", "Randomised PLH stability inequality checks");
  stability->add_option("--trials", stab.trials, "Trials per inequality")->check(CLI::PositiveNumber);
  stability->add_option("--seed", stab.seed, "Random seed");
  stability->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  stability->add_option("--resolution", stab.circle_resolution, "Circle vertex count (2-D trials)");
  stability->add_option("--level", stab.sphere_level, "Icosphere subdivision level (3-D trials)");
  stability->add_flag("--no-3d", no_3d, "Run 2-D trials only");

  std::string points_path;
  int dim = 2;
  std::vector<double> center;
  double radius = 0.0;
  int degree = 0;
  int resolution = 0;
  auto* diagram = app.add_subcommand("diagram", "Dump the PLH diagram of a point cloud at (z, R)");
  diagram->add_option("points", points_path, "Point-cloud text file")->required()->check(CLI::ExistingFile);
  diagram->add_option("--dim", dim, "Ambient dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  diagram->add_option("--center", center, "Center coordinates")->required()->delimiter(',');
  diagram->add_option("--radius", radius, "Sphere radius")->required()->check(CLI::PositiveNumber);
  diagram->add_option("--degree", degree, "Homology degree")->check(CLI::IsMember({0, 1}));
  diagram->add_option("--resolution", resolution,
                      "Circle vertex count (2-D) or subdivision level (3-D); 0 = default");

  std::string diagram_a, diagram_b;
  double p = 1.0;
  auto* compare = app.add_subcommand("compare", "Bottleneck and Wasserstein distance of two diagram files");
  compare->add_option("a", diagram_a, "First diagram file")->required()->check(CLI::ExistingFile);
  compare->add_option("b", diagram_b, "Second diagram file")->required()->check(CLI::ExistingFile);
  compare->add_option("--degree", degree, "Homology degree to compare")->check(CLI::IsMember({0, 1}));
  compare->add_option("--p", p, "Wasserstein order (>= 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    mlsa::RunOptions options;
    options.threads = threads;
    options.log = !quiet;
    if (!out_dir.empty()) options.out_dir = out_dir;

    if (*run) {
      const auto config = mlsa::load_config(config_path);
      options.lambda_sweep = lambda_sweep;
      const auto result = mlsa::run_experiment(config, options);
      mlsa::write_results_table(std::cout, result);
    } else if (*features) {
      const auto config = mlsa::load_config(config_path);
      const auto extracted = mlsa::dump_features(config, options);
      std::cout << "train rows: " << extracted.train.num_rows()
                << ", test rows: " << extracted.test.num_rows()
                << ", columns: " << extracted.train.num_columns() << " ("
                << mlsa::layout_name(extracted.train.layout) << ")\n";
    } else if (*stability) {
      stab.threads = threads;
      stab.include_3d = !no_3d;
      const auto report = mlsa::stability_suite(stab);
      mlsa::write_stability_report(std::cout, report);
      return report.passed() ? 0 : 1;
    } else if (*diagram) {
      std::ifstream in(points_path);
      const auto file = mlsa::read_point_cloud(in, dim);
      if (center.size() != static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("--center needs " + std::to_string(dim) + " coordinates");
      }
      const int res = resolution > 0 ? resolution : mlsa::default_resolution(dim);
      const auto dgm =
          mlsa::plh_diagram(file.cloud, mlsa::make_point(center), radius, degree, res);
      mlsa::write_diagram(std::cout, dgm.sorted());
    } else if (*compare) {
      const auto a = read_diagram_file(diagram_a, degree);
      const auto b = read_diagram_file(diagram_b, degree);
      std::cout << "bottleneck " << mlsa::format_double(mlsa::bottleneck(a, b)) << '\n';
      std::cout << "wasserstein_p" << mlsa::format_double(p) << ' '
                << mlsa::format_double(mlsa::wasserstein(a, b, p)) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
