#include "mlsa/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <ostream>

#include "mlsa/data.hpp"
#include "mlsa/mlpca.hpp"
#include "mlsa/parallel.hpp"
#include "mlsa/plh.hpp"
#include "mlsa/random.hpp"
#include "mlsa/text_io.hpp"

namespace mlsa {

StageError::StageError(std::string stage, const std::string& what)
    : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

namespace {

class StageTimer {
 public:
  StageTimer(std::string name, bool enabled)
      : name_(std::move(name)), enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (!enabled_) return;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    std::clog << "[mlsa] " << name_ << ": " << dt.count() << " s\n";
  }

 private:
  std::string name_;
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

template <typename Fn>
auto run_stage(const std::string& name, bool log, Fn&& fn) {
  StageTimer timer(name, log);
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Seed tags for the independent random streams of one experiment.
enum : std::uint64_t { kTagTrain = 0, kTagTest = 1, kTagSvm = 7, kTagLidar = 9 };

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t split, std::uint64_t cls,
                            std::uint64_t instance) {
  return mix_seed(seed, (split * 2 + cls) << 32 | instance);
}

Layout layout_for(const ExperimentConfig& c, std::size_t mlpca_width, std::size_t plh_width) {
  switch (c.kind) {
    case ExperimentKind::kCrossing:
      return mlpca_width == 18 && plh_width == 18 ? Layout::kCrossing36 : Layout::kGeneric;
    case ExperimentKind::kSides:
      return mlpca_width == 12 && plh_width == 2 ? Layout::kSides14 : Layout::kGeneric;
    case ExperimentKind::kLidar:
      return mlpca_width == 24 && plh_width == 4 ? Layout::kLidar31 : Layout::kGeneric;
  }
  return Layout::kGeneric;
}

// One feature-extraction job: a site of a cloud.
struct Site {
  std::size_t cloud;
  std::size_t index;
  int label;
};

struct Workload {
  std::vector<PointCloud> clouds;
  std::vector<Site> sites;
};

FeatureMatrix featurize(const ExperimentConfig& c, const Workload& work, bool with_coords,
                        int threads) {
  const std::size_t n = work.sites.size();
  FeatureBlock mlpca{mlpca_column_names(c.dim(), c.radii), std::vector<std::vector<double>>(n)};
  FeatureBlock plh{plh_column_names(c.radii, c.plh), std::vector<std::vector<double>>(n)};
  std::optional<FeatureBlock> coords;
  if (with_coords) {
    coords = FeatureBlock{{"x", "y", "z"}, std::vector<std::vector<double>>(n)};
    coords->names.resize(static_cast<std::size_t>(c.dim()));
  }
  std::vector<int> labels(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const Site& s = work.sites[i];
    const PointCloud& cloud = work.clouds[s.cloud];
    const Point& p = cloud[s.index];
    mlpca.rows[i] = mlpca_features(cloud, p, c.radii);
    plh.rows[i] = plh_features(cloud, p, c.radii, c.plh, c.resolution);
    if (coords) coords->rows[i].assign(p.begin(), p.begin() + c.dim());
    labels[i] = s.label;
  });
  return assemble(layout_for(c, mlpca.names.size(), plh.names.size()), mlpca, plh, coords,
                  std::move(labels));
}

Workload synthetic_workload(const ExperimentConfig& c, std::uint64_t split, std::size_t instances,
                            int threads) {
  Workload work;
  const std::size_t total = instances * c.classes.size();
  std::vector<SampledCloud> sampled(total);
  parallel_for(total, threads, [&](std::size_t k) {
    const std::size_t cls = k / instances;
    const std::size_t inst = k % instances;
    sampled[k] = generate_shape(c.classes[cls], c.points, c.ambient_points,
                                instance_seed(c.seed, split, cls, inst), c.jitter);
  });
  for (std::size_t k = 0; k < total; ++k) {
    const int label = k / instances == 0 ? 1 : -1;
    for (std::size_t idx : sampled[k].sites) work.sites.push_back({k, idx, label});
    work.clouds.push_back(std::move(sampled[k].cloud));
  }
  return work;
}

Workload lidar_workload(const ExperimentConfig& c, const LabeledCloudSet& set) {
  Workload work;
  for (const auto& lc : set.clouds) {
    std::vector<std::size_t> order(lc.cloud.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(mix_seed(c.seed, kTagLidar << 40 | static_cast<std::uint64_t>(lc.subset) << 8 |
                                 static_cast<std::uint64_t>(lc.label)));
    rng.shuffle(order.begin(), order.end());
    order.resize(std::min(order.size(), c.lidar.sample_per_subset));
    std::sort(order.begin(), order.end());
    const int label = lc.label == c.lidar.class_a_label ? 1 : -1;
    for (std::size_t idx : order) work.sites.push_back({work.clouds.size(), idx, label});
    work.clouds.push_back(lc.cloud);
  }
  return work;
}

std::string format_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void write_file(const std::filesystem::path& path, auto&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
}

std::optional<std::filesystem::path> output_dir(const ExperimentConfig& c, const RunOptions& o) {
  if (o.out_dir) return o.out_dir;
  if (!c.output.empty()) return std::filesystem::path(c.output);
  return std::nullopt;
}

}  // namespace

std::vector<std::string> mlpca_column_names(int dim, const std::vector<double>& radii) {
  static constexpr const char* axes[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (double r : radii) {
    const std::string prefix = "mlpca_r" + format_double(r);
    for (int i = 1; i <= dim; ++i) names.push_back(prefix + "_eig" + std::to_string(i));
    for (int i = 1; i <= dim; ++i) {
      for (int a = 0; a < dim; ++a) {
        names.push_back(prefix + "_vec" + std::to_string(i) + "_" + axes[a]);
      }
    }
  }
  return names;
}

std::vector<std::string> plh_column_names(const std::vector<double>& radii, const PlhSpec& spec) {
  std::vector<std::string> names;
  for (double r : radii) {
    for (const auto& e : spec) {
      for (std::size_t j = 1; j <= e.count; ++j) {
        names.push_back("plh_r" + format_double(r) + "_h" + std::to_string(e.degree) + "_" +
                        std::to_string(j));
      }
    }
  }
  return names;
}

ExtractedFeatures extract_features(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const int threads = options.threads;
  if (config.kind == ExperimentKind::kLidar) {
    const auto [train_set, test_set] = run_stage("load", options.log, [&] {
      const LabeledCloudSet all = load_labeled_xyz(config.lidar.input);
      if (all.dim() != 3) throw std::invalid_argument("lidar input must be three-dimensional");
      return split(all, config.lidar.train_subsets, config.lidar.test_subsets);
    });
    return run_stage("extract", options.log, [&] {
      return ExtractedFeatures{featurize(config, lidar_workload(config, train_set), true, threads),
                               featurize(config, lidar_workload(config, test_set), true, threads)};
    });
  }
  const auto [train_work, test_work] = run_stage("generate", options.log, [&] {
    return std::pair{synthetic_workload(config, kTagTrain, config.train_instances, threads),
                     synthetic_workload(config, kTagTest, config.test_instances, threads)};
  });
  return run_stage("extract", options.log, [&] {
    return ExtractedFeatures{featurize(config, train_work, false, threads),
                             featurize(config, test_work, false, threads)};
  });
}

ExperimentResult evaluate_modes(const ExperimentConfig& config, const ExtractedFeatures& features,
                                const RunOptions& options) {
  ExperimentResult result;
  result.name = config.name;
  const BinningSpec bins = BinningSpec::equal_probability10();
  SvmParams svm = config.svm;
  svm.seed = mix_seed(config.seed, kTagSvm);

  struct Job {
    FeatureMode mode;
    Binning binning;
    double lambda;
  };
  std::vector<Job> jobs;
  for (Binning b : config.binning) {
    for (FeatureMode m : config.features) jobs.push_back({m, b, config.svm.lambda});
  }
  const std::size_t main_jobs = jobs.size();
  if (options.lambda_sweep) {
    for (double lambda : kLambdaSweep) {
      for (Binning b : config.binning) {
        for (FeatureMode m : config.features) jobs.push_back({m, b, lambda});
      }
    }
  }

  std::vector<ResultRow> rows(jobs.size());
  run_stage("train+evaluate", options.log, [&] {
    parallel_for(jobs.size(), options.threads, [&](std::size_t j) {
      const Job& job = jobs[j];
      const FeatureMatrix train_sel = features.train.select(job.mode);
      const FeatureMatrix test_sel = features.test.select(job.mode);
      const ColumnStats stats = column_stats(train_sel);
      FeatureMatrix train = apply_standardization(train_sel, stats);
      FeatureMatrix test = apply_standardization(test_sel, stats);
      if (job.binning == Binning::kBins10) {
        train = discretize(train, bins);
        test = discretize(test, bins);
      }
      SvmParams params = svm;
      params.lambda = job.lambda;
      const LinearModel model = train_svm(train, params);
      rows[j] = {job.mode, job.binning, job.lambda, evaluate(model, test)};
    });
    return 0;
  });
  result.rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(main_jobs));
  result.sweep.assign(rows.begin() + static_cast<std::ptrdiff_t>(main_jobs), rows.end());
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const ExtractedFeatures features = extract_features(config, options);
  ExperimentResult result = evaluate_modes(config, features, options);
  if (const auto dir = output_dir(config, options)) {
    run_stage("write", options.log, [&] {
      std::filesystem::create_directories(*dir);
      write_file(*dir / "train_features.csv",
                 [&](std::ostream& os) { write_feature_csv(os, features.train); });
      write_file(*dir / "test_features.csv",
                 [&](std::ostream& os) { write_feature_csv(os, features.test); });
      write_file(*dir / "results.csv", [&](std::ostream& os) { write_results_csv(os, result.rows); });
      write_file(*dir / "results.txt", [&](std::ostream& os) { write_results_table(os, result); });
      if (!result.sweep.empty()) {
        write_file(*dir / "lambda_sweep.csv",
                   [&](std::ostream& os) { write_sweep_csv(os, result.sweep); });
      }
      return 0;
    });
  }
  return result;
}

ExtractedFeatures dump_features(const ExperimentConfig& config, const RunOptions& options) {
  ExtractedFeatures features = extract_features(config, options);
  if (const auto dir = output_dir(config, options)) {
    run_stage("write", options.log, [&] {
      std::filesystem::create_directories(*dir);
      write_file(*dir / "train_features.csv",
                 [&](std::ostream& os) { write_feature_csv(os, features.train); });
      write_file(*dir / "test_features.csv",
                 [&](std::ostream& os) { write_feature_csv(os, features.test); });
      return 0;
    });
  }
  return features;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "features,bins,sensitivity,specificity,max_error\n";
  for (const auto& r : rows) {
    os << feature_mode_name(r.mode) << ',' << binning_name(r.binning) << ','
       << format_double(r.metrics.sensitivity) << ',' << format_double(r.metrics.specificity)
       << ',' << format_double(r.metrics.max_error) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "lambda,features,bins,sensitivity,specificity,max_error\n";
  for (const auto& r : rows) {
    os << format_double(r.lambda) << ',' << feature_mode_name(r.mode) << ','
       << binning_name(r.binning) << ',' << format_double(r.metrics.sensitivity) << ','
       << format_double(r.metrics.specificity) << ',' << format_double(r.metrics.max_error)
       << '\n';
  }
}

void write_results_table(std::ostream& os, const ExperimentResult& result) {
  char line[128];
  os << result.name << '\n';
  std::snprintf(line, sizeof(line), "%-8s | %-4s | %-8s | %-8s | %-10s\n", "Features", "Bins",
                "Sens.", "Spec.", "Max Errors");
  os << line << std::string(50, '-') << '\n';
  for (const auto& r : result.rows) {
    std::snprintf(line, sizeof(line), "%-8s | %-4s | %7s%% | %7s%% | %9s%%\n",
                  std::string(feature_mode_name(r.mode)).c_str(),
                  std::string(binning_name(r.binning)).c_str(),
                  format_fixed(r.metrics.sensitivity).c_str(),
                  format_fixed(r.metrics.specificity).c_str(),
                  format_fixed(r.metrics.max_error).c_str());
    os << line;
  }
}

const ResultRow* find_row(const ExperimentResult& result, FeatureMode mode, Binning binning) {
  for (const auto& r : result.rows) {
    if (r.mode == mode && r.binning == binning) return &r;
  }
  return nullptr;
}

}  // namespace mlsa
