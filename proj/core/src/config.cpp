#include "mlsa/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace mlsa {

std::string_view binning_name(Binning b) { return b == Binning::kNone ? "No" : "10"; }

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid config:";
  for (const auto& s : items) out += "\n  - " + s;
  return out;
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "crossing") return ExperimentKind::kCrossing;
  if (s == "sides") return ExperimentKind::kSides;
  if (s == "lidar") return ExperimentKind::kLidar;
  throw std::invalid_argument("unknown kind '" + s + "' (crossing|sides|lidar)");
}

Binning parse_binning(const std::string& s) {
  if (s == "none" || s == "no") return Binning::kNone;
  if (s == "bins10" || s == "10") return Binning::kBins10;
  throw std::invalid_argument("unknown binning '" + s + "' (none|bins10)");
}

const std::set<std::string> kTopLevelKeys = {
    "name",   "kind",     "seed", "classes",  "points", "ambient_points", "jitter",
    "train_instances", "test_instances", "radii", "plh", "features", "binning",
    "svm",    "output",   "lidar"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::kCrossing:
      c.classes = {Shape::kPlus, Shape::kX};
      c.radii = {0.1, 0.2, 0.3};
      c.plh = {{0, 6}};
      c.resolution = kDefaultCircleResolution;
      break;
    case ExperimentKind::kSides:
      c.classes = {Shape::kSideOne, Shape::kSideBoth};
      c.radii = {0.2, 0.4};
      c.plh = {{1, 1}};
      c.resolution = kDefaultCircleResolution;
      break;
    case ExperimentKind::kLidar:
      c.radii = {0.0625, 0.125};
      c.plh = {{0, 1}, {1, 1}};
      c.resolution = kDefaultSphereLevel;
      break;
  }
  return c;
}

ExperimentConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("YAML syntax: ") + e.what()});
  }
  if (!root.IsMap()) throw ConfigError({"config must be a mapping"});

  std::vector<std::string> errors;
  auto guard = [&](const char* key, auto&& fn) {
    try {
      if (root[key]) fn(root[key]);
    } catch (const YAML::Exception& e) {
      errors.push_back(std::string(key) + ": " + e.what());
    } catch (const std::exception& e) {
      errors.push_back(std::string(key) + ": " + e.what());
    }
  };

  ExperimentKind kind = ExperimentKind::kCrossing;
  guard("kind", [&](const YAML::Node& n) { kind = parse_kind(n.as<std::string>()); });
  ExperimentConfig c = default_config(kind);

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kTopLevelKeys.contains(key)) errors.push_back("unknown key '" + key + "'");
  }

  guard("name", [&](const YAML::Node& n) { c.name = n.as<std::string>(); });
  guard("seed", [&](const YAML::Node& n) { c.seed = n.as<std::uint64_t>(); });
  guard("classes", [&](const YAML::Node& n) {
    c.classes.clear();
    for (const auto& s : n) c.classes.push_back(parse_shape(s.as<std::string>()));
  });
  guard("points", [&](const YAML::Node& n) { c.points = n.as<std::size_t>(); });
  guard("ambient_points", [&](const YAML::Node& n) { c.ambient_points = n.as<std::size_t>(); });
  guard("jitter", [&](const YAML::Node& n) { c.jitter = n.as<double>(); });
  guard("train_instances", [&](const YAML::Node& n) { c.train_instances = n.as<std::size_t>(); });
  guard("test_instances", [&](const YAML::Node& n) { c.test_instances = n.as<std::size_t>(); });
  guard("radii", [&](const YAML::Node& n) { c.radii = n.as<std::vector<double>>(); });
  guard("plh", [&](const YAML::Node& n) {
    if (n["resolution"]) c.resolution = n["resolution"].as<int>();
    if (n["classes"]) {
      c.plh.clear();
      for (const auto& e : n["classes"]) {
        c.plh.push_back({e["degree"].as<int>(), e["count"].as<std::size_t>()});
      }
    }
  });
  guard("features", [&](const YAML::Node& n) {
    c.features.clear();
    for (const auto& s : n) c.features.push_back(parse_feature_mode(s.as<std::string>()));
  });
  guard("binning", [&](const YAML::Node& n) {
    c.binning.clear();
    for (const auto& s : n) c.binning.push_back(parse_binning(s.as<std::string>()));
  });
  guard("svm", [&](const YAML::Node& n) {
    if (n["lambda"]) c.svm.lambda = n["lambda"].as<double>();
    if (n["epochs"]) c.svm.epochs = n["epochs"].as<int>();
  });
  guard("output", [&](const YAML::Node& n) { c.output = n.as<std::string>(); });
  guard("lidar", [&](const YAML::Node& n) {
    if (n["input"]) c.lidar.input = n["input"].as<std::string>();
    if (n["train_subsets"]) c.lidar.train_subsets = n["train_subsets"].as<std::vector<int>>();
    if (n["test_subsets"]) c.lidar.test_subsets = n["test_subsets"].as<std::vector<int>>();
    if (n["sample_per_subset"]) c.lidar.sample_per_subset = n["sample_per_subset"].as<std::size_t>();
    if (n["class_a_label"]) c.lidar.class_a_label = n["class_a_label"].as<int>();
  });
  c.svm.seed = c.seed;

  if (!errors.empty()) throw ConfigError(std::move(errors));
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig c = parse_config(buffer.str());
  // Relative lidar inputs resolve against the config's directory.
  if (c.kind == ExperimentKind::kLidar && !c.lidar.input.empty()) {
    const std::filesystem::path input(c.lidar.input);
    if (input.is_relative()) c.lidar.input = (path.parent_path() / input).string();
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  if (c.name.empty()) errors.push_back("name must not be empty");
  if (c.radii.empty()) errors.push_back("radii must not be empty");
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    if (!(c.radii[i] > 0.0)) errors.push_back("radii must be positive");
    if (i > 0 && !(c.radii[i] > c.radii[i - 1])) errors.push_back("radii must be strictly increasing");
  }
  if (c.plh.empty()) errors.push_back("plh.classes must not be empty");
  for (const auto& e : c.plh) {
    if (e.degree != 0 && e.degree != 1) errors.push_back("plh degree must be 0 or 1");
    if (e.count == 0) errors.push_back("plh class count must be positive");
  }
  if (c.dim() == 2 && c.resolution < 3) errors.push_back("plh.resolution must be >= 3 in 2-D");
  if (c.dim() == 3 && (c.resolution < 0 || c.resolution > 7)) {
    errors.push_back("plh.resolution (subdivision level) must be in [0, 7] in 3-D");
  }
  if (c.features.empty()) errors.push_back("features must not be empty");
  if (c.binning.empty()) errors.push_back("binning must not be empty");
  if (!(c.svm.lambda > 0.0)) errors.push_back("svm.lambda must be positive");
  if (c.svm.epochs < 1) errors.push_back("svm.epochs must be >= 1");
  if (c.jitter < 0.0) errors.push_back("jitter must be non-negative");

  if (c.kind == ExperimentKind::kLidar) {
    if (c.lidar.input.empty()) errors.push_back("lidar.input is required for kind lidar");
    if (c.lidar.train_subsets.empty()) errors.push_back("lidar.train_subsets must not be empty");
    if (c.lidar.test_subsets.empty()) errors.push_back("lidar.test_subsets must not be empty");
    if (c.lidar.sample_per_subset == 0) errors.push_back("lidar.sample_per_subset must be positive");
    if (c.lidar.class_a_label < 0 || c.lidar.class_a_label > kMaxLabel) {
      errors.push_back("lidar.class_a_label must be 0 or 1");
    }
  } else {
    if (c.classes.size() != 2) errors.push_back("classes must list exactly two shapes");
    for (Shape s : c.classes) {
      const bool crossing = is_crossing(s);
      if (crossing != (c.kind == ExperimentKind::kCrossing)) {
        errors.push_back("shape '" + std::string(shape_name(s)) + "' does not belong to kind " +
                         (c.kind == ExperimentKind::kCrossing ? "crossing" : "sides"));
      }
    }
    if (c.points == 0) errors.push_back("points must be positive");
    if (c.kind == ExperimentKind::kSides && c.ambient_points == 0) {
      errors.push_back("ambient_points must be positive");
    }
    if (c.train_instances == 0) errors.push_back("train_instances must be positive");
    if (c.test_instances == 0) errors.push_back("test_instances must be positive");
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

}  // namespace mlsa
