#include "mlsa/learn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mlsa/random.hpp"
#include "mlsa/text_io.hpp"

namespace mlsa {

double LinearModel::decision_value(std::span<const double> x) const {
  if (x.size() != weights.size()) throw std::invalid_argument("feature count mismatch");
  double s = bias;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

int LinearModel::predict(std::span<const double> x) const {
  return decision_value(x) >= 0.0 ? 1 : -1;
}

double svm_objective(const FeatureMatrix& data, std::span<const double> weights, double bias,
                     double lambda) {
  double norm2 = 0.0;
  for (double w : weights) norm2 += w * w;
  double hinge = 0.0;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    double s = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * data.rows[r][i];
    hinge += std::max(0.0, 1.0 - data.labels[r] * s);
  }
  return 0.5 * lambda * norm2 + hinge / static_cast<double>(data.rows.size());
}

LinearModel train_svm(const FeatureMatrix& data, const SvmParams& params) {
  if (!(params.lambda > 0.0)) throw std::invalid_argument("svm lambda must be positive");
  if (params.epochs < 1) throw std::invalid_argument("svm needs at least one epoch");
  data.validate();
  const bool has_pos = std::find(data.labels.begin(), data.labels.end(), 1) != data.labels.end();
  const bool has_neg = std::find(data.labels.begin(), data.labels.end(), -1) != data.labels.end();
  if (!has_pos || !has_neg) throw std::invalid_argument("degenerate training set");
  for (const auto& row : data.rows) {
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("training features must be finite");
    }
  }

  const std::size_t n = data.rows.size();
  const std::size_t dim = data.num_columns();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * params.epochs;
  const std::uint64_t average_from = total - std::max<std::uint64_t>(1, total / 10);
  const double radius = 1.0 / std::sqrt(params.lambda);

  std::vector<double> w(dim, 0.0);
  double scale = 1.0;  // w is stored as scale * w to make shrinking O(1)
  double b = 0.0;
  std::vector<double> w_sum(dim, 0.0);
  double b_sum = 0.0;
  std::uint64_t averaged = 0;

  Rng rng(params.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t t = 0;
  double norm2 = 0.0;  // ||scale * w||^2

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    norm2 = 0.0;
    for (double v : w) norm2 += v * v;
    norm2 *= scale * scale;
    for (std::size_t idx : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const auto& x = data.rows[idx];
      const double y = data.labels[idx];
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += w[i] * x[i];
      const double margin = y * (scale * dot + b);

      const double shrink = 1.0 - eta * params.lambda;
      if (shrink <= 0.0) {
        std::fill(w.begin(), w.end(), 0.0);
        scale = 1.0;
        norm2 = 0.0;
      } else {
        scale *= shrink;
        norm2 *= shrink * shrink;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        double xx = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          w[i] += step * x[i];
          xx += x[i] * x[i];
        }
        norm2 += 2.0 * eta * y * scale * dot + eta * eta * xx;
        b += eta * y;
      }
      // Projection onto the ball that contains the optimum.
      if (norm2 > radius * radius) {
        const double f = radius / std::sqrt(norm2);
        scale *= f;
        norm2 = radius * radius;
      }
      if (scale < 1e-100) {
        for (double& v : w) v *= scale;
        scale = 1.0;
      }
      if (t > average_from) {
        for (std::size_t i = 0; i < dim; ++i) w_sum[i] += scale * w[i];
        b_sum += b;
        ++averaged;
      }
    }
  }

  LinearModel model;
  model.params = params;
  model.weights.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) model.weights[i] = w_sum[i] / static_cast<double>(averaged);
  model.bias = b_sum / static_cast<double>(averaged);
  return model;
}

Metrics evaluate(const LinearModel& model, const FeatureMatrix& test) {
  test.validate();
  std::size_t pos = 0, neg = 0, true_pos = 0, true_neg = 0;
  for (std::size_t r = 0; r < test.rows.size(); ++r) {
    const int predicted = model.predict(test.rows[r]);
    if (test.labels[r] == 1) {
      ++pos;
      if (predicted == 1) ++true_pos;
    } else {
      ++neg;
      if (predicted == -1) ++true_neg;
    }
  }
  if (pos == 0 || neg == 0) throw std::invalid_argument("evaluation set is missing a class");
  Metrics m;
  m.sensitivity = 100.0 * static_cast<double>(true_pos) / static_cast<double>(pos);
  m.specificity = 100.0 * static_cast<double>(true_neg) / static_cast<double>(neg);
  m.max_error = std::max(100.0 - m.sensitivity, 100.0 - m.specificity);
  return m;
}

void write_model(std::ostream& os, const LinearModel& model) {
  os << "bias " << format_double(model.bias) << '\n';
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    os << "w[" << i << "] " << format_double(model.weights[i]) << '\n';
  }
}

LinearModel read_model(std::istream& is) {
  LinearModel model;
  std::string line;
  std::size_t lineno = 0;
  bool have_bias = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_skippable(line)) continue;
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 2) throw ParseError(lineno, "expected 'name value'");
    const auto value = parse_double(tokens[1]);
    if (!value) throw ParseError(lineno, "malformed model value");
    if (tokens[0] == "bias") {
      model.bias = *value;
      have_bias = true;
    } else if (tokens[0] == "w[" + std::to_string(model.weights.size()) + "]") {
      model.weights.push_back(*value);
    } else {
      throw ParseError(lineno, "unexpected entry '" + std::string(tokens[0]) + "'");
    }
  }
  if (!have_bias) throw ParseError(lineno, "model has no bias line");
  return model;
}

}  // namespace mlsa
