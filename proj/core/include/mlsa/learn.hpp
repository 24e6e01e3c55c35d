#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mlsa/features.hpp"

namespace mlsa {

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 50;
  std::uint64_t seed = 1;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  SvmParams params;

  double decision_value(std::span<const double> x) const;
  // sign(w.x + b) with 0 mapped to +1.
  int predict(std::span<const double> x) const;
};

// lambda/2 ||w||^2 + mean hinge loss; the bias is not regularised.
double svm_objective(const FeatureMatrix& data, std::span<const double> weights, double bias,
                     double lambda);

// Pegasos-style stochastic subgradient descent, step 1/(lambda t), one seeded
// permutation per epoch, iterates averaged over the final 10%.
LinearModel train_svm(const FeatureMatrix& data, const SvmParams& params);

struct Metrics {
  double sensitivity = 0.0;  // % of class +1 predicted +1
  double specificity = 0.0;  // % of class -1 predicted -1
  double max_error = 0.0;    // max(100 - sensitivity, 100 - specificity)
};

Metrics evaluate(const LinearModel& model, const FeatureMatrix& test);

// "bias value" then "w[i] value" per line.
void write_model(std::ostream& os, const LinearModel& model);
LinearModel read_model(std::istream& is);

}  // namespace mlsa
