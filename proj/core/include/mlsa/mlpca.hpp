#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mlsa/geometry.hpp"

namespace mlsa {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct SymmetricEigen {
  std::array<double, 3> values{};  // descending
  Matrix3 vectors{};               // vectors[i] pairs with values[i]
};

// Cyclic Jacobi on the leading n x n block (n = 2 or 3). Eigenvalues come back
// sorted descending; each eigenvector is flipped so its largest-magnitude
// component is positive (first such component on ties).
SymmetricEigen symmetric_eigen(const Matrix3& a, int n);

struct LocalPcaResult {
  double radius = 0.0;
  std::size_t neighbors = 0;
  int dim = 2;
  Point mean{};
  Matrix3 covariance{};
  SymmetricEigen eigen;
};

// PCA of the points within `radius` of `center`, covariance normalised by 1/n.
// Fewer than two neighbours yields zero eigenvalues and the standard basis.
LocalPcaResult local_pca(const PointCloud& cloud, const Point& center, double radius);

std::size_t mlpca_feature_width(int dim, std::size_t num_radii);

// Per radius: D eigenvalues then the D eigenvectors' components, eigenvector-major.
std::vector<double> mlpca_features(const PointCloud& cloud, const Point& center,
                                   std::span<const double> radii);

}  // namespace mlsa
