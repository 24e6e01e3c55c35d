#include "mlsa/mlpca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlsa {

namespace {

Matrix3 identity() {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
  return m;
}

void fix_sign(std::array<double, 3>& v, int n) {
  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (int i = 0; i < n; ++i) v[i] = -v[i];
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix3& input, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("eigen solver supports 2x2 and 3x3");
  Matrix3 a = input;
  Matrix3 v = identity();  // columns accumulate the rotations

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
      scale += a[i][i] * a[i][i];
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off == 0.0 || off <= 1e-36 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int x, int y) { return a[x][x] > a[y][y]; });
  SymmetricEigen out;
  for (int i = 0; i < n; ++i) {
    out.values[i] = a[order[i]][order[i]];
    for (int k = 0; k < n; ++k) out.vectors[i][k] = v[k][order[i]];
    fix_sign(out.vectors[i], n);
  }
  return out;
}

LocalPcaResult local_pca(const PointCloud& cloud, const Point& center, double radius) {
  const int n = cloud.dim();
  LocalPcaResult result;
  result.radius = radius;
  result.dim = n;
  const std::vector<std::size_t> idx = cloud.range_query(Ball(center, radius));
  result.neighbors = idx.size();
  if (idx.size() < 2) {
    if (idx.size() == 1) result.mean = cloud[idx[0]];
    result.eigen.vectors = identity();
    return result;
  }

  const double inv = 1.0 / static_cast<double>(idx.size());
  for (std::size_t i : idx) {
    for (int a = 0; a < n; ++a) result.mean[a] += cloud[i][a];
  }
  for (int a = 0; a < n; ++a) result.mean[a] *= inv;
  Matrix3& cov = result.covariance;
  for (std::size_t i : idx) {
    std::array<double, 3> d{};
    for (int a = 0; a < n; ++a) d[a] = cloud[i][a] - result.mean[a];
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) cov[a][b] += d[a] * d[b];
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      cov[a][b] *= inv;
      cov[b][a] = cov[a][b];
    }
  }
  result.eigen = symmetric_eigen(cov, n);
  // Round-off can leave tiny negatives for flat neighbourhoods.
  for (int a = 0; a < n; ++a) result.eigen.values[a] = std::max(result.eigen.values[a], 0.0);
  return result;
}

std::size_t mlpca_feature_width(int dim, std::size_t num_radii) {
  const auto d = static_cast<std::size_t>(dim);
  return num_radii * (d + d * d);
}

std::vector<double> mlpca_features(const PointCloud& cloud, const Point& center,
                                   std::span<const double> radii) {
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("radii must be strictly increasing");
  }
  const int n = cloud.dim();
  std::vector<double> out;
  out.reserve(mlpca_feature_width(n, radii.size()));
  for (double radius : radii) {
    const LocalPcaResult pca = local_pca(cloud, center, radius);
    for (int i = 0; i < n; ++i) out.push_back(pca.eigen.values[i]);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) out.push_back(pca.eigen.vectors[i][k]);
    }
  }
  return out;
}

}  // namespace mlsa
