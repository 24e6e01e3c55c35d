#include "mlsa/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace mlsa {

double linf_distance(const Dot& a, const Dot& b) {
  if (a.infinite() || b.infinite()) {
    if (a.infinite() && b.infinite()) return std::abs(a.birth - b.birth);
    return kInfinity;
  }
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const Dot& d) { return 0.5 * (d.death - d.birth); }

namespace {

struct Split {
  std::vector<Dot> finite;
  std::vector<double> infinite_births;
};

Split split(const PersistenceDiagram& d) {
  Split s;
  for (const Dot& dot : d.dots) {
    if (dot.infinite()) {
      s.infinite_births.push_back(dot.birth);
    } else {
      s.finite.push_back(dot);
    }
  }
  std::sort(s.infinite_births.begin(), s.infinite_births.end());
  return s;
}

void check_degrees(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.degree != b.degree) throw std::invalid_argument("diagram degree mismatch");
}

// Diagonal-augmented bipartite graph. Rows 0..n-1 are dots of A, rows n..n+m-1
// the diagonal copies of B's dots; columns 0..m-1 are dots of B, columns
// m..m+n-1 the diagonal copies of A's dots. Returns +inf for forbidden pairs.
class AugmentedCosts {
 public:
  AugmentedCosts(const std::vector<Dot>& a, const std::vector<Dot>& b) : a_(a), b_(b) {}

  std::size_t size() const { return a_.size() + b_.size(); }

  double operator()(std::size_t row, std::size_t col) const {
    const std::size_t n = a_.size();
    const std::size_t m = b_.size();
    if (row < n && col < m) return linf_distance(a_[row], b_[col]);
    if (row < n) return col - m == row ? diagonal_distance(a_[row]) : kInfinity;
    if (col < m) return row - n == col ? diagonal_distance(b_[col]) : kInfinity;
    return 0.0;
  }

 private:
  const std::vector<Dot>& a_;
  const std::vector<Dot>& b_;
};

// Hopcroft-Karp perfect-matching test on edges with cost <= threshold.
bool has_perfect_matching(const AugmentedCosts& cost, double threshold) {
  const std::size_t n = cost.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (cost(r, c) <= threshold) adj[r].push_back(c);
    }
    if (adj[r].empty()) return false;
  }
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_row(n, kFree), match_col(n, kFree), level(n);

  auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t r = 0; r < n; ++r) {
      if (match_row[r] == kFree) {
        level[r] = 0;
        q.push(r);
      } else {
        level[r] = kFree;
      }
    }
    while (!q.empty()) {
      const std::size_t r = q.front();
      q.pop();
      for (std::size_t c : adj[r]) {
        const std::size_t next = match_col[c];
        if (next == kFree) {
          found = true;
        } else if (level[next] == kFree) {
          level[next] = level[r] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t r) {
    for (std::size_t c : adj[r]) {
      const std::size_t next = match_col[c];
      if (next == kFree || (level[next] == level[r] + 1 && dfs(next))) {
        match_row[r] = c;
        match_col[c] = r;
        return true;
      }
    }
    level[r] = kFree;
    return false;
  };

  std::size_t matched = 0;
  while (bfs()) {
    for (std::size_t r = 0; r < n; ++r) {
      if (match_row[r] == kFree && dfs(r)) ++matched;
    }
  }
  return matched == n;
}

double finite_bottleneck(const std::vector<Dot>& a, const std::vector<Dot>& b) {
  if (a.empty() && b.empty()) return 0.0;
  const AugmentedCosts cost(a, b);
  std::vector<double> candidates{0.0};
  for (std::size_t r = 0; r < cost.size(); ++r) {
    for (std::size_t c = 0; c < cost.size(); ++c) {
      const double v = cost(r, c);
      if (std::isfinite(v)) candidates.push_back(v);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // The optimum is one of the candidate costs; search for the smallest feasible one.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_perfect_matching(cost, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

// Minimum-cost perfect assignment (shortest augmenting path Hungarian method).
double min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return 0.0;
  constexpr double kBig = std::numeric_limits<double>::max() / 4;
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kBig);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kBig;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  check_degrees(a, b);
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.infinite_births.size() != sb.infinite_births.size()) return kInfinity;
  // Sorted pairing is optimal for points on a line.
  double worst = 0.0;
  for (std::size_t i = 0; i < sa.infinite_births.size(); ++i) {
    worst = std::max(worst, std::abs(sa.infinite_births[i] - sb.infinite_births[i]));
  }
  return std::max(worst, finite_bottleneck(sa.finite, sb.finite));
}

double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
  check_degrees(a, b);
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("wasserstein order p must be >= 1");
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.infinite_births.size() != sb.infinite_births.size()) return kInfinity;
  double total = 0.0;
  for (std::size_t i = 0; i < sa.infinite_births.size(); ++i) {
    total += std::pow(std::abs(sa.infinite_births[i] - sb.infinite_births[i]), p);
  }
  const AugmentedCosts cost(sa.finite, sb.finite);
  const std::size_t n = cost.size();
  // Forbidden pairs get a cost larger than any feasible assignment.
  double feasible_bound = 1.0;
  for (const Dot& d : sa.finite) feasible_bound += std::pow(diagonal_distance(d), p);
  for (const Dot& d : sb.finite) feasible_bound += std::pow(diagonal_distance(d), p);
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = cost(r, c);
      matrix[r][c] = std::isfinite(v) ? std::pow(v, p) : 2.0 * feasible_bound;
    }
  }
  total += min_cost_assignment(matrix);
  return std::pow(total, 1.0 / p);
}

std::vector<double> top_k_persistences(const PersistenceDiagram& d, std::size_t k, double cap) {
  const PersistenceDiagram capped = restrict_to_cap(d, cap);
  std::vector<double> out;
  out.reserve(std::max(k, capped.size()));
  for (const Dot& dot : capped.dots) out.push_back(dot.persistence());
  std::sort(out.begin(), out.end(), std::greater<>());
  out.resize(k, 0.0);
  return out;
}

}  // namespace mlsa
