#include "ringroots/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ringroots {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp on the graph {(i, j) : cost[i][j] <= thr}.
class Matching {
 public:
  Matching(const std::vector<std::vector<double>>& cost, double thr)
      : n_(cost.size()), adj_(n_), row_(n_, kNone), col_(n_, kNone), dist_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (cost[i][j] <= thr) adj_[i].push_back(j);
      }
    }
  }

  std::size_t run() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (row_[i] == kNone && dfs(i)) ++size;
      }
    }
    return size;
  }

  const std::vector<std::size_t>& rows() const { return row_; }

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_[i] == kNone) {
        dist_[i] = 0;
        q.push(i);
      } else {
        dist_[i] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      for (std::size_t j : adj_[i]) {
        const std::size_t k = col_[j];
        if (k == kNone) {
          found = true;
        } else if (dist_[k] == kNone) {
          dist_[k] = dist_[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t i) {
    for (std::size_t j : adj_[i]) {
      const std::size_t k = col_[j];
      if (k == kNone || (dist_[k] == dist_[i] + 1 && dfs(k))) {
        row_[i] = j;
        col_[j] = i;
        return true;
      }
    }
    dist_[i] = kNone;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> row_, col_, dist_;
};

double greedy_worst(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  std::vector<char> used(n, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && (best == kNone || cost[i][j] < cost[i][best])) best = j;
    }
    used[best] = 1;
    worst = std::max(worst, cost[i][best]);
  }
  return worst;
}

}  // namespace

double relative_distance(const XComplex& z, const XComplex& w) {
  if (w.zero) throw std::domain_error("relative_distance: w must be nonzero");
  const XComplex d = xsub(xdiv(z, w), XComplex::one());
  if (d.zero) return 0.0;
  return std::exp(d.logmag);  // +inf once logmag exceeds the double range
}

double reciprocal_distance(const XComplex& z, const XComplex& w) {
  if (w.zero) throw std::domain_error("reciprocal_distance: w must be nonzero");
  if (z.zero) return std::numeric_limits<double>::infinity();
  return relative_distance(xinv(z), xinv(w));
}

MatchResult degenerate_match() {
  MatchResult m;
  m.degenerate = true;
  m.holds = false;
  m.greedy_agrees = true;
  m.worst_relative_error = std::numeric_limits<double>::quiet_NaN();
  m.greedy_worst = std::numeric_limits<double>::quiet_NaN();
  return m;
}

double bottleneck_assignment(const std::vector<std::vector<double>>& cost,
                             std::vector<std::size_t>& perm) {
  const std::size_t n = cost.size();
  perm.assign(n, 0);
  if (n == 0) return 0.0;

  // Every row and every column must use some edge, so the answer is at least
  // the largest row or column minimum.
  double lower = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rmin = std::numeric_limits<double>::infinity();
    double cmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      rmin = std::min(rmin, cost[i][j]);
      cmin = std::min(cmin, cost[j][i]);
    }
    lower = std::max({lower, rmin, cmin});
  }
  std::vector<double> values;
  values.reserve(n * n);
  for (const auto& row : cost) {
    for (double c : row) {
      if (c >= lower) values.push_back(c);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (Matching(cost, values[mid]).run() == n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  Matching m(cost, values[lo]);
  m.run();
  perm = m.rows();
  return values[lo];
}

MatchResult match_roots(const std::vector<XComplex>& computed,
                        const std::vector<XComplex>& predicted, double eps, std::size_t n,
                        std::size_t inner_count) {
  if (computed.size() != n || predicted.size() != n) {
    throw std::invalid_argument("match_roots: computed and predicted must both have n roots");
  }
  if (inner_count > n) throw std::invalid_argument("match_roots: inner_count exceeds n");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("match_roots: eps must lie in (0, 1)");

  // Rows are predicted roots, columns computed roots.
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = i < inner_count ? reciprocal_distance(computed[j], predicted[i])
                                   : relative_distance(computed[j], predicted[i]);
    }
  }
  const double bound = eps / static_cast<double>(n);
  MatchResult r;
  std::vector<std::size_t> perm;
  r.worst_relative_error = bottleneck_assignment(cost, perm);
  r.permutation = std::move(perm);
  r.holds = r.worst_relative_error < bound;
  r.greedy_worst = greedy_worst(cost);
  r.greedy_agrees = (r.greedy_worst < bound) == r.holds;
  return r;
}

MatchResult match_roots(const RootSet& computed, const PredictedRoots& predicted, double eps,
                        std::size_t n) {
  return match_roots(computed.roots, predicted.all(), eps, n, predicted.inner.size());
}

}  // namespace ringroots
