#ifndef RINGROOTS_MATCHER_HPP_
#define RINGROOTS_MATCHER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "ringroots/roots.hpp"
#include "ringroots/xnum.hpp"

namespace ringroots {

/// |z - w| / |w| evaluated as |z/w - 1|. Saturates to +inf. Throws
/// std::domain_error for w = 0.
double relative_distance(const XComplex& z, const XComplex& w);

/// |1/z - 1/w| / |1/w| = |z - w| / |z|; +inf for z = 0.
double reciprocal_distance(const XComplex& z, const XComplex& w);

struct MatchResult {
  bool holds = false;
  /// permutation[i] is the computed root paired with predicted root i.
  std::optional<std::vector<std::size_t>> permutation;
  double worst_relative_error = 0.0;
  bool degenerate = false;
  /// Largest error of the greedy nearest-neighbour enumeration.
  double greedy_worst = 0.0;
  /// Whether greedy reaches the same verdict as the optimal assignment.
  bool greedy_agrees = true;
};

MatchResult degenerate_match();

/// Minimises the largest cost over all perfect matchings of a square matrix.
/// Returns the optimal value; perm[i] receives the column paired with row i.
double bottleneck_assignment(const std::vector<std::vector<double>>& cost,
                             std::vector<std::size_t>& perm);

/// Decides whether the computed roots can be enumerated against the predicted
/// roots with every relative error below eps / n. The first `inner_count`
/// predicted roots are compared through reciprocals, |1/z - 1/w| / |1/w|,
/// as roots of the reversed polynomial.
MatchResult match_roots(const std::vector<XComplex>& computed,
                        const std::vector<XComplex>& predicted, double eps, std::size_t n,
                        std::size_t inner_count = 0);
MatchResult match_roots(const RootSet& computed, const PredictedRoots& predicted, double eps,
                        std::size_t n);

}  // namespace ringroots

#endif  // RINGROOTS_MATCHER_HPP_
