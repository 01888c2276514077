#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ringroots/matcher.hpp"
#include "ringroots/sampler.hpp"
#include "support/pairing.hpp"

using namespace ringroots;
using namespace ringroots::testing;
using std::numbers::pi;

namespace {

// Exact bottleneck value by dynamic programming over column subsets.
double subset_bottleneck(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  std::vector<double> best(std::size_t{1} << n, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < best.size(); ++mask) {
    if (!std::isfinite(best[mask])) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      best[next] = std::min(best[next], std::max(best[mask], cost[row][j]));
    }
  }
  return best.back();
}

}  // namespace

TEST_CASE("relative distance") {
  const XComplex w = XComplex::polar(3.0, 1.0);
  CHECK(relative_distance(w, w) == 0.0);
  CHECK(relative_distance(xmul(XComplex::from_complex({2, 0}), w), w) == doctest::Approx(1.0));
  const XComplex a = XComplex::polar(-50.0 + std::log1p(1e-6), pi);
  const XComplex b = XComplex::polar(-50.0, pi);
  CHECK(relative_distance(a, b) == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK(relative_distance(XComplex::polar(1e6, 0.0), XComplex::one()) == std::numeric_limits<double>::infinity());
  CHECK(relative_distance(XComplex::zero_value(), w) == 1.0);
  CHECK_THROWS_AS(relative_distance(w, XComplex::zero_value()), std::domain_error);
}

TEST_CASE("reciprocal distance") {
  const XComplex w = XComplex::polar(-7.0, 0.3);
  CHECK(reciprocal_distance(w, w) == 0.0);
  // |z - w| / |z| with z = 2w gives 1/2.
  const XComplex z = xmul(XComplex::from_complex({2, 0}), w);
  CHECK(reciprocal_distance(z, w) == doctest::Approx(0.5));
  CHECK(relative_distance(z, w) == doctest::Approx(1.0));
  CHECK(reciprocal_distance(XComplex::zero_value(), w) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(reciprocal_distance(w, XComplex::zero_value()), std::domain_error);
}

TEST_CASE("inner rows are compared through reciprocals") {
  // Predicted w = 1, computed z = 1.9: relative error 0.9, reciprocal error 0.9 / 1.9.
  const std::vector<XComplex> predicted = {XComplex::one(), XComplex::polar(40.0, 0.0)};
  const std::vector<XComplex> computed = {XComplex::from_complex({1.9, 0}), XComplex::polar(40.0, 0.0)};
  const auto plain = match_roots(computed, predicted, 0.95, 2, 0);
  const auto inner = match_roots(computed, predicted, 0.95, 2, 1);
  CHECK(plain.worst_relative_error == doctest::Approx(0.9));
  CHECK_FALSE(plain.holds);
  CHECK(inner.worst_relative_error == doctest::Approx(0.9 / 1.9));
  CHECK(inner.holds);
  CHECK_THROWS_AS(match_roots(computed, predicted, 0.5, 2, 3), std::invalid_argument);
}

TEST_CASE("exact match holds for every eps") {
  std::mt19937_64 rng(71);
  const auto roots = random_coeffs(rng, 6, -10, 10);
  for (double eps : {1e-9, 0.5, 0.999}) {
    const auto m = match_roots(roots, roots, eps, roots.size());
    CHECK(m.holds);
    CHECK(m.worst_relative_error == 0.0);
    REQUIRE(m.permutation.has_value());
    CHECK(m.permutation->size() == roots.size());
  }
}

TEST_CASE("quadratic with a dominant middle coefficient") {
  const auto c = make_coefficient_vector({XComplex::one(), XComplex::polar(50, 0), XComplex::one()});
  const auto rs = aberth_solve(Polynomial(c.coeffs));
  const auto m = match_roots(rs, predicted_roots(c), 0.5, 2);
  CHECK(m.holds);
  CHECK(m.worst_relative_error <= std::exp(-99.0));
  CHECK(m.greedy_agrees);
}

TEST_CASE("rotated prediction fails to match") {
  std::vector<XComplex> predicted;
  std::vector<XComplex> computed;
  for (int j = 0; j < 4; ++j) {
    for (double l : {-10.0, 10.0}) {
      predicted.push_back(XComplex::polar(l, pi / 4 + j * pi / 2));
      computed.push_back(XComplex::polar(l, pi / 4 + j * pi / 2 + pi / 8));
    }
  }
  const auto m = match_roots(computed, predicted, 0.9, 8);
  CHECK(m.worst_relative_error == doctest::Approx(2 * std::sin(pi / 16)).epsilon(1e-12));
  CHECK_FALSE(m.holds);
}

TEST_CASE("bottleneck assignment is optimal") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    // A few repeated values exercise ties.
    for (auto& row : cost) {
      for (double& c : row) c = t % 3 == 0 ? std::floor(4 * u(rng)) : u(rng);
    }
    std::vector<std::size_t> perm;
    const double v = bottleneck_assignment(cost, perm);
    CHECK(v == subset_bottleneck(cost));
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(sorted[i] == i);
      CHECK(cost[i][perm[i]] <= v);
    }
  }
}

TEST_CASE("matching is invariant under permuting the computed roots") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 20;
    const auto predicted = random_coeffs(rng, n - 1, -5, 5);
    auto computed = predicted;
    for (auto& z : computed) {
      z = XComplex::polar(z.logmag + 1e-3 * std::normal_distribution<double>()(rng),
                          z.phase + 1e-3 * std::normal_distribution<double>()(rng));
    }
    const auto a = match_roots(computed, predicted, 0.5, n);
    std::shuffle(computed.begin(), computed.end(), rng);
    const auto b = match_roots(computed, predicted, 0.5, n);
    CHECK(a.holds == b.holds);
    CHECK(a.worst_relative_error == b.worst_relative_error);
    REQUIRE(b.permutation.has_value());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(relative_distance(computed[(*b.permutation)[i]], predicted[i]) <= b.worst_relative_error);
    }
  }
}

TEST_CASE("preconditions and degenerate results") {
  const std::vector<XComplex> two = {XComplex::one(), XComplex::polar(1, 0)};
  CHECK_THROWS_AS(match_roots(two, two, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(match_roots(two, two, 1.0, 2), std::invalid_argument);
  const auto d = degenerate_match();
  CHECK(d.degenerate);
  CHECK_FALSE(d.holds);
  CHECK_FALSE(d.permutation.has_value());
}
