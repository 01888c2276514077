// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 7   run one criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ringroots/experiments.hpp"
#include "ringroots/io.hpp"
#include "ringroots/localization.hpp"
#include "ringroots/matcher.hpp"
#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"
#include "support/mp_oracle.hpp"
#include "support/xnum_properties.hpp"

using namespace ringroots;
using namespace ringroots::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig make_config(ExperimentKind kind, CoefficientDistribution dist,
                             std::vector<std::size_t> degrees, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.dist = dist;
  cfg.degrees = std::move(degrees);
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.threads = 0;
  return cfg;
}

// p_{i+1} >= p_i - 2 * se of the difference, for consecutive degrees.
bool non_decreasing(const std::vector<Estimate>& e, std::string& detail) {
  bool ok = true;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double se = std::sqrt(e[i].se * e[i].se + e[i + 1].se * e[i + 1].se);
    if (e[i + 1].p < e[i].p - 2.0 * se) {
      ok = false;
      detail += fmt(" [drop %.3f -> %.3f beyond 2 SE = %.3f]", e[i].p, e[i + 1].p, 2.0 * se);
    }
  }
  return ok;
}

std::vector<XComplex> random_poly(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> lm(lo, hi);
  std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
  std::vector<XComplex> c;
  for (std::size_t j = 0; j <= n; ++j) c.push_back(XComplex::polar(lm(rng), ph(rng)));
  return c;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int unconverged = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = t % 2 ? 3 : 2;
    const auto c = random_poly(rng, n, -100, 100);
    const auto rs = aberth_solve(Polynomial(c));
    if (!rs.converged) ++unconverged;
    const auto exact = n == 2 ? mp_quadratic_roots(c) : mp_cubic_roots(c);
    worst = std::max(worst, best_pairing_error(rs.roots, exact));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && unconverged == 0 && secs < 10.0,
          fmt("worst relative error %.3g (limit 1e-8), unconverged %d, %.2fs (limit 10s)", worst, unconverged, secs)};
}

Outcome pellet_soundness() {
  std::mt19937_64 rng(2002);
  int certified = 0, violations = 0, attempts = 0, unconverged = 0;
  const double spans[] = {5.0, 40.0, 300.0};
  while (certified < 1000 && attempts < 200000) {
    ++attempts;
    const std::size_t n = 2 + rng() % 59;
    const double span = spans[rng() % 3];
    auto c = random_poly(rng, n, -span, span);
    const std::size_t k = 1 + rng() % (n - 1);
    c[k] = XComplex::polar(c[k].logmag + std::uniform_real_distribution<double>(0, span + 60)(rng), c[k].phase);
    const Polynomial p(c);
    const auto cert = pellet_certify(p, k);
    if (!cert) continue;
    ++certified;
    const auto rs = aberth_solve(p);
    if (!rs.converged) ++unconverged;
    std::size_t inside = 0, outside = 0;
    for (const auto& z : rs.roots) {
      if (z.logmag < cert->r_logmag) ++inside;
      if (z.logmag > cert->R_logmag) ++outside;
    }
    if (inside != k || outside != n - k) ++violations;
  }
  return {certified == 1000 && violations == 0 && unconverged == 0,
          fmt("%d certificates from %d instances, %d count violations, %d unconverged", certified, attempts,
              violations, unconverged)};
}

// log(1 + sum_{j != k} a_j) <= log(1 - eps/n) + (n-k) log(eps/(n+eps)) + log(a_k)/(n-k),
// evaluated in long double independently of the library.
bool dominance_conclusion(const std::vector<long double>& la, std::size_t k, long double eps) {
  const std::size_t n = la.size() - 1;
  long double mx = 0.0L;  // the "+1" term
  for (std::size_t j = 0; j <= n; ++j) {
    if (j != k) mx = std::max(mx, la[j]);
  }
  long double sum = std::exp(-mx);
  for (std::size_t j = 0; j <= n; ++j) {
    if (j != k && std::isfinite(la[j])) sum += std::exp(la[j] - mx);
  }
  const long double lhs = mx + std::log(sum);
  const long double nd = static_cast<long double>(n);
  const long double m = static_cast<long double>(n - k);
  const long double rhs = std::log1p(-eps / nd) + m * std::log(eps / (nd + eps)) + la[k] / m;
  return lhs <= rhs;
}

Outcome dominance_algebra() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int premise = 0, violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 2 + rng() % 39;
    const std::size_t k = 1 + rng() % (n - 1);
    const double eps = 0.01 + 0.98 * u(rng);
    std::vector<XReal> a(n + 1);
    double log1p_sum = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      a[j] = u(rng) < 0.1 ? XReal::zero() : XReal::from_log(-20.0 + 23.0 * u(rng));
      if (j != k && !a[j].is_zero()) log1p_sum += log1p_exp(a[j].logmag);
    }
    const double nn = static_cast<double>(n);
    const double threshold = dominance_threshold_logmag(n, eps);
    double lk = 0.0;
    switch (t % 3) {
      case 0: lk = threshold - 5.0 + 55.0 * u(rng); break;                           // near the threshold
      case 1: lk = 2 * nn * nn * log1p_sum * (0.99 + 0.06 * u(rng)); break;           // near the product bound
      default: lk = -5.0 + 1e4 * u(rng); break;
    }
    a[k] = XReal::from_log(lk);
    if (!dominance_condition(a, k, eps)) continue;
    ++premise;
    std::vector<long double> la(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      la[j] = a[j].is_zero() ? -std::numeric_limits<long double>::infinity() : static_cast<long double>(a[j].logmag);
    }
    if (!dominance_conclusion(la, k, eps)) ++violations;
  }
  return {violations == 0 && premise > 0,
          fmt("10000 vectors, %d satisfy both conditions, %d conclusion violations", premise, violations)};
}

ExperimentConfig theorem2_config() {
  CoefficientDistribution d{TailVariant::DoubleLogSlowTail, 1.0, 690.0, PhaseModel::UniformPhase};
  auto cfg = make_config(ExperimentKind::Theorem2, d, {20, 50}, 200, 6006);
  cfg.eps = 0.5;
  return cfg;
}

// Largest relative error of the best pairing of the n - tau largest computed
// roots with the predicted outer roots.
double outer_error(const TrialRecord& rec, const PredictedRoots& pr) {
  std::vector<XComplex> roots = rec.roots;
  std::sort(roots.begin(), roots.end(), [](const XComplex& a, const XComplex& b) {
    if (a.zero != b.zero) return a.zero;
    return a.logmag < b.logmag;
  });
  const std::size_t m = pr.outer.size();
  std::vector<std::vector<double>> cost(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) cost[i][j] = relative_distance(roots[roots.size() - m + j], pr.outer[i]);
  }
  std::vector<std::size_t> perm;
  return bottleneck_assignment(cost, perm);
}

Outcome certificate_chain() {
  std::vector<ExperimentConfig> configs = {theorem2_config()};
  CoefficientDistribution d3{TailVariant::DoubleLogSlowTail, 3.0, 690.0, PhaseModel::UniformPhase};
  configs.push_back(make_config(ExperimentKind::Theorem2, d3, {3, 5, 10, 20, 50}, 100, 4004));
  int trials = 0, checked = 0, violations = 0, outer_violations = 0, both_sides = 0, both_violations = 0;
  std::string first;
  for (const auto& cfg : configs) {
    const auto r = run_theorem2(cfg);
    for (const auto& rec : r.records) {
      ++trials;
      const auto& ev = rec.events;
      if (ev.degenerate || !(ev.product_dominance && ev.threshold_dominance)) continue;
      ++checked;
      const bool matched = rec.match && rec.match->holds;
      if (!matched) {
        ++violations;
        if (first.empty()) first = fmt(" (first: beta %g n=%zu trial %zu)", cfg.dist.beta, rec.n, rec.trial);
      }
      const auto c = sample_coefficients(cfg.dist, rec.n, rec.seed);
      if (!rec.converged || outer_error(rec, predicted_roots(c)) >= cfg.eps / static_cast<double>(rec.n)) {
        ++outer_violations;
      }
      if (ev.reversed_product_dominance && ev.reversed_threshold_dominance) {
        ++both_sides;
        if (!matched) ++both_violations;
      }
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%d theorem2 trials, %d with both dominance events, %d without a match%s; "
              "outer roots unmatched in %d; %d with the events on both the polynomial and its reversal, "
              "%d of them without a match",
              trials, checked, violations, first.c_str(), outer_violations, both_sides, both_violations)};
}

Outcome theorem1_desk() {
  const auto t0 = Clock::now();
  CoefficientDistribution d{TailVariant::SlowTailMagnitude, 1.0, 690.0, PhaseModel::UniformPhase};
  auto cfg = make_config(ExperimentKind::Theorem1, d, {50, 100, 200}, 200, 5005);
  cfg.delta = 1.0;
  const auto r = run_theorem1(cfg);
  const double secs = seconds_since(t0);
  std::vector<Estimate> e;
  std::string detail = "empty-annulus frequency";
  std::size_t nonconv = 0;
  for (const auto& s : r.summary.per_degree) {
    e.push_back(s.empty_annulus);
    nonconv += s.nonconverged;
    detail += fmt(" n=%zu: %.3f (SE %.3f, mean R/n %.4f)", s.n, s.empty_annulus.p, s.empty_annulus.se,
                  s.mean_annulus_fraction);
  }
  const bool mono = non_decreasing(e, detail);
  const bool ok = e.back().p >= 0.9 && mono && secs < 300.0;
  detail += fmt("; nonconverged %zu; %.1fs (limit 300s)", nonconv, secs);
  return {ok, detail};
}

Outcome theorem2_desk() {
  const auto t0 = Clock::now();
  const auto r = run_theorem2(theorem2_config());
  const double secs = seconds_since(t0);
  std::vector<Estimate> e;
  std::string detail = "match frequency";
  for (const auto& s : r.summary.per_degree) {
    e.push_back(s.match);
    detail += fmt(" n=%zu: %.3f (SE %.3f, %zu used, %zu degenerate excluded, %zu nonconverged, %zu clamps)", s.n,
                  s.match.p, s.match.se, s.match.total, s.degenerate, s.nonconverged, s.clamp_total);
  }
  const bool mono = non_decreasing(e, detail);
  const bool ok = e.back().p >= 0.8 && mono && secs < 600.0;
  detail += fmt("; %.1fs (limit 600s)", secs);
  return {ok, detail};
}

Outcome stable_crosscheck() {
  const auto t0 = Clock::now();
  CoefficientDistribution d{TailVariant::Cauchy, 1.0, 690.0, PhaseModel::RealRademacher};
  auto cfg = make_config(ExperimentKind::StableCompare, d, {500}, 400, 7007);
  cfg.alpha = 1.0;
  cfg.delta = 1.0;
  const auto r = run_stable_compare(cfg);
  const double secs = seconds_since(t0);
  const auto& s = r.summary.per_degree[0];
  const double target = stable_annulus_limit(1.0, 1.0);
  const double gap = std::abs(s.mean_annulus_fraction - 0.16395);
  return {gap <= 0.05 && secs < 900.0,
          fmt("mean R_n/n %.4f (SE %.4f) vs 0.16395 (formula %.5f), |diff| %.4f (limit 0.05), nonconverged %zu, "
              "%.1fs (limit 900s)",
              s.mean_annulus_fraction, s.mean_annulus_fraction_se, target, gap, s.nonconverged, secs)};
}

Outcome sector_uniformity() {
  CoefficientDistribution d{TailVariant::ComplexGaussian, 1.0, 690.0, PhaseModel::UniformPhase};
  const auto r = run_sector_uniformity(make_config(ExperimentKind::SectorUniformity, d, {100}, 100, 8008));
  const auto& s = r.summary.per_degree[0];
  bool ok = s.nonconverged == 0;
  std::string detail = "sector frequencies";
  for (const auto& e : s.sectors) {
    const double se = std::sqrt(0.125 * 0.875 / static_cast<double>(e.total));
    const bool in = std::abs(e.p - 0.125) <= 3.0 * se;
    ok = ok && in;
    detail += fmt(" %.4f%s", e.p, in ? "" : "*");
  }
  detail += fmt(" (1/8 +- 3 SE = %.4f)",
                3.0 * std::sqrt(0.125 * 0.875 / static_cast<double>(s.sectors[0].total)));
  return {ok, detail};
}

Outcome determinism() {
  CoefficientDistribution dl{TailVariant::DoubleLogSlowTail, 1.0, 690.0, PhaseModel::UniformPhase};
  CoefficientDistribution st{TailVariant::SlowTailMagnitude, 1.0, 690.0, PhaseModel::UniformPhase};
  CoefficientDistribution ca{TailVariant::Cauchy, 1.0, 690.0, PhaseModel::RealRademacher};
  CoefficientDistribution cg{TailVariant::ComplexGaussian, 1.0, 690.0, PhaseModel::UniformPhase};
  const std::vector<ExperimentConfig> configs = {
      make_config(ExperimentKind::Theorem2, dl, {10, 30}, 60, 9009),
      make_config(ExperimentKind::Theorem1, st, {20, 60}, 60, 9010),
      make_config(ExperimentKind::StableCompare, ca, {40}, 60, 9011),
      make_config(ExperimentKind::SectorUniformity, cg, {40}, 60, 9012),
  };
  int identical = 0;
  for (auto cfg : configs) {
    cfg.threads = 1;
    const auto a = run_experiment(cfg);
    cfg.threads = 8;
    const auto b = run_experiment(cfg);
    if (summary_to_json(a.summary) == summary_to_json(b.summary) &&
        records_to_csv(a.records) == records_to_csv(b.records)) {
      ++identical;
    }
  }
  return {identical == static_cast<int>(configs.size()),
          fmt("%d of %zu configs byte-identical at 1 and 8 threads", identical, configs.size())};
}

Outcome xnum_properties() {
  const auto rep = check_xnum_properties(100000, 10010);
  return {rep.violations == 0,
          fmt("%ld cases, %ld violations%s%s", rep.cases, rep.violations, rep.violations ? ", first: " : "",
              rep.first_failure.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringroots acceptance suite"};
  std::vector<int> only;
  app.add_option("-c,--criterion", only, "Criterion number(s) to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
      {1, {"oracle equivalence", oracle_equivalence}},
      {2, {"pellet soundness", pellet_soundness}},
      {3, {"dominance algebra", dominance_algebra}},
      {4, {"certificate chain", certificate_chain}},
      {5, {"single-circle annulus at desk scale", theorem1_desk}},
      {6, {"two-circle matching at desk scale", theorem2_desk}},
      {7, {"stable-law annulus fraction", stable_crosscheck}},
      {8, {"sector uniformity", sector_uniformity}},
      {9, {"determinism across thread counts", determinism}},
      {10, {"xnum property suite", xnum_properties}},
  };
  int failures = 0;
  for (const auto& [id, entry] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, entry.first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
