#include "ringroots/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ringroots/counter_rng.hpp"

namespace ringroots {
namespace {

void require_kind(const ExperimentConfig& cfg, ExperimentKind k) {
  if (cfg.kind != k) {
    throw std::invalid_argument("experiment kind is " + to_string(cfg.kind) + ", expected " + to_string(k));
  }
}

unsigned worker_count(const ExperimentConfig& cfg, std::size_t tasks) {
  unsigned t = cfg.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Theorem1: return "theorem1";
    case ExperimentKind::Theorem2: return "theorem2";
    case ExperimentKind::StableCompare: return "stable_compare";
    case ExperimentKind::SectorUniformity: return "sector_uniformity";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
  for (auto k : {ExperimentKind::Theorem1, ExperimentKind::Theorem2, ExperimentKind::StableCompare,
                 ExperimentKind::SectorUniformity}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown experiment kind: " + s);
}

void ExperimentConfig::validate() const {
  dist.validate();
  if (degrees.empty()) throw std::invalid_argument("config: degrees must not be empty");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) throw std::invalid_argument("config: every degree must be at least 1");
    if (std::find(degrees.begin(), degrees.begin() + static_cast<long>(i), degrees[i]) != degrees.begin() + static_cast<long>(i)) {
      throw std::invalid_argument("config: degrees must be distinct");
    }
  }
  if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("config: delta must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("config: eps must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("config: alpha must lie in (0, 2]");
  if (!(solver.tol > 0.0) || solver.max_iter < 1) {
    throw std::invalid_argument("config: solver tol must be positive and max_iter at least 1");
  }
}

Estimate binomial_estimate(std::size_t successes, std::size_t total) {
  Estimate e;
  e.successes = successes;
  e.total = total;
  if (total > 0) {
    e.p = static_cast<double>(successes) / static_cast<double>(total);
    e.se = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(total));
  }
  return e;
}

double stable_annulus_limit(double alpha, double delta) {
  const double x = alpha * delta;
  if (!(x > 0.0)) throw std::invalid_argument("stable_annulus_limit: alpha * delta must be positive");
  if (x < 1e-3) return x / 6.0 - x * x * x / 360.0;  // series of coth(x/2) - 2/x
  return 1.0 / std::tanh(0.5 * x) - 2.0 / x;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const CoefficientVector& c, std::size_t trial) {
  TrialRecord rec;
  rec.n = c.degree();
  rec.trial = trial;
  rec.seed = c.seed;
  rec.tau = c.tau;
  rec.clamp_count = c.clamp_count;

  const RootSet rs = aberth_solve(Polynomial(c.coeffs), cfg.solver);
  rec.converged = rs.converged;
  rec.iterations = rs.iterations;
  const double w = cfg.delta / static_cast<double>(rec.n);
  rec.annulus_count = count_annulus(rs, -w, w);
  rec.sector_counts = sector_histogram(rs, kSectors);
  rec.events = evaluate_events(c, cfg.eps, cfg.delta);

  if (cfg.kind == ExperimentKind::Theorem2) {
    if (rec.events.degenerate) {
      rec.match = degenerate_match();
    } else {
      const PredictedRoots pr = predicted_roots(c);
      rec.inner_logmag = pr.inner_logmag();
      rec.outer_logmag = pr.outer_logmag();
      rec.match = match_roots(rs, pr, cfg.eps, rec.n);
    }
  }
  rec.roots = rs.roots;
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t n;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.degrees.size() * cfg.trials);
  for (auto n : cfg.degrees) {
    for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, t});
  }

  std::vector<TrialRecord> records(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const std::uint64_t seed = derive_seed(cfg.master_seed, tasks[i].n, tasks[i].trial);
        records[i] = run_trial(cfg, sample_coefficients(cfg.dist, tasks[i].n, seed), tasks[i].trial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = worker_count(cfg, tasks.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult out;
  out.summary = summarize(cfg, records);
  out.records = std::move(records);
  return out;
}

ExperimentResult run_theorem1(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::Theorem1);
  return run_experiment(cfg);
}

ExperimentResult run_theorem2(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::Theorem2);
  return run_experiment(cfg);
}

ExperimentResult run_stable_compare(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::StableCompare);
  return run_experiment(cfg);
}

ExperimentResult run_sector_uniformity(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::SectorUniformity);
  return run_experiment(cfg);
}

Summary summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  Summary s;
  s.config = cfg;
  for (auto n : cfg.degrees) {
    DegreeSummary d;
    d.n = n;
    std::size_t converged = 0, empty = 0, gap = 0, cert = 0, cert2 = 0, match_total = 0, match_ok = 0;
    std::vector<std::size_t> sector_hits(kSectors, 0);
    std::size_t roots_counted = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& r : records) {
      if (r.n != n) continue;
      ++d.trials;
      d.clamp_total += static_cast<std::size_t>(r.clamp_count);
      if (r.events.degenerate) ++d.degenerate;
      if (r.events.dominant_gap) ++gap;
      if (!r.events.degenerate && r.events.product_dominance && r.events.threshold_dominance) {
        ++cert;
        if (r.events.reversed_product_dominance && r.events.reversed_threshold_dominance) ++cert2;
      }
      if (!r.converged) {
        ++d.nonconverged;
        continue;
      }
      ++converged;
      if (r.annulus_count == 0) ++empty;
      const double f = static_cast<double>(r.annulus_count) / static_cast<double>(n);
      sum += f;
      sum_sq += f * f;
      for (std::size_t k = 0; k < kSectors && k < r.sector_counts.size(); ++k) {
        sector_hits[k] += r.sector_counts[k];
        roots_counted += r.sector_counts[k];
      }
      if (r.match && !r.match->degenerate) {
        ++match_total;
        if (r.match->holds) ++match_ok;
        if (!r.match->greedy_agrees) ++d.greedy_disagreements;
      }
    }
    d.empty_annulus = binomial_estimate(empty, converged);
    d.dominant_gap = binomial_estimate(gap, d.trials);
    d.certificate = binomial_estimate(cert, d.trials);
    d.two_sided_certificate = binomial_estimate(cert2, d.trials);
    d.match = binomial_estimate(match_ok, match_total);
    if (converged > 0) {
      const double m = static_cast<double>(converged);
      d.mean_annulus_fraction = sum / m;
      const double var = converged > 1 ? std::max(0.0, (sum_sq - m * d.mean_annulus_fraction * d.mean_annulus_fraction) / (m - 1.0)) : 0.0;
      d.mean_annulus_fraction_se = std::sqrt(var / m);
    }
    for (std::size_t k = 0; k < kSectors; ++k) d.sectors.push_back(binomial_estimate(sector_hits[k], roots_counted));
    if (cfg.kind == ExperimentKind::StableCompare) d.stable_limit = stable_annulus_limit(cfg.alpha, cfg.delta);
    s.per_degree.push_back(std::move(d));
  }
  return s;
}

}  // namespace ringroots
