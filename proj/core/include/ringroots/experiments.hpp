#ifndef RINGROOTS_EXPERIMENTS_HPP_
#define RINGROOTS_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringroots/localization.hpp"
#include "ringroots/matcher.hpp"
#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"

namespace ringroots {

enum class ExperimentKind { Theorem1, Theorem2, StableCompare, SectorUniformity };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Theorem1;
  CoefficientDistribution dist;
  std::vector<std::size_t> degrees;
  std::size_t trials = 100;
  double delta = 1.0;
  double eps = 0.5;
  double alpha = 1.0;
  std::uint64_t master_seed = 0;
  std::string output_path;
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 0;
  SolverOptions solver;

  void validate() const;
};

inline constexpr std::size_t kSectors = 8;

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t tau = 0;
  int clamp_count = 0;
  bool converged = false;
  int iterations = 0;
  TheoremEvents events;
  std::size_t annulus_count = 0;
  std::vector<std::size_t> sector_counts;
  /// Evaluated for theorem2 runs only.
  std::optional<MatchResult> match;
  /// Predicted circle log-radii; theorem2 runs with nondegenerate tau.
  std::optional<double> inner_logmag;
  std::optional<double> outer_logmag;
  std::vector<XComplex> roots;
};

struct Estimate {
  std::size_t successes = 0;
  std::size_t total = 0;
  double p = 0.0;
  double se = 0.0;
};

Estimate binomial_estimate(std::size_t successes, std::size_t total);

struct DegreeSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t nonconverged = 0;
  std::size_t degenerate = 0;
  std::size_t clamp_total = 0;
  /// R_n(e^(-delta/n), e^(delta/n)) = 0 over converged trials.
  Estimate empty_annulus;
  double mean_annulus_fraction = 0.0;
  double mean_annulus_fraction_se = 0.0;
  /// Single dominant coefficient event over all trials.
  Estimate dominant_gap;
  /// Both dominance events over all trials (degenerate tau counts as false).
  Estimate certificate;
  /// The dominance events on both the polynomial and its reversal.
  Estimate two_sided_certificate;
  /// Full root match over converged trials with nondegenerate tau.
  Estimate match;
  std::size_t greedy_disagreements = 0;
  std::vector<Estimate> sectors;
  /// Limit of the mean annulus fraction for alpha-stable coefficients.
  double stable_limit = 0.0;
};

struct Summary {
  ExperimentConfig config;
  std::vector<DegreeSummary> per_degree;
};

struct ExperimentResult {
  Summary summary;
  std::vector<TrialRecord> records;
};

/// (1 + e^(-a d)) / (1 - e^(-a d)) - 2 / (a d).
double stable_annulus_limit(double alpha, double delta);

/// Evaluates one coefficient vector: solve, count, evaluate events and match.
TrialRecord run_trial(const ExperimentConfig& cfg, const CoefficientVector& c, std::size_t trial);

/// Samples and evaluates every trial of every degree, in parallel, reducing in
/// trial order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_theorem1(const ExperimentConfig& cfg);
ExperimentResult run_theorem2(const ExperimentConfig& cfg);
ExperimentResult run_stable_compare(const ExperimentConfig& cfg);
ExperimentResult run_sector_uniformity(const ExperimentConfig& cfg);

Summary summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

}  // namespace ringroots

#endif  // RINGROOTS_EXPERIMENTS_HPP_
