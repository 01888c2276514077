#ifndef RINGROOTS_LOCALIZATION_HPP_
#define RINGROOTS_LOCALIZATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"
#include "ringroots/xnum.hpp"

namespace ringroots {

/// Pellet annulus: exactly k roots have log-modulus below r_logmag and the
/// other n - k have log-modulus above R_logmag.
struct PelletCertificate {
  std::size_t k = 0;
  double r_logmag = 0.0;
  double R_logmag = 0.0;
};

/// sum_{j != k} |a_j| z^j - |a_k| z^k. Requires 1 <= k <= n - 1.
Polynomial associated_polynomial(const Polynomial& p, std::size_t k);

/// log of the associated polynomial's positive part over its negative part at
/// z = e^s: logsumexp_{j != k}(log|a_j| + j s) - (log|a_k| + k s).
/// Convex in s; negative exactly where the associated polynomial is.
double pellet_log_ratio(const Polynomial& p, std::size_t k, double s);

/// Searches for the two positive roots of the associated polynomial.
/// Returns nullopt when it has none. Requires 1 <= k <= n - 1.
std::optional<PelletCertificate> pellet_certify(const Polynomial& p, std::size_t k);

/// Sufficient condition for the n - k outer roots of a polynomial with
/// |a_n| = 1 to lie within relative distance eps/n of the roots of
/// z^(n-k) + a_k = 0:
///   sum_{j != k} |a_j| <= (1 - eps/n) (eps/(n+eps))^(n-k) |a_k|^(1/(n-k)).
bool binomial_proximity_condition(const Polynomial& monic, std::size_t k, double eps);

/// prod_{j != k} (1 + a_j)^(2 n^2) <= 1 + a_k, evaluated in logs.
bool dominance_product_condition(std::span<const XReal> a, std::size_t k);

/// Lower bound on log a_k of the dominance threshold for degree n:
/// log 2 - 4n^2/(4n-1) log(1-eps) - 4n^3/(4n-1) log eps + 4n^3/(4n-1) log(n+eps).
double dominance_threshold_logmag(std::size_t n, double eps);

bool dominance_threshold_condition(std::span<const XReal> a, std::size_t k, double eps);

/// Both dominance conditions; together they imply binomial_proximity_condition
/// for the coefficient moduli a.
bool dominance_condition(std::span<const XReal> a, std::size_t k, double eps);

/// |xi_tau| > e^delta sum_{j != tau} |xi_j|. Requires delta > 0.
bool single_dominant_event(const CoefficientVector& c, double delta);

struct TheoremEvents {
  bool degenerate = false;         // tau in {0, n}
  bool dominant_gap = false;       // single_dominant_event(c, delta)
  bool product_dominance = false;  // dominance_product_condition on |xi_j| / |xi_n|
  bool threshold_dominance = false;
  bool outer_matching = false;     // binomial_proximity_condition on xi / xi_n, k = tau
  // The same three conditions for the reversed polynomial sum xi_j z^(n-j)
  // normalised by xi_0, with k = n - tau; they govern the tau inner roots.
  bool reversed_product_dominance = false;
  bool reversed_threshold_dominance = false;
  bool inner_matching = false;
  double epsilon = 0.0;
  double delta = 0.0;
};

/// All events of a coefficient vector for the given (eps, delta).
TheoremEvents evaluate_events(const CoefficientVector& c, double eps, double delta);

/// Roots with a_logmag <= log|z| <= b_logmag.
std::size_t count_annulus(const RootSet& rs, double a_logmag, double b_logmag);

/// Roots with alpha <= arg z <= beta.
std::size_t count_sector(const RootSet& rs, double alpha, double beta);

/// Root counts over `sectors` equal half-open sectors partitioning (-pi, pi].
std::vector<std::size_t> sector_histogram(const RootSet& rs, std::size_t sectors);

}  // namespace ringroots

#endif  // RINGROOTS_LOCALIZATION_HPP_
