#include "ringroots/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ringroots {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_inner_index(const Polynomial& p, std::size_t k, const char* who) {
  if (k < 1 || k + 1 > p.degree()) {
    throw std::invalid_argument(std::string(who) + ": k must satisfy 1 <= k <= n-1");
  }
}

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": eps must lie in (0, 1)");
  }
}

std::vector<double> log_moduli(const Polynomial& p) {
  std::vector<double> la;
  la.reserve(p.degree() + 1);
  for (const auto& c : p.coeffs()) la.push_back(c.zero ? kNegInf : c.logmag);
  return la;
}

double log_ratio(const std::vector<double>& la, std::size_t k, double s) {
  double mx = kNegInf;
  for (std::size_t j = 0; j < la.size(); ++j) {
    if (j != k && la[j] != kNegInf) mx = std::max(mx, la[j] + static_cast<double>(j) * s);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < la.size(); ++j) {
    if (j != k && la[j] != kNegInf) sum += std::exp(la[j] + static_cast<double>(j) * s - mx);
  }
  return mx + std::log(sum) - (la[k] + static_cast<double>(k) * s);
}

double search_tol(double a, double b) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double log1p_of(const XReal& a) { return a.is_zero() ? 0.0 : log1p_exp(a.logmag); }

}  // namespace

Polynomial associated_polynomial(const Polynomial& p, std::size_t k) {
  require_inner_index(p, k, "associated_polynomial");
  std::vector<XComplex> out;
  out.reserve(p.degree() + 1);
  for (std::size_t j = 0; j <= p.degree(); ++j) {
    const XComplex& a = p[j];
    if (a.zero) {
      out.push_back(a);
    } else {
      out.push_back(XComplex::polar(a.logmag, j == k ? std::numbers::pi : 0.0));
    }
  }
  return Polynomial(std::move(out));
}

double pellet_log_ratio(const Polynomial& p, std::size_t k, double s) {
  require_inner_index(p, k, "pellet_log_ratio");
  return log_ratio(log_moduli(p), k, s);
}

std::optional<PelletCertificate> pellet_certify(const Polynomial& p, std::size_t k) {
  require_inner_index(p, k, "pellet_certify");
  const auto la = log_moduli(p);
  if (la[k] == kNegInf) return std::nullopt;
  auto phi = [&](double s) { return log_ratio(la, k, s); };

  // All breakpoints of the max-affine envelope lie within [-B, B].
  double lo_l = std::numeric_limits<double>::infinity();
  double hi_l = kNegInf;
  for (double l : la) {
    if (l == kNegInf) continue;
    lo_l = std::min(lo_l, l);
    hi_l = std::max(hi_l, l);
  }
  double bound = (hi_l - lo_l) + std::log(static_cast<double>(la.size())) + 2.0;
  while (!(phi(-bound) > 0.0 && phi(bound) > 0.0)) {
    bound *= 2.0;
    if (!std::isfinite(bound)) return std::nullopt;
  }

  // Ternary search for the minimum of the convex function.
  double lo = -bound;
  double hi = bound;
  for (int it = 0; it < 20000 && hi - lo > search_tol(lo, hi); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (phi(m1) < phi(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double smin = 0.5 * (lo + hi);
  if (!(phi(smin) < 0.0)) return std::nullopt;

  // Left sign change: phi(a) > 0 > phi(b).
  double a = -bound;
  double b = smin;
  for (int it = 0; it < 20000 && b - a > search_tol(a, b); ++it) {
    const double m = 0.5 * (a + b);
    (phi(m) < 0.0 ? b : a) = m;
  }
  const double r = b + (b - a);

  // Right sign change: phi(a) < 0 < phi(b).
  a = smin;
  b = bound;
  for (int it = 0; it < 20000 && b - a > search_tol(a, b); ++it) {
    const double m = 0.5 * (a + b);
    (phi(m) < 0.0 ? a : b) = m;
  }
  const double big_r = a - (b - a);

  if (!(r < big_r) || !(phi(r) < 0.0) || !(phi(big_r) < 0.0)) return std::nullopt;
  return PelletCertificate{k, r, big_r};
}

bool binomial_proximity_condition(const Polynomial& monic, std::size_t k, double eps) {
  require_inner_index(monic, k, "binomial_proximity_condition");
  require_eps(eps, "binomial_proximity_condition");
  const std::size_t n = monic.degree();
  if (monic[n].zero || std::abs(monic[n].logmag) > 1e-12) {
    throw std::invalid_argument("binomial_proximity_condition: leading coefficient must have modulus 1");
  }
  if (monic[k].zero) return false;
  std::vector<XReal> others;
  others.reserve(n);
  for (std::size_t j = 0; j <= n; ++j) {
    if (j != k) others.push_back(monic[j].modulus());
  }
  const XReal sum = xlogsumexp(others);
  const double nd = static_cast<double>(n);
  const double m = static_cast<double>(n - k);
  const double bound =
      std::log1p(-eps / nd) + m * std::log(eps / (nd + eps)) + monic[k].logmag / m;
  return sum.is_zero() || sum.logmag <= bound;
}

bool dominance_product_condition(std::span<const XReal> a, std::size_t k) {
  if (a.size() < 3 || k < 1 || k + 1 >= a.size()) {
    throw std::invalid_argument("dominance_product_condition: k must satisfy 1 <= k <= n-1");
  }
  const double n = static_cast<double>(a.size() - 1);
  double others = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].sign < 0) throw std::invalid_argument("dominance_product_condition: negative entry");
    if (j != k) others += log1p_of(a[j]);
  }
  return 2.0 * n * n * others <= log1p_of(a[k]);
}

double dominance_threshold_logmag(std::size_t n, double eps) {
  require_eps(eps, "dominance_threshold_logmag");
  const double nd = static_cast<double>(n);
  const double q2 = 4.0 * nd * nd / (4.0 * nd - 1.0);
  const double q3 = q2 * nd;
  return std::log(2.0) - q2 * std::log1p(-eps) - q3 * std::log(eps) + q3 * std::log(nd + eps);
}

bool dominance_threshold_condition(std::span<const XReal> a, std::size_t k, double eps) {
  if (a.size() < 3 || k < 1 || k + 1 >= a.size()) {
    throw std::invalid_argument("dominance_threshold_condition: k must satisfy 1 <= k <= n-1");
  }
  const double t = dominance_threshold_logmag(a.size() - 1, eps);
  return !a[k].is_zero() && a[k].sign > 0 && a[k].logmag >= t;
}

bool dominance_condition(std::span<const XReal> a, std::size_t k, double eps) {
  require_eps(eps, "dominance_condition");
  return dominance_product_condition(a, k) && dominance_threshold_condition(a, k, eps);
}

bool single_dominant_event(const CoefficientVector& c, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("single_dominant_event: delta must be positive");
  std::vector<XReal> others;
  others.reserve(c.coeffs.size());
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    if (j != c.tau) others.push_back(c.coeffs[j].modulus());
  }
  const XReal top = c.coeffs[c.tau].modulus();
  const XReal rest = xlogsumexp(others);
  if (top.is_zero()) return false;
  if (rest.is_zero()) return true;
  return top.logmag > delta + rest.logmag;
}

TheoremEvents evaluate_events(const CoefficientVector& c, double eps, double delta) {
  require_eps(eps, "evaluate_events");
  TheoremEvents ev;
  ev.epsilon = eps;
  ev.delta = delta;
  ev.dominant_gap = single_dominant_event(c, delta);
  const std::size_t n = c.degree();
  if (c.tau == 0 || c.tau >= n) {
    ev.degenerate = true;
    return ev;
  }
  struct Side {
    bool product, threshold, matching;
  };
  // coeffs normalised by their last entry, k the dominant index.
  auto side = [&](const std::vector<XComplex>& coeffs, std::size_t k) {
    const XComplex lead = coeffs.back();
    std::vector<XReal> ratios;
    std::vector<XComplex> normalized;
    ratios.reserve(n + 1);
    normalized.reserve(n + 1);
    for (const auto& x : coeffs) {
      const XComplex q = xdiv(x, lead);
      normalized.push_back(q);
      ratios.push_back(q.modulus());
    }
    normalized[n] = XComplex::one();
    return Side{dominance_product_condition(ratios, k), dominance_threshold_condition(ratios, k, eps),
                binomial_proximity_condition(Polynomial(std::move(normalized)), k, eps)};
  };
  const Side outer = side(c.coeffs, c.tau);
  ev.product_dominance = outer.product;
  ev.threshold_dominance = outer.threshold;
  ev.outer_matching = outer.matching;
  const Side inner = side(std::vector<XComplex>(c.coeffs.rbegin(), c.coeffs.rend()), n - c.tau);
  ev.reversed_product_dominance = inner.product;
  ev.reversed_threshold_dominance = inner.threshold;
  ev.inner_matching = inner.matching;
  return ev;
}

std::size_t count_annulus(const RootSet& rs, double a_logmag, double b_logmag) {
  if (a_logmag > b_logmag) throw std::invalid_argument("count_annulus: a must not exceed b");
  return static_cast<std::size_t>(std::count_if(rs.roots.begin(), rs.roots.end(), [&](const XComplex& z) {
    const double l = z.zero ? kNegInf : z.logmag;
    return a_logmag <= l && l <= b_logmag;
  }));
}

std::size_t count_sector(const RootSet& rs, double alpha, double beta) {
  if (!(alpha < beta) || alpha < -std::numbers::pi || beta > std::numbers::pi) {
    throw std::invalid_argument("count_sector: need -pi <= alpha < beta <= pi");
  }
  return static_cast<std::size_t>(std::count_if(rs.roots.begin(), rs.roots.end(), [&](const XComplex& z) {
    return !z.zero && alpha <= z.phase && z.phase <= beta;
  }));
}

std::vector<std::size_t> sector_histogram(const RootSet& rs, std::size_t sectors) {
  if (sectors == 0) throw std::invalid_argument("sector_histogram: need at least one sector");
  std::vector<std::size_t> counts(sectors, 0);
  const double width = 2.0 * std::numbers::pi / static_cast<double>(sectors);
  for (const auto& z : rs.roots) {
    if (z.zero) continue;
    // Sector s covers (-pi + s w, -pi + (s+1) w]; phases within 1e-9 above a
    // boundary are treated as lying on it.
    const double x = (z.phase + std::numbers::pi) / width;
    auto s = static_cast<long>(std::ceil(x - 1e-9)) - 1;
    s = std::clamp(s, 0L, static_cast<long>(sectors) - 1);
    ++counts[static_cast<std::size_t>(s)];
  }
  return counts;
}

}  // namespace ringroots
