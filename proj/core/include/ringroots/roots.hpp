#ifndef RINGROOTS_ROOTS_HPP_
#define RINGROOTS_ROOTS_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ringroots/sampler.hpp"
#include "ringroots/xnum.hpp"

namespace ringroots {

/// Raised when tau is 0 or n and the two-circle system is undefined.
class DegenerateTauError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sum_j coeffs[j] z^j with nonzero constant and leading coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::vector<XComplex> coeffs);
  static Polynomial from(const CoefficientVector& c) { return Polynomial(c.coeffs); }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<XComplex>& coeffs() const { return coeffs_; }
  const XComplex& operator[](std::size_t j) const { return coeffs_[j]; }

  /// z^n p(1/z): coefficients in reverse order.
  Polynomial reversed() const;
  /// Every coefficient multiplied by c (c nonzero).
  Polynomial scaled(const XComplex& c) const;

 private:
  std::vector<XComplex> coeffs_;
};

struct TrimResult {
  Polynomial poly;
  std::size_t zero_root_multiplicity = 0;  // leading zeros stripped from index 0
  std::size_t degree_deficit = 0;          // trailing zeros stripped from index n
};

/// Strips zero coefficients at both ends. Throws on an all-zero input.
TrimResult trim(std::span<const XComplex> raw_coeffs);

/// One group of root moduli from the Newton polygon.
struct RadiusGroup {
  double modulus_logmag = 0.0;
  std::size_t count = 0;
};

/// Segments of the upper convex hull of (j, log|a_j|), left to right.
std::vector<RadiusGroup> newton_polygon_radii(const Polynomial& p);

struct RootSet {
  std::vector<XComplex> roots;
  std::vector<double> residuals;  // relative backward error per root
  bool converged = false;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-12;
  int max_iter = 200;
  /// Newton-polygon slope gap (nats) above which root groups are solved
  /// as independent sub-polynomials.
  double decouple_gap = 64.0;
};

/// All roots of p by Aberth-Ehrlich iteration in extended-range arithmetic.
RootSet aberth_solve(const Polynomial& p, const SolverOptions& opts = {});
inline RootSet aberth_solve(const Polynomial& p, double tol, int max_iter) {
  return aberth_solve(p, SolverOptions{tol, max_iter});
}

/// p(z) evaluated in the log domain.
XComplex evaluate(const Polynomial& p, const XComplex& z);

/// |p(z)| / sum_j |a_j| |z|^j.
double backward_residual(const Polynomial& p, const XComplex& z);

/// The two-circle root prediction: tau inner roots and n - tau outer roots.
struct PredictedRoots {
  std::vector<XComplex> inner;  // z^tau + xi_0/xi_tau = 0
  std::vector<XComplex> outer;  // z^(n-tau) + xi_tau/xi_n = 0

  double inner_logmag() const { return inner.front().logmag; }
  double outer_logmag() const { return outer.front().logmag; }
  std::vector<XComplex> all() const;
};

/// Throws DegenerateTauError when tau is 0 or n.
PredictedRoots predicted_roots(const CoefficientVector& c);

}  // namespace ringroots

#endif  // RINGROOTS_ROOTS_HPP_
