#ifndef RINGROOTS_XNUM_HPP_
#define RINGROOTS_XNUM_HPP_

#include <compare>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace ringroots {

/// Raised when a log-magnitude leaves the finite double range.
class SaturationError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// Extended-range real: sign and natural log of the absolute value.
/// sign == 0 is exact zero and logmag is then ignored.
struct XReal {
  int sign = 0;
  double logmag = 0.0;

  static XReal zero() { return {}; }
  static XReal from_log(double logmag) { return {1, logmag}; }
  static XReal from_double(double v);

  bool is_zero() const { return sign == 0; }
  double to_double() const;
};

/// Extended-range complex number in polar log form.
///
/// The modulus is exp(logmag) and the argument is phase, kept in (-pi, pi]
/// after every operation. Exact zero is a tagged state so that comparisons
/// and serialization never see -inf.
struct XComplex {
  bool zero = true;
  double logmag = 0.0;
  double phase = 0.0;

  static XComplex zero_value() { return {}; }
  static XComplex one() { return {false, 0.0, 0.0}; }
  /// Normalizes the phase; throws SaturationError on a non-finite logmag.
  static XComplex polar(double logmag, double phase);
  static XComplex from_complex(std::complex<double> z);

  bool is_zero() const { return zero; }
  XReal modulus() const { return zero ? XReal{} : XReal{1, logmag}; }
  std::complex<double> to_complex() const;

  friend bool operator==(const XComplex& a, const XComplex& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.logmag == b.logmag && a.phase == b.phase;
  }
};

XComplex xmul(const XComplex& a, const XComplex& b);
XComplex xdiv(const XComplex& a, const XComplex& b);
XComplex xneg(const XComplex& a);
XComplex xinv(const XComplex& a);
XComplex xadd(const XComplex& a, const XComplex& b);
XComplex xsub(const XComplex& a, const XComplex& b);
XComplex xpow_int(const XComplex& a, long k);

/// The k values of a^(1/k), in order of increasing branch index m.
std::vector<XComplex> xroot_k(const XComplex& a, int k);

std::strong_ordering xcmp(const XReal& a, const XReal& b);

/// log(sum exp(v)) over finite doubles; -inf for an empty input.
double logsumexp(std::span<const double> logs);

/// Sum of nonnegative XReal values; zero entries contribute nothing.
XReal xlogsumexp(std::span<const XReal> values);

/// log(1 + exp(x)) without overflow.
double log1p_exp(double x);

}  // namespace ringroots

#endif  // RINGROOTS_XNUM_HPP_
