#include "ringroots/xnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ringroots {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked(double logmag) {
  if (!std::isfinite(logmag)) {
    throw SaturationError("extended-range logmag saturated");
  }
  return logmag;
}

}  // namespace

double wrap_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

XReal XReal::from_double(double v) {
  if (v == 0.0) return {};
  return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

double XReal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

XComplex XComplex::polar(double logmag, double phase) {
  return {false, checked(logmag), wrap_phase(phase)};
}

XComplex XComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>{}) return {};
  return polar(std::log(std::abs(z)), std::arg(z));
}

std::complex<double> XComplex::to_complex() const {
  if (zero) return {};
  return std::polar(std::exp(logmag), phase);
}

XComplex xmul(const XComplex& a, const XComplex& b) {
  if (a.zero || b.zero) return {};
  return XComplex::polar(a.logmag + b.logmag, a.phase + b.phase);
}

XComplex xdiv(const XComplex& a, const XComplex& b) {
  if (b.zero) throw std::domain_error("xdiv: division by zero");
  if (a.zero) return {};
  return XComplex::polar(a.logmag - b.logmag, a.phase - b.phase);
}

XComplex xneg(const XComplex& a) {
  if (a.zero) return {};
  return XComplex::polar(a.logmag, a.phase + kPi);
}

XComplex xinv(const XComplex& a) {
  if (a.zero) throw std::domain_error("xinv: inverse of zero");
  return XComplex::polar(-a.logmag, -a.phase);
}

XComplex xadd(const XComplex& a, const XComplex& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  // Factor out the operand with the larger modulus: result = big * (1 + s).
  const XComplex& big = a.logmag >= b.logmag ? a : b;
  const XComplex& small = a.logmag >= b.logmag ? b : a;
  const double d = small.logmag - big.logmag;  // <= 0
  const double theta = wrap_phase(small.phase - big.phase);
  if (d == 0.0 && theta == kPi) return {};

  const double r = std::exp(d);
  // 1 + r cos(theta) = -expm1(d) + 2 r cos^2(theta/2): both terms >= 0.
  const double c = std::cos(0.5 * theta);
  const double re = -std::expm1(d) + 2.0 * r * c * c;
  const double im = r * std::sin(theta);
  if (re == 0.0 && im == 0.0) return {};

  double log_s;
  if (r < 0.5) {
    log_s = 0.5 * std::log1p(r * (2.0 * std::cos(theta) + r));
  } else {
    log_s = std::log(std::hypot(re, im));
  }
  return XComplex::polar(big.logmag + log_s, big.phase + std::atan2(im, re));
}

XComplex xsub(const XComplex& a, const XComplex& b) { return xadd(a, xneg(b)); }

XComplex xpow_int(const XComplex& a, long k) {
  if (k == 0) return XComplex::one();
  if (a.zero) {
    if (k < 0) throw std::domain_error("xpow_int: negative power of zero");
    return {};
  }
  const double kd = static_cast<double>(k);
  return XComplex::polar(a.logmag * kd, std::remainder(a.phase * kd, kTwoPi));
}

std::vector<XComplex> xroot_k(const XComplex& a, int k) {
  if (k < 1) throw std::invalid_argument("xroot_k: k must be positive");
  if (a.zero) throw std::domain_error("xroot_k: root of zero is degenerate");
  std::vector<XComplex> out;
  out.reserve(static_cast<std::size_t>(k));
  const double lm = a.logmag / k;
  for (int m = 0; m < k; ++m) {
    out.push_back(XComplex::polar(lm, (a.phase + kTwoPi * m) / k));
  }
  return out;
}

std::strong_ordering xcmp(const XReal& a, const XReal& b) {
  if (a.sign != b.sign) return a.sign <=> b.sign;
  if (a.sign == 0) return std::strong_ordering::equal;
  auto mag = [](double x, double y) {
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  };
  return a.sign > 0 ? mag(a.logmag, b.logmag) : mag(b.logmag, a.logmag);
}

double logsumexp(std::span<const double> logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : logs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : logs) s += std::exp(x - m);
  return m + std::log(s);
}

XReal xlogsumexp(std::span<const XReal> values) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) {
    if (v.sign < 0) throw std::invalid_argument("xlogsumexp: negative input");
    if (v.sign > 0) m = std::max(m, v.logmag);
  }
  if (m == -std::numeric_limits<double>::infinity()) return {};
  double s = 0.0;
  for (const auto& v : values) {
    if (v.sign > 0) s += std::exp(v.logmag - m);
  }
  return {1, m + std::log(s)};
}

double log1p_exp(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace ringroots
