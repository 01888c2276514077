#include "ringroots/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ringroots/counter_rng.hpp"

namespace ringroots {
namespace {

constexpr double kPi = std::numbers::pi;

// Stream ids for the per-coefficient uniforms.
constexpr std::uint64_t kMagnitudeStream = 1;
constexpr std::uint64_t kPhaseStream = 2;
constexpr std::uint64_t kAuxStream = 3;

double sample_phase(PhaseModel model, double u) {
  switch (model) {
    case PhaseModel::UniformPhase:
      return wrap_phase(2.0 * kPi * u - kPi);
    case PhaseModel::RealRademacher:
      return u < 0.5 ? kPi : 0.0;
    case PhaseModel::FixedPositive:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

void CoefficientDistribution::validate() const {
  if (variant == TailVariant::SlowTailMagnitude ||
      variant == TailVariant::DoubleLogSlowTail) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw std::invalid_argument("distribution: beta must be positive");
    }
  }
  if (variant == TailVariant::DoubleLogSlowTail) {
    if (!(cap > 0.0) || cap > 700.0) {
      throw std::invalid_argument("distribution: cap must lie in (0, 700]");
    }
  }
}

std::string to_string(TailVariant v) {
  switch (v) {
    case TailVariant::SlowTailMagnitude: return "slow_tail";
    case TailVariant::DoubleLogSlowTail: return "double_log";
    case TailVariant::ComplexGaussian: return "complex_gaussian";
    case TailVariant::Cauchy: return "cauchy";
    case TailVariant::UnitModulus: return "unit_modulus";
  }
  return "unknown";
}

std::string to_string(PhaseModel p) {
  switch (p) {
    case PhaseModel::UniformPhase: return "uniform";
    case PhaseModel::RealRademacher: return "rademacher";
    case PhaseModel::FixedPositive: return "positive";
  }
  return "unknown";
}

TailVariant parse_tail_variant(const std::string& s) {
  for (auto v : {TailVariant::SlowTailMagnitude, TailVariant::DoubleLogSlowTail,
                 TailVariant::ComplexGaussian, TailVariant::Cauchy,
                 TailVariant::UnitModulus}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown distribution variant '" + s + "'");
}

PhaseModel parse_phase_model(const std::string& s) {
  for (auto p : {PhaseModel::UniformPhase, PhaseModel::RealRademacher,
                 PhaseModel::FixedPositive}) {
    if (to_string(p) == s) return p;
  }
  throw std::invalid_argument("unknown phase model '" + s + "'");
}

std::size_t argmax_modulus(std::span<const XComplex> coeffs) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    if (xcmp(coeffs[j].modulus(), coeffs[best].modulus()) > 0) best = j;
  }
  return best;
}

CoefficientVector make_coefficient_vector(std::vector<XComplex> coeffs,
                                          std::uint64_t seed) {
  if (coeffs.empty()) {
    throw std::invalid_argument("coefficient vector must be nonempty");
  }
  CoefficientVector c;
  c.tau = argmax_modulus(coeffs);
  c.coeffs = std::move(coeffs);
  c.seed = seed;
  return c;
}

MagnitudeDraw double_log_magnitude(double x, double cap) {
  MagnitudeDraw d;
  if (!(x <= cap)) {  // also catches x = +inf
    x = cap;
    d.clamped = true;
  }
  d.logmag = std::expm1(x);
  return d;
}

MagnitudeDraw magnitude_from_uniform(const CoefficientDistribution& dist,
                                     double u, double u2) {
  switch (dist.variant) {
    case TailVariant::SlowTailMagnitude:
      return {std::pow(u, -1.0 / dist.beta), false};
    case TailVariant::DoubleLogSlowTail:
      return double_log_magnitude(std::exp(std::pow(u, -1.0 / dist.beta)),
                                  dist.cap);
    case TailVariant::ComplexGaussian:
      if (dist.phase_model == PhaseModel::UniformPhase) {
        // Rayleigh modulus of a standard complex Gaussian (E|xi|^2 = 1).
        return {0.5 * std::log(-std::log(u)), false};
      }
      // |N(0,1)| by Box-Muller.
      return {0.5 * std::log(-2.0 * std::log(u)) +
                  std::log(std::abs(std::cos(2.0 * kPi * u2))),
              false};
    case TailVariant::Cauchy:
      return {std::log(std::tan(0.5 * kPi * u)), false};
    case TailVariant::UnitModulus:
      return {0.0, false};
  }
  return {};
}

CoefficientVector sample_coefficients(const CoefficientDistribution& dist,
                                      std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_coefficients: degree must be >= 1");
  dist.validate();
  std::vector<XComplex> coeffs;
  coeffs.reserve(n + 1);
  int clamps = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double u = uniform_open(seed, j, kMagnitudeStream);
    const double u2 = uniform_open(seed, j, kAuxStream);
    MagnitudeDraw m = magnitude_from_uniform(dist, u, u2);
    if (!std::isfinite(m.logmag)) {
      // cos(2 pi u2) == 0 exactly; nudge off the measure-zero event.
      m.logmag = -745.0;
    }
    clamps += m.clamped ? 1 : 0;
    const double phase =
        sample_phase(dist.phase_model, uniform_open(seed, j, kPhaseStream));
    coeffs.push_back(XComplex::polar(m.logmag, phase));
  }
  CoefficientVector c = make_coefficient_vector(std::move(coeffs), seed);
  c.clamp_count = clamps;
  return c;
}

double tail_probability(const CoefficientDistribution& dist, const XReal& t) {
  if (t.sign <= 0) return 1.0;
  const double lt = t.logmag;  // log t
  switch (dist.variant) {
    case TailVariant::SlowTailMagnitude:
      return lt <= 1.0 ? 1.0 : std::pow(lt, -dist.beta);
    case TailVariant::DoubleLogSlowTail: {
      if (lt <= 0.0) return 1.0;
      const double s = std::log1p(lt);  // X must exceed s
      if (s >= dist.cap) return 0.0;
      if (s <= std::numbers::e) return 1.0;
      return std::pow(std::log(s), -dist.beta);
    }
    case TailVariant::ComplexGaussian:
      if (dist.phase_model == PhaseModel::UniformPhase) {
        return std::exp(-std::exp(2.0 * lt));
      }
      return std::erfc(std::exp(lt) / std::numbers::sqrt2);
    case TailVariant::Cauchy:
      return 2.0 / kPi * std::atan(std::exp(-lt));
    case TailVariant::UnitModulus:
      return lt < 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

double max_over_sum_statistic(std::span<const XReal> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("max_over_sum_statistic: empty sample");
  }
  XReal mx{};
  for (const auto& s : samples) {
    if (s.sign < 0) throw std::invalid_argument("max_over_sum_statistic: negative sample");
    if (xcmp(s, mx) > 0) mx = s;
  }
  if (mx.is_zero()) throw std::invalid_argument("max_over_sum_statistic: all samples zero");
  const XReal total = xlogsumexp(samples);
  return std::exp(mx.logmag - total.logmag);
}

}  // namespace ringroots
