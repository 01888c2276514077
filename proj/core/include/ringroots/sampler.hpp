#ifndef RINGROOTS_SAMPLER_HPP_
#define RINGROOTS_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringroots/xnum.hpp"

namespace ringroots {

enum class TailVariant {
  SlowTailMagnitude,  // P{|xi| > t} = (log t)^-beta
  DoubleLogSlowTail,  // log(1 + log(1 + |xi|)) has tail (log s)^-beta
  ComplexGaussian,
  Cauchy,
  UnitModulus,
};

enum class PhaseModel { UniformPhase, RealRademacher, FixedPositive };

/// Law of a single coefficient: a magnitude law and an independent phase law.
struct CoefficientDistribution {
  TailVariant variant = TailVariant::SlowTailMagnitude;
  double beta = 1.0;
  double cap = 690.0;  // DoubleLogSlowTail only
  PhaseModel phase_model = PhaseModel::UniformPhase;

  /// Throws std::invalid_argument when beta <= 0 or cap is out of (0, 700].
  void validate() const;
};

std::string to_string(TailVariant v);
std::string to_string(PhaseModel p);
TailVariant parse_tail_variant(const std::string& s);
PhaseModel parse_phase_model(const std::string& s);

/// Coefficients xi_0..xi_n of one random polynomial.
struct CoefficientVector {
  std::vector<XComplex> coeffs;
  std::size_t tau = 0;  // argmax modulus, least index on ties
  std::uint64_t seed = 0;
  int clamp_count = 0;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Index of the maximum modulus; the least such index on ties.
std::size_t argmax_modulus(std::span<const XComplex> coeffs);

/// Builds a CoefficientVector from explicit values, computing tau.
CoefficientVector make_coefficient_vector(std::vector<XComplex> coeffs,
                                          std::uint64_t seed = 0);

struct MagnitudeDraw {
  double logmag = 0.0;
  bool clamped = false;
};

/// Inverse-transform magnitude for a forced uniform draw u in (0,1).
/// u2 is a second uniform used only by the real Gaussian magnitude.
MagnitudeDraw magnitude_from_uniform(const CoefficientDistribution& dist,
                                     double u, double u2 = 0.25);

/// Maps a double-log variate X to log|xi| = e^X - 1, clamping X at cap.
MagnitudeDraw double_log_magnitude(double x, double cap);

/// n+1 i.i.d. coefficients. Pure function of (dist, n, seed).
CoefficientVector sample_coefficients(const CoefficientDistribution& dist,
                                      std::size_t n, std::uint64_t seed);

/// Exact P{|xi| > t} for the magnitude law of dist.
double tail_probability(const CoefficientDistribution& dist, const XReal& t);

/// M_n / S_n for nonnegative samples, computed in the log domain.
double max_over_sum_statistic(std::span<const XReal> samples);

}  // namespace ringroots

#endif  // RINGROOTS_SAMPLER_HPP_
