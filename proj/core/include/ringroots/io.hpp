#ifndef RINGROOTS_IO_HPP_
#define RINGROOTS_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringroots/experiments.hpp"
#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"
#include "ringroots/xnum.hpp"

namespace ringroots {

/// Thrown for malformed input documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double v);
double parse_real(const std::string& s);

std::string coefficients_to_json(const CoefficientVector& c);
/// Accepts the object written by coefficients_to_json or a bare array of
/// coefficients. Each coefficient is {logmag, phase, zero} with strings or
/// numbers. tau is recomputed when absent.
CoefficientVector coefficients_from_json(const std::string& text);

std::string rootset_to_json(const RootSet& rs);
RootSet rootset_from_json(const std::string& text);

/// include_runtime adds output_path and threads, which never affect results.
std::string config_to_json(const ExperimentConfig& cfg, bool include_runtime = true);
ExperimentConfig config_from_json(const std::string& text);

std::string summary_to_json(const Summary& s);
std::string records_to_csv(const std::vector<TrialRecord>& records);

/// The data drawn in the log-polar scatter.
struct PlotTrial {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::vector<XComplex> roots;
  std::optional<double> inner_logmag;
  std::optional<double> outer_logmag;
};

/// Largest degree, then lowest trial index, among converged trials; trials
/// with predicted circles are preferred when `with_circles` is set.
std::optional<PlotTrial> representative_trial(const std::vector<TrialRecord>& records,
                                              bool with_circles);
std::vector<PlotTrial> plot_trials_from_csv(const std::string& csv);

/// x = arg z, y = log|z| / n. Predicted circles become horizontal lines.
std::string render_svg(const std::optional<PlotTrial>& t, const std::string& title);

/// Writes summary.json, records.csv and roots.svg into dir.
void emit_outputs(const Summary& s, const std::vector<TrialRecord>& records,
                  const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& text);

}  // namespace ringroots

#endif  // RINGROOTS_IO_HPP_
