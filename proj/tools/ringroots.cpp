// ringroots command-line interface.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringroots/experiments.hpp"
#include "ringroots/io.hpp"
#include "ringroots/localization.hpp"
#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ringroots;

int report_error(const std::string& kind, const std::string& message, int code) {
  ordered_json j;
  j["error"] = {{"type", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << std::endl;
  return code;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct SampleArgs {
  std::string dist = "slow_tail";
  double beta = 1.0;
  double cap = 690.0;
  std::string phase = "uniform";
  std::size_t n = 10;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string in;
  std::string out;
  double tol = 1e-12;
  int max_iter = 200;
};

struct CertifyArgs {
  std::string in;
  std::string out;
  double eps = 0.5;
  double delta = 1.0;
};

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::optional<unsigned> threads;
};

struct PlotArgs {
  std::string in;
  std::string out;
};

void run_sample(const SampleArgs& a) {
  CoefficientDistribution d;
  d.variant = parse_tail_variant(a.dist);
  d.beta = a.beta;
  d.cap = a.cap;
  d.phase_model = parse_phase_model(a.phase);
  write_or_print(a.out, coefficients_to_json(sample_coefficients(d, a.n, a.seed)));
}

void run_solve(const SolveArgs& a) {
  const auto c = coefficients_from_json(read_text_file(a.in));
  const auto t = trim(c.coeffs);
  RootSet rs = aberth_solve(t.poly, SolverOptions{a.tol, a.max_iter});
  for (std::size_t k = 0; k < t.zero_root_multiplicity; ++k) {
    rs.roots.insert(rs.roots.begin(), XComplex::zero_value());
    rs.residuals.insert(rs.residuals.begin(), 0.0);
  }
  write_or_print(a.out, rootset_to_json(rs));
}

void run_certify(const CertifyArgs& a) {
  const auto c = coefficients_from_json(read_text_file(a.in));
  if (c.degree() < 1) throw std::invalid_argument("certify needs a polynomial of degree at least 1");
  const auto ev = evaluate_events(c, a.eps, a.delta);
  ordered_json j;
  j["degree"] = c.degree();
  j["tau"] = c.tau;
  j["eps"] = a.eps;
  j["delta"] = a.delta;
  j["degenerate"] = ev.degenerate;
  j["dominant_gap"] = ev.dominant_gap;
  j["product_dominance"] = ev.product_dominance;
  j["threshold_dominance"] = ev.threshold_dominance;
  j["outer_matching"] = ev.outer_matching;
  j["reversed_product_dominance"] = ev.reversed_product_dominance;
  j["reversed_threshold_dominance"] = ev.reversed_threshold_dominance;
  j["inner_matching"] = ev.inner_matching;
  j["pellet"] = nullptr;
  j["predicted"] = nullptr;
  if (!ev.degenerate) {
    const Polynomial p(c.coeffs);
    if (const auto cert = pellet_certify(p, c.tau)) {
      j["pellet"] = {{"k", cert->k},
                     {"r_logmag", format_real(cert->r_logmag)},
                     {"R_logmag", format_real(cert->R_logmag)}};
    }
    const auto pr = predicted_roots(c);
    j["predicted"] = {{"inner_count", pr.inner.size()},
                      {"inner_logmag", format_real(pr.inner_logmag())},
                      {"outer_count", pr.outer.size()},
                      {"outer_logmag", format_real(pr.outer_logmag())}};
  }
  write_or_print(a.out, j.dump(2) + "\n");
}

void run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg = config_from_json(read_text_file(a.config));
  if (a.threads) cfg.threads = *a.threads;
  const std::string dir = a.out.empty() ? cfg.output_path : a.out;
  if (dir.empty()) throw std::invalid_argument("no output directory: pass -o or set output_path");
  const auto r = run_experiment(cfg);
  emit_outputs(r.summary, r.records, dir);
  std::cout << summary_to_json(r.summary);
}

void run_plot(const PlotArgs& a) {
  const auto trials = plot_trials_from_csv(read_text_file(a.in));
  std::optional<PlotTrial> rep;
  std::string title = "roots";
  if (!trials.empty()) {
    rep = trials.front();
    title = "n=" + std::to_string(rep->n) + " trial " + std::to_string(rep->trial);
  }
  write_text_file(a.out, render_svg(rep, title));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roots of random polynomials with heavy-tailed coefficients"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw one random coefficient vector");
  sample->add_option("--dist", sa.dist, "slow_tail | double_log | complex_gaussian | cauchy | unit_modulus")
      ->capture_default_str();
  sample->add_option("--beta", sa.beta, "Tail index")->capture_default_str();
  sample->add_option("--cap", sa.cap, "Clamp for double_log")->capture_default_str();
  sample->add_option("--phase", sa.phase, "uniform | rademacher | positive")->capture_default_str();
  sample->add_option("--n", sa.n, "Degree")->required();
  sample->add_option("--seed", sa.seed, "Seed")->required();
  sample->add_option("-o,--output", sa.out, "Output file (stdout if omitted)");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "Find all roots of a polynomial");
  solve->add_option("-i,--input", so.in, "Coefficient JSON")->required();
  solve->add_option("-o,--output", so.out, "Root set JSON (stdout if omitted)");
  solve->add_option("--tol", so.tol, "Relative correction tolerance")->capture_default_str();
  solve->add_option("--max-iter", so.max_iter, "Iteration limit")->capture_default_str();

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Evaluate localization certificates");
  certify->add_option("-i,--input", ca.in, "Coefficient JSON")->required();
  certify->add_option("-o,--output", ca.out, "Report JSON (stdout if omitted)");
  certify->add_option("--eps", ca.eps, "Matching accuracy")->capture_default_str();
  certify->add_option("--delta", ca.delta, "Annulus half-width")->capture_default_str();

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->add_option("-c,--config", ea.config, "Config JSON")->required();
  experiment->add_option("-o,--output", ea.out, "Output directory");
  experiment->add_option("--threads", ea.threads, "Worker threads (results do not depend on this)");

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "Render roots from a records CSV");
  plot->add_option("-i,--input", pa.in, "records.csv")->required();
  plot->add_option("-o,--output", pa.out, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), 2);
  }

  try {
    if (*sample) run_sample(sa);
    if (*solve) run_solve(so);
    if (*certify) run_certify(ca);
    if (*experiment) run_experiment_cmd(ea);
    if (*plot) run_plot(pa);
  } catch (const FormatError& e) {
    return report_error("format", e.what(), 3);
  } catch (const std::invalid_argument& e) {
    return report_error("invalid_argument", e.what(), 4);
  } catch (const std::domain_error& e) {
    return report_error("domain", e.what(), 4);
  } catch (const std::exception& e) {
    return report_error("runtime", e.what(), 1);
  }
  return 0;
}
