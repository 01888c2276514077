#include "ringroots/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace ringroots {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json xc_to_json(const XComplex& z) {
  ordered_json j;
  j["logmag"] = z.zero ? std::string("-inf") : format_real(z.logmag);
  j["phase"] = format_real(z.zero ? 0.0 : z.phase);
  j["zero"] = z.zero;
  return j;
}

double real_field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw FormatError(std::string("field '") + key + "' must be a number or decimal string");
}

XComplex xc_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("a complex value must be an object {logmag, phase, zero}");
  if (j.value("zero", false)) return XComplex::zero_value();
  const double lm = real_field(j, "logmag");
  if (lm == -std::numeric_limits<double>::infinity()) return XComplex::zero_value();
  const double ph = j.contains("phase") ? real_field(j, "phase") : 0.0;
  return XComplex::polar(lm, ph);
}

std::vector<XComplex> xc_list(const json& arr, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<XComplex> out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(xc_from_json(e));
  return out;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

ordered_json estimate_json(const Estimate& e) {
  ordered_json j;
  j["successes"] = e.successes;
  j["total"] = e.total;
  j["p"] = e.p;
  j["se"] = e.se;
  return j;
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

PlotTrial to_plot(const TrialRecord& r) {
  return PlotTrial{r.n, r.trial, r.roots, r.inner_logmag, r.outer_logmag};
}

std::optional<PlotTrial> pick(const std::vector<std::pair<PlotTrial, bool>>& rows, bool with_circles) {
  const PlotTrial* best = nullptr;
  for (int pass = with_circles ? 0 : 1; pass < 2 && !best; ++pass) {
    for (const auto& [t, converged] : rows) {
      if (!converged) continue;
      if (pass == 0 && !(t.inner_logmag && t.outer_logmag)) continue;
      if (!best || t.n > best->n || (t.n == best->n && t.trial < best->trial)) best = &t;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  if (s.empty()) throw FormatError("empty decimal string");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw FormatError("not a decimal number: '" + s + "'");
  return v;
}

std::string coefficients_to_json(const CoefficientVector& c) {
  ordered_json j;
  j["degree"] = c.degree();
  j["seed"] = c.seed;
  j["tau"] = c.tau;
  j["clamp_count"] = c.clamp_count;
  j["coeffs"] = ordered_json::array();
  for (const auto& x : c.coeffs) j["coeffs"].push_back(xc_to_json(x));
  return j.dump(2) + "\n";
}

CoefficientVector coefficients_from_json(const std::string& text) {
  const json j = parse_document(text);
  try {
    if (j.is_array()) return make_coefficient_vector(xc_list(j, "coefficients"));
    if (!j.is_object() || !j.contains("coeffs")) throw FormatError("expected an object with a 'coeffs' array");
    CoefficientVector c = make_coefficient_vector(xc_list(j.at("coeffs"), "coeffs"), j.value("seed", std::uint64_t{0}));
    if (c.coeffs.empty()) throw FormatError("'coeffs' must not be empty");
    if (j.contains("tau")) {
      const auto tau = j.at("tau").get<std::size_t>();
      if (tau > c.degree()) throw FormatError("'tau' exceeds the degree");
      c.tau = tau;
    }
    c.clamp_count = j.value("clamp_count", 0);
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad coefficient document: ") + e.what());
  }
}

std::string rootset_to_json(const RootSet& rs) {
  ordered_json j;
  j["degree"] = rs.roots.size();
  j["converged"] = rs.converged;
  j["iterations"] = rs.iterations;
  j["roots"] = ordered_json::array();
  for (const auto& z : rs.roots) j["roots"].push_back(xc_to_json(z));
  j["residuals"] = ordered_json::array();
  for (double r : rs.residuals) j["residuals"].push_back(format_real(r));
  return j.dump(2) + "\n";
}

RootSet rootset_from_json(const std::string& text) {
  const json j = parse_document(text);
  try {
    RootSet rs;
    rs.roots = xc_list(j.at("roots"), "roots");
    rs.converged = j.value("converged", false);
    rs.iterations = j.value("iterations", 0);
    if (j.contains("residuals")) {
      for (const auto& r : j.at("residuals")) rs.residuals.push_back(r.is_string() ? parse_real(r.get<std::string>()) : r.get<double>());
    }
    return rs;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad root set document: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& cfg, bool include_runtime) {
  ordered_json j;
  j["kind"] = to_string(cfg.kind);
  j["dist"] = {{"variant", to_string(cfg.dist.variant)},
               {"beta", cfg.dist.beta},
               {"cap", cfg.dist.cap},
               {"phase_model", to_string(cfg.dist.phase_model)}};
  j["degrees"] = cfg.degrees;
  j["trials"] = cfg.trials;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["alpha"] = cfg.alpha;
  j["master_seed"] = cfg.master_seed;
  j["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"decouple_gap", cfg.solver.decouple_gap}};
  if (include_runtime) {
    j["output_path"] = cfg.output_path;
    j["threads"] = cfg.threads;
  }
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw FormatError("config must be an object");
  static const char* const kKeys[] = {"kind", "dist", "degrees", "trials", "delta", "eps", "alpha",
                                      "master_seed", "output_path", "threads", "solver"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; }) ==
        std::end(kKeys)) {
      throw FormatError("unknown config key '" + key + "'");
    }
  }
  try {
    ExperimentConfig cfg;
    cfg.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (j.contains("dist")) {
      const json& d = j.at("dist");
      cfg.dist.variant = parse_tail_variant(d.at("variant").get<std::string>());
      cfg.dist.beta = d.value("beta", cfg.dist.beta);
      cfg.dist.cap = d.value("cap", cfg.dist.cap);
      if (d.contains("phase_model")) cfg.dist.phase_model = parse_phase_model(d.at("phase_model").get<std::string>());
    }
    cfg.degrees = j.at("degrees").get<std::vector<std::size_t>>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.delta = j.value("delta", cfg.delta);
    cfg.eps = j.value("eps", cfg.eps);
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("master_seed")) {
      const json& s = j.at("master_seed");
      cfg.master_seed = s.is_string() ? std::stoull(s.get<std::string>(), nullptr, 0) : s.get<std::uint64_t>();
    }
    cfg.output_path = j.value("output_path", std::string());
    cfg.threads = j.value("threads", 0u);
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      cfg.solver.tol = s.value("tol", cfg.solver.tol);
      cfg.solver.max_iter = s.value("max_iter", cfg.solver.max_iter);
      cfg.solver.decouple_gap = s.value("decouple_gap", cfg.solver.decouple_gap);
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad config: ") + e.what());
  }
}

std::string summary_to_json(const Summary& s) {
  ordered_json j;
  j["config"] = ordered_json::parse(config_to_json(s.config, false));
  j["per_degree"] = ordered_json::array();
  for (const auto& d : s.per_degree) {
    ordered_json e;
    e["n"] = d.n;
    e["trials"] = d.trials;
    e["nonconverged"] = d.nonconverged;
    e["degenerate"] = d.degenerate;
    e["clamp_total"] = d.clamp_total;
    e["empty_annulus"] = estimate_json(d.empty_annulus);
    e["mean_annulus_fraction"] = d.mean_annulus_fraction;
    e["mean_annulus_fraction_se"] = d.mean_annulus_fraction_se;
    e["dominant_gap"] = estimate_json(d.dominant_gap);
    e["certificate"] = estimate_json(d.certificate);
    e["two_sided_certificate"] = estimate_json(d.two_sided_certificate);
    if (s.config.kind == ExperimentKind::Theorem2) {
      e["match"] = estimate_json(d.match);
      e["greedy_disagreements"] = d.greedy_disagreements;
    }
    e["sectors"] = ordered_json::array();
    for (const auto& x : d.sectors) e["sectors"].push_back(estimate_json(x));
    if (s.config.kind == ExperimentKind::StableCompare) e["stable_limit"] = d.stable_limit;
    j["per_degree"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "n,trial,seed,tau,clamp_count,converged,iterations,degenerate,dominant_gap,product_dominance,"
      "threshold_dominance,outer_matching,reversed_product_dominance,reversed_threshold_dominance,"
      "inner_matching,annulus_count,sector_counts,match_holds,match_worst,"
      "greedy_worst,greedy_agrees,inner_logmag,outer_logmag,roots\n";
  auto b = [](bool v) { return v ? "1" : "0"; };
  for (const auto& r : records) {
    std::string sectors;
    for (std::size_t k = 0; k < r.sector_counts.size(); ++k) {
      if (k) sectors += ';';
      sectors += std::to_string(r.sector_counts[k]);
    }
    std::string roots;
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
      if (k) roots += ';';
      const auto& z = r.roots[k];
      roots += z.zero ? std::string("zero") : format_real(z.logmag) + ":" + format_real(z.phase);
    }
    std::ostringstream line;
    line << r.n << ',' << r.trial << ',' << r.seed << ',' << r.tau << ',' << r.clamp_count << ','
         << b(r.converged) << ',' << r.iterations << ',' << b(r.events.degenerate) << ','
         << b(r.events.dominant_gap) << ',' << b(r.events.product_dominance) << ','
         << b(r.events.threshold_dominance) << ',' << b(r.events.outer_matching) << ','
         << b(r.events.reversed_product_dominance) << ',' << b(r.events.reversed_threshold_dominance) << ','
         << b(r.events.inner_matching) << ','
         << r.annulus_count << ',' << sectors << ',';
    if (r.match && !r.match->degenerate) {
      line << b(r.match->holds) << ',' << format_real(r.match->worst_relative_error) << ','
           << format_real(r.match->greedy_worst) << ',' << b(r.match->greedy_agrees) << ',';
    } else {
      line << ",,,,";
    }
    line << opt_real(r.inner_logmag) << ',' << opt_real(r.outer_logmag) << ',' << roots << '\n';
    out += line.str();
  }
  return out;
}

std::optional<PlotTrial> representative_trial(const std::vector<TrialRecord>& records, bool with_circles) {
  std::vector<std::pair<PlotTrial, bool>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.emplace_back(to_plot(r), r.converged);
  return pick(rows, with_circles);
}

std::vector<PlotTrial> plot_trials_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("records file is empty");
  const auto header = split(line, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"n", "trial", "converged", "inner_logmag", "outer_logmag", "roots"}) {
    if (!col.count(need)) throw FormatError(std::string("records file lacks column '") + need + "'");
  }
  std::vector<std::pair<PlotTrial, bool>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) {
      throw FormatError("records line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                        " fields, expected " + std::to_string(header.size()));
    }
    PlotTrial t;
    try {
      t.n = std::stoul(f[col["n"]]);
      t.trial = std::stoul(f[col["trial"]]);
    } catch (const std::exception&) {
      throw FormatError("records line " + std::to_string(lineno) + ": bad n or trial");
    }
    if (!f[col["inner_logmag"]].empty()) t.inner_logmag = parse_real(f[col["inner_logmag"]]);
    if (!f[col["outer_logmag"]].empty()) t.outer_logmag = parse_real(f[col["outer_logmag"]]);
    for (const auto& item : split(f[col["roots"]], ';')) {
      if (item.empty()) continue;
      if (item == "zero") {
        t.roots.push_back(XComplex::zero_value());
        continue;
      }
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw FormatError("records line " + std::to_string(lineno) + ": bad root '" + item + "'");
      t.roots.push_back(XComplex::polar(parse_real(item.substr(0, colon)), parse_real(item.substr(colon + 1))));
    }
    rows.emplace_back(std::move(t), f[col["converged"]] == "1");
  }
  std::vector<PlotTrial> out;
  out.reserve(rows.size());
  // Representative trial first, then the rest in file order.
  if (auto best = pick(rows, true)) out.push_back(*best);
  for (auto& [t, converged] : rows) {
    if (!out.empty() && t.n == out.front().n && t.trial == out.front().trial) continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::string render_svg(const std::optional<PlotTrial>& t, const std::string& title) {
  constexpr double kW = 720, kH = 480, kLeft = 80, kRight = 20, kTop = 40, kBottom = 50;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << title << "</text>\n";
  s << "<rect class=\"frame\" x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  std::vector<double> ys;
  if (t) {
    const double n = static_cast<double>(std::max<std::size_t>(t->n, 1));
    for (const auto& z : t->roots) {
      if (!z.zero) ys.push_back(z.logmag / n);
    }
    if (t->inner_logmag) ys.push_back(*t->inner_logmag / n);
    if (t->outer_logmag) ys.push_back(*t->outer_logmag / n);
  }
  ys.erase(std::remove_if(ys.begin(), ys.end(), [](double y) { return !std::isfinite(y); }), ys.end());
  if (ys.empty()) {
    s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kTop + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\">no converged trial</text>\n</svg>\n";
    return s.str();
  }
  double lo = *std::min_element(ys.begin(), ys.end());
  double hi = *std::max_element(ys.begin(), ys.end());
  if (hi - lo < 1e-9 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1.0, std::abs(hi) * 0.1);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  const double pi = std::numbers::pi;
  auto px = [&](double phase) { return kLeft + (phase + pi) / (2 * pi) * pw; };
  auto py = [&](double y) { return kTop + (hi - y) / (hi - lo) * ph; };

  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<text x=\"" << px(-pi) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">-pi</text>\n";
  s << "<text x=\"" << px(0) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">0</text>\n";
  s << "<text x=\"" << px(pi) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">pi</text>\n";
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">arg z</text>\n";
  s << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(hi)) << "\" text-anchor=\"end\">" << format_real(hi).substr(0, 10) << "</text>\n";
  s << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(lo)) << "\" text-anchor=\"end\">" << format_real(lo).substr(0, 10) << "</text>\n";
  s << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 16 " << kTop + ph / 2
    << ")\" text-anchor=\"middle\">log|z| / n</text>\n";
  s << "</g>\n";

  const double n = static_cast<double>(std::max<std::size_t>(t->n, 1));
  for (const auto& circle : {t->inner_logmag, t->outer_logmag}) {
    if (!circle || !std::isfinite(*circle / n)) continue;
    const std::string y = fixed(py(*circle / n));
    s << "<line class=\"reference\" x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
      << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (const auto& z : t->roots) {
    if (z.zero || !std::isfinite(z.logmag / n)) continue;
    s << "<circle class=\"root\" cx=\"" << fixed(px(z.phase)) << "\" cy=\"" << fixed(py(z.logmag / n))
      << "\" r=\"2.5\" fill=\"#1f4e79\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + p.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + p.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + p.string() + "'");
}

void emit_outputs(const Summary& s, const std::vector<TrialRecord>& records, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
  write_text_file(dir / "summary.json", summary_to_json(s));
  write_text_file(dir / "records.csv", records_to_csv(records));
  const bool circles = s.config.kind == ExperimentKind::Theorem2;
  const auto rep = representative_trial(records, circles);
  std::string title = to_string(s.config.kind);
  if (rep) title += " n=" + std::to_string(rep->n) + " trial " + std::to_string(rep->trial);
  write_text_file(dir / "roots.svg", render_svg(rep, title));
}

}  // namespace ringroots
