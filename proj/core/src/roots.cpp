#include "ringroots/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace ringroots {
namespace {

using cplx = std::complex<double>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Coefficients split into log-modulus and unit phasor; kNegInf marks zero.
struct LogPoly {
  std::vector<double> la;
  std::vector<cplx> unit;

  std::size_t degree() const { return la.size() - 1; }
};

LogPoly to_logpoly(std::span<const XComplex> coeffs) {
  LogPoly q;
  q.la.reserve(coeffs.size());
  q.unit.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    q.la.push_back(c.zero ? kNegInf : c.logmag);
    q.unit.push_back(c.zero ? cplx{} : std::polar(1.0, c.phase));
  }
  return q;
}

// Coefficients j * a_j, so that Horner on them yields z p'(z) after the
// final multiplication by z.
LogPoly weighted_by_index(const LogPoly& q) {
  LogPoly d = q;
  d.la[0] = kNegInf;
  for (std::size_t j = 1; j < d.la.size(); ++j) {
    if (d.la[j] != kNegInf) d.la[j] += std::log(static_cast<double>(j));
  }
  return d;
}

// m * exp(e) with |m| kept away from underflow.
struct Scaled {
  cplx m{};
  double e = kNegInf;

  void add(double l, cplx u) {
    if (l == kNegInf) return;
    if (m == cplx{}) {
      m = u;
      e = l;
      return;
    }
    const double d = l - e;
    if (d > 0.0) {
      m = m * std::exp(-d) + u;
      e = l;
    } else if (d > -745.0) {
      m += u * std::exp(d);
    }
  }

  void renormalize() {
    const double nm = std::norm(m);
    if (nm == 0.0) {
      e = kNegInf;
    } else if (nm < 1e-200 || nm > 1e200) {
      const double a = std::sqrt(nm);
      m /= a;
      e += std::log(a);
    }
  }

  XComplex to_x() const {
    if (m == cplx{} || e == kNegInf) return XComplex::zero_value();
    return XComplex::polar(e + std::log(std::abs(m)), std::arg(m));
  }
};

Scaled horner(const LogPoly& q, double lz, cplx uz) {
  const std::size_t n = q.degree();
  Scaled acc;
  acc.add(q.la[n], q.unit[n]);
  for (std::size_t j = n; j-- > 0;) {
    acc.m *= uz;
    acc.e += lz;
    acc.add(q.la[j], q.unit[j]);
    acc.renormalize();
  }
  return acc;
}

// log sum_j |a_j| |z|^j
double log_abs_sum(const LogPoly& q, double lz) {
  double mx = kNegInf;
  for (std::size_t j = 0; j < q.la.size(); ++j) {
    if (q.la[j] != kNegInf) mx = std::max(mx, q.la[j] + static_cast<double>(j) * lz);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < q.la.size(); ++j) {
    if (q.la[j] != kNegInf) s += std::exp(q.la[j] + static_cast<double>(j) * lz - mx);
  }
  return mx + std::log(s);
}

double residual_of(const LogPoly& q, const XComplex& z) {
  if (z.zero) {
    return q.la[0] == kNegInf ? 0.0 : 1.0;
  }
  const XComplex v = horner(q, z.logmag, std::polar(1.0, z.phase)).to_x();
  if (v.zero) return 0.0;
  return std::min(1.0, std::exp(v.logmag - log_abs_sum(q, z.logmag)));
}

struct HullVertex {
  std::size_t index;
  double la;
};

std::vector<HullVertex> upper_hull(const std::vector<double>& la) {
  std::vector<HullVertex> h;
  for (std::size_t j = 0; j < la.size(); ++j) {
    if (la[j] == kNegInf) continue;
    const HullVertex p{j, la[j]};
    while (h.size() >= 2) {
      const HullVertex& o = h[h.size() - 2];
      const HullVertex& a = h.back();
      const double cross =
          static_cast<double>(a.index - o.index) * (p.la - o.la) -
          (a.la - o.la) * static_cast<double>(p.index - o.index);
      if (cross >= 0.0) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(p);
  }
  return h;
}

// Root log-modulus predicted by the hull segment [a, b].
double segment_radius(const HullVertex& a, const HullVertex& b) {
  return (a.la - b.la) / static_cast<double>(b.index - a.index);
}

struct ClusterResult {
  std::vector<XComplex> roots;
  bool converged = false;
  int iterations = 0;
};

ClusterResult aberth_cluster(const LogPoly& q, const SolverOptions& opts) {
  const std::size_t m = q.degree();
  const LogPoly qd = weighted_by_index(q);

  std::vector<double> lz;
  std::vector<double> th;
  lz.reserve(m);
  th.reserve(m);
  const auto hull = upper_hull(q.la);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t count = hull[s + 1].index - hull[s].index;
    const double rho = segment_radius(hull[s], hull[s + 1]);
    double offset = static_cast<double>(s + 1) * kGolden;
    offset -= std::floor(offset);
    for (std::size_t t = 0; t < count; ++t) {
      lz.push_back(rho);
      th.push_back(wrap_phase(kTwoPi * (static_cast<double>(t) + offset) /
                              static_cast<double>(count)));
    }
  }

  std::vector<cplx> uz(m);
  std::vector<cplx> w(m);
  std::vector<char> in_range(m, 0);
  std::vector<char> done(m, 0);
  for (std::size_t i = 0; i < m; ++i) uz[i] = std::polar(1.0, th[i]);

  const double log_tol = std::log(opts.tol);
  const double log_loose = std::log(1e-4);
  const double exact_level = 4.0 * static_cast<double>(m + 1) * kEps;
  double center = 0.0;

  auto refresh = [&](std::size_t j) {
    const double d = lz[j] - center;
    in_range[j] = std::abs(d) < 300.0;
    w[j] = in_range[j] ? std::exp(d) * uz[j] : cplx{};
  };

  // sum_{j != i} 1 / (1 - z_j / z_i)
  auto pair_sum = [&](std::size_t i) {
    cplx t{};
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      if (in_range[i] && in_range[j]) {
        const cplx diff = w[i] - w[j];
        if (diff != cplx{}) t += w[i] / diff;
        continue;
      }
      const double dl = lz[j] - lz[i];
      if (dl < -40.0) {
        t += 1.0;
      } else if (dl <= 40.0) {
        const cplx denom = 1.0 - std::polar(std::exp(dl), th[j] - th[i]);
        if (denom != cplx{}) t += 1.0 / denom;
      }
    }
    return t;
  };

  ClusterResult out;
  const XComplex one = XComplex::one();
  int it = 0;
  bool all_done = false;
  while (it < opts.max_iter && !all_done) {
    ++it;
    const auto [lo, hi] = std::minmax_element(lz.begin(), lz.end());
    center = 0.5 * (*lo + *hi);
    for (std::size_t j = 0; j < m; ++j) refresh(j);

    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const XComplex pv = horner(q, lz[i], uz[i]).to_x();
      if (pv.zero) {
        done[i] = 1;
        continue;
      }
      const XComplex dv = horner(qd, lz[i], uz[i]).to_x();
      if (dv.zero) {
        // Stationary point of p: step off it.
        th[i] = wrap_phase(th[i] + 0.5);
        uz[i] = std::polar(1.0, th[i]);
        refresh(i);
        continue;
      }
      const XComplex rho = xdiv(pv, dv);  // p / (z p')
      cplx t = pair_sum(i);
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) t = {};
      const XComplex denom = xsub(one, xmul(rho, XComplex::from_complex(t)));
      const XComplex corr = denom.zero ? rho : xdiv(rho, denom);  // dz / z
      XComplex factor = xsub(one, corr);
      if (factor.zero) factor = XComplex::polar(-1e-3, 0.5);

      if (corr.zero || corr.logmag <= log_tol) {
        done[i] = 1;
      } else if (corr.logmag <= log_loose) {
        const double res = std::exp(pv.logmag - log_abs_sum(q, lz[i]));
        if (res <= exact_level) done[i] = 1;
      }
      lz[i] += factor.logmag;
      th[i] = wrap_phase(th[i] + factor.phase);
      uz[i] = std::polar(1.0, th[i]);
      refresh(i);
    }
    all_done = std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
  }

  out.converged = all_done;
  out.iterations = it;
  out.roots.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.roots.push_back(XComplex::polar(lz[i], th[i]));
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<XComplex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  if (coeffs_.front().zero || coeffs_.back().zero) {
    throw std::invalid_argument("polynomial must have nonzero constant and leading coefficients");
  }
}

Polynomial Polynomial::reversed() const {
  return Polynomial(std::vector<XComplex>(coeffs_.rbegin(), coeffs_.rend()));
}

Polynomial Polynomial::scaled(const XComplex& c) const {
  std::vector<XComplex> out;
  out.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.push_back(xmul(a, c));
  return Polynomial(std::move(out));
}

TrimResult trim(std::span<const XComplex> raw) {
  auto nz = [](const XComplex& c) { return !c.zero; };
  const auto first = std::find_if(raw.begin(), raw.end(), nz);
  if (first == raw.end()) throw std::invalid_argument("trim: all coefficients are zero");
  const auto last = std::find_if(raw.rbegin(), raw.rend(), nz).base();
  return TrimResult{Polynomial(std::vector<XComplex>(first, last)),
                    static_cast<std::size_t>(first - raw.begin()),
                    static_cast<std::size_t>(raw.end() - last)};
}

std::vector<RadiusGroup> newton_polygon_radii(const Polynomial& p) {
  const auto hull = upper_hull(to_logpoly(p.coeffs()).la);
  std::vector<RadiusGroup> out;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    out.push_back({segment_radius(hull[s], hull[s + 1]),
                   hull[s + 1].index - hull[s].index});
  }
  return out;
}

XComplex evaluate(const Polynomial& p, const XComplex& z) {
  if (z.zero) return p[0];
  return horner(to_logpoly(p.coeffs()), z.logmag, std::polar(1.0, z.phase)).to_x();
}

double backward_residual(const Polynomial& p, const XComplex& z) {
  return residual_of(to_logpoly(p.coeffs()), z);
}

RootSet aberth_solve(const Polynomial& p, const SolverOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw std::invalid_argument("aberth_solve: tol must be positive and max_iter >= 1");
  }
  RootSet rs;
  rs.converged = true;
  const std::size_t n = p.degree();
  if (n == 0) return rs;

  const LogPoly full = to_logpoly(p.coeffs());
  const auto hull = upper_hull(full.la);
  const std::size_t nseg = hull.size() - 1;

  // Group hull segments into clusters separated by large slope gaps.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [first, last] segment
  std::size_t start = 0;
  for (std::size_t s = 1; s < nseg; ++s) {
    const double gap = segment_radius(hull[s], hull[s + 1]) - segment_radius(hull[s - 1], hull[s]);
    if (gap > opts.decouple_gap) {
      clusters.emplace_back(start, s - 1);
      start = s;
    }
  }
  clusters.emplace_back(start, nseg - 1);

  rs.roots.reserve(n);
  for (const auto& [s0, s1] : clusters) {
    const std::size_t a = hull[s0].index;
    const std::size_t b = hull[s1 + 1].index;

    // Terms within decouple_gap of the hull take part in the cluster.
    std::vector<char> active(b - a + 1, 0);
    bool interior = s1 > s0;
    for (std::size_t s = s0; s <= s1; ++s) {
      const HullVertex& u = hull[s];
      const HullVertex& v = hull[s + 1];
      const double slope = (v.la - u.la) / static_cast<double>(v.index - u.index);
      active[u.index - a] = active[v.index - a] = 1;
      for (std::size_t j = u.index + 1; j < v.index; ++j) {
        if (full.la[j] == kNegInf) continue;
        const double h = u.la + static_cast<double>(j - u.index) * slope;
        if (h - full.la[j] <= opts.decouple_gap) {
          active[j - a] = 1;
          interior = true;
        }
      }
    }

    if (!interior) {
      // Binomial a_a + a_b z^(b-a): closed form.
      const XComplex target = xneg(xdiv(p[a], p[b]));
      auto r = xroot_k(target, static_cast<int>(b - a));
      rs.roots.insert(rs.roots.end(), r.begin(), r.end());
      continue;
    }

    LogPoly sub;
    double top = kNegInf;
    for (std::size_t j = a; j <= b; ++j) {
      if (active[j - a]) top = std::max(top, full.la[j]);
    }
    for (std::size_t j = a; j <= b; ++j) {
      sub.la.push_back(active[j - a] ? full.la[j] - top : kNegInf);
      sub.unit.push_back(full.unit[j]);
    }
    ClusterResult cr = aberth_cluster(sub, opts);
    rs.converged = rs.converged && cr.converged;
    rs.iterations = std::max(rs.iterations, cr.iterations);
    rs.roots.insert(rs.roots.end(), cr.roots.begin(), cr.roots.end());
  }

  rs.residuals.reserve(n);
  for (const auto& z : rs.roots) rs.residuals.push_back(residual_of(full, z));
  return rs;
}

std::vector<XComplex> PredictedRoots::all() const {
  std::vector<XComplex> out = inner;
  out.insert(out.end(), outer.begin(), outer.end());
  return out;
}

PredictedRoots predicted_roots(const CoefficientVector& c) {
  const std::size_t n = c.degree();
  if (c.tau == 0 || c.tau >= n) {
    throw DegenerateTauError("predicted_roots: tau is 0 or n, the two-circle system is undefined");
  }
  const auto& xi = c.coeffs;
  PredictedRoots pr;
  pr.inner = xroot_k(xneg(xdiv(xi[0], xi[c.tau])), static_cast<int>(c.tau));
  pr.outer = xroot_k(xneg(xdiv(xi[c.tau], xi[n])), static_cast<int>(n - c.tau));
  return pr;
}

}  // namespace ringroots
