#include "uwq/gaussconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "uwq/expansion.hpp"

namespace uwq {

namespace {

constexpr int kGaussOrder = 20;

// Composite Gauss-Legendre nodes and weights on [lo, hi].
void composite_rule(double lo, double hi, int panels, std::vector<double>& x, std::vector<double>& w) {
  using rule = boost::math::quadrature::gauss<double, kGaussOrder>;
  const auto& ab = rule::abscissa();
  const auto& wt = rule::weights();
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (ab[i] == 0.0 && sgn > 0) continue;
        x.push_back(c + sgn * 0.5 * h * ab[i]);
        w.push_back(0.5 * h * wt[i]);
      }
    }
  }
}

double bump1(double lo, double hi, double x) {
  const double u = (2.0 * x - lo - hi) / (hi - lo);
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

void check_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::overflow_error(std::string(what) + ": result overflows double range");
}

}  // namespace

CompactDensity::CompactDensity(double lo, double hi, int d, DensityKind kind, Fn f)
    : lo_(lo), hi_(hi), d_(d), kind_(kind), f_(std::move(f)) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("CompactDensity: need finite lo < hi");
  if (d != 1 && d != 2) throw std::invalid_argument("CompactDensity: d must be 1 or 2");
  std::vector<double> x, w;
  composite_rule(lo, hi, d == 1 ? kPanels1d : kPanels2d, x, w);
  if (d == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      Node nd{{x[i], 0.0}, w[i], 0.0};
      nd.value = f_(std::span<const double>(nd.x, 1));
      nodes_.push_back(nd);
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) {
        Node nd{{x[i], x[j]}, w[i] * w[j], 0.0};
        nd.value = f_(std::span<const double>(nd.x, 2));
        nodes_.push_back(nd);
      }
  }
}

CompactDensity CompactDensity::indicator(double lo, double hi, int d) {
  return CompactDensity(lo, hi, d, DensityKind::Indicator, [](std::span<const double>) { return cplx(1.0); });
}

CompactDensity CompactDensity::bump(double lo, double hi, int d) {
  return CompactDensity(lo, hi, d, DensityKind::GaussianBump, [lo, hi](std::span<const double> x) {
    double v = 1.0;
    for (double xi : x) v *= bump1(lo, hi, xi);
    return cplx(v);
  });
}

CompactDensity CompactDensity::poly_bump(double lo, double hi, std::vector<double> coeffs, int d) {
  if (coeffs.empty()) throw std::invalid_argument("CompactDensity::poly_bump: empty coefficient list");
  return CompactDensity(lo, hi, d, DensityKind::PolyTimesBump, [lo, hi, coeffs](std::span<const double> x) {
    double v = 1.0;
    for (double xi : x) {
      double p = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * xi + *it;
      v *= p * bump1(lo, hi, xi);
    }
    return cplx(v);
  });
}

CompactDensity CompactDensity::custom(double lo, double hi, int d, Fn f) {
  if (!f) throw std::invalid_argument("CompactDensity::custom: empty function");
  return CompactDensity(lo, hi, d, DensityKind::Custom, std::move(f));
}

cplx CompactDensity::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("CompactDensity: point dimension mismatch");
  for (double xi : x)
    if (xi < lo_ || xi > hi_) return 0.0;
  return f_(x);
}

CompactDensity parse_density(const std::string& text, int d) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("density '" + text + "': missing field " + std::to_string(i));
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("density '" + text + "': field '" + parts[i] + "' is not a number");
    }
  };
  if (parts.empty()) throw std::invalid_argument("density: empty description");
  const std::string& kind = parts[0];
  if (kind == "indicator" && parts.size() == 3) return CompactDensity::indicator(num(1), num(2), d);
  if (kind == "bump" && parts.size() == 3) return CompactDensity::bump(num(1), num(2), d);
  if (kind == "polybump" && parts.size() == 4) {
    std::vector<double> c;
    std::stringstream cs(parts[3]);
    while (std::getline(cs, item, ',')) c.push_back(std::stod(item));
    return CompactDensity::poly_bump(num(1), num(2), std::move(c), d);
  }
  throw std::invalid_argument("density '" + text +
                              "': expected indicator:lo:hi, bump:lo:hi or polybump:lo:hi:c0,c1,...");
}

cplx laplace(const CompactDensity& S, std::span<const cplx> zeta) {
  if (static_cast<int>(zeta.size()) != S.d()) throw std::invalid_argument("laplace: zeta dimension mismatch");
  cplx s = 0.0;
  for (const auto& nd : S.nodes()) {
    cplx e = 0.0;
    for (int i = 0; i < S.d(); ++i) e += zeta[i] * nd.x[i];
    s += nd.w * std::exp(-e) * nd.value;
  }
  check_finite(s, "laplace");
  return s;
}

cplx laplace(const CompactDensity& S, cplx zeta) { return laplace(S, std::span<const cplx>(&zeta, 1)); }

cplx conv_gauss_via_laplace(const CompactDensity& S, double s, std::span<const double> x) {
  if (s == 0.0) throw std::invalid_argument("conv_gauss_via_laplace: s must be nonzero");
  if (static_cast<int>(x.size()) != S.d()) throw std::invalid_argument("conv_gauss_via_laplace: x dimension mismatch");
  double x2 = 0.0;
  std::vector<cplx> zeta(S.d());
  for (int i = 0; i < S.d(); ++i) {
    x2 += x[i] * x[i];
    zeta[i] = 2.0 * s * x[i];
  }
  // L(e^{s|.|^2} S)(2 s x)
  cplx L = 0.0;
  for (const auto& nd : S.nodes()) {
    double y2 = 0.0, zy = 0.0;
    for (int i = 0; i < S.d(); ++i) {
      y2 += nd.x[i] * nd.x[i];
      zy += zeta[i].real() * nd.x[i];
    }
    L += nd.w * std::exp(s * y2 - zy) * nd.value;
  }
  const cplx r = std::exp(s * x2) * L;
  check_finite(r, "conv_gauss_via_laplace");
  return r;
}

cplx conv_gauss_direct(const CompactDensity& S, double s, std::span<const double> x) {
  if (static_cast<int>(x.size()) != S.d()) throw std::invalid_argument("conv_gauss_direct: x dimension mismatch");
  cplx r = 0.0;
  for (const auto& nd : S.nodes()) {
    double q = 0.0;
    for (int i = 0; i < S.d(); ++i) q += (x[i] - nd.x[i]) * (x[i] - nd.x[i]);
    r += nd.w * std::exp(s * q) * nd.value;
  }
  check_finite(r, "conv_gauss_direct");
  return r;
}

// ---- B*_s diagnostic ----

bool BStarReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const BStarEntry& e) { return e.pass; });
}

BStarReport bstar_diagnostic(const LogEnvelope& log_g, double s, std::span<const double> k_list, double box) {
  if (!log_g) throw std::invalid_argument("bstar_diagnostic: envelope missing");
  if (!(box > 0.0)) throw std::invalid_argument("bstar_diagnostic: box must be positive");
  constexpr int kPoints = 4000;
  constexpr double kTailTol = 1e-6;
  const double h = box / kPoints;
  const double ninf = -std::numeric_limits<double>::infinity();

  BStarReport rep;
  for (double k : k_list) {
    if (k < 0.0) throw std::invalid_argument("bstar_diagnostic: k must be non-negative");
    auto logf = [&](double r) {
      const double lg = log_g(r);
      if (lg == ninf) return ninf;
      const double kr = k * r;
      return kr + std::log1p(std::exp(-2.0 * kr)) - std::log(2.0) + s * r * r + lg;
    };
    // ln of 2 int_0^box f by trapezoid in the log domain.
    std::vector<double> lv(kPoints + 1);
    double mx = ninf;
    for (int i = 0; i <= kPoints; ++i) {
      lv[i] = logf(i * h);
      mx = std::max(mx, lv[i]);
    }
    BStarEntry e;
    e.k = k;
    if (mx == ninf) {
      e.log_integral = ninf;
      e.pass = true;
      rep.entries.push_back(e);
      continue;
    }
    double acc = 0.0;
    for (int i = 0; i <= kPoints; ++i) {
      const double w = (i == 0 || i == kPoints) ? 0.5 : 1.0;
      if (lv[i] != ninf) acc += w * std::exp(lv[i] - mx);
    }
    e.log_integral = mx + std::log(acc * h) + std::log(2.0);

    const double lend = lv[kPoints];
    if (lend == ninf) {
      e.tail_rate = std::numeric_limits<double>::infinity();
      e.pass = true;
      rep.entries.push_back(e);
      continue;
    }
    // Decay rate over the outer quarter.
    bool ok = true;
    double prev_rate = ninf;
    const int q0 = 3 * kPoints / 4;
    const int stride = std::max(1, kPoints / 64);
    for (int i = q0; i + stride <= kPoints; i += stride) {
      const double rate = (lv[i] - lv[i + stride]) / (stride * h);
      if (!(rate > 0.0) || rate < prev_rate - 1e-9 * std::abs(prev_rate)) ok = false;
      prev_rate = rate;
    }
    e.tail_rate = (lv[kPoints - stride] - lend) / (stride * h);
    // Non-decreasing rate bounds the tail by f(box) / rate.
    if (ok && e.tail_rate > 0.0) {
      const double log_tail = lend - std::log(e.tail_rate) + std::log(2.0);
      ok = log_tail - e.log_integral < std::log(kTailTol);
    }
    e.pass = ok;
    rep.entries.push_back(e);
  }
  return rep;
}

cplx example5_symbol(double l, const PolySymbol& P, std::span<const double> x, std::span<const double> xi) {
  if (!(l < 1.0)) throw std::domain_error("example5_symbol: l must be < 1");
  const int d = P.d();
  for (const auto& [m, c] : P.terms())
    if (m.xexp.order() != 0) throw std::invalid_argument("example5_symbol: P must depend on xi only");
  double x2 = 0.0;
  for (double v : x) x2 += v * v;
  const PolySymbol Q = heat_quarter(P, +1);
  return std::pow(1.0 - l, -0.5 * d) * std::exp(l * x2 / (1.0 - l)) * Q.eval(x, xi);
}

// ---- oscillatory kernel ----

double Cutoff::operator()(double t) const {
  const double a = std::abs(t);
  if (a <= plateau) return 1.0;
  if (a >= support) return 0.0;
  auto h = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double p = h(support - a), q = h(a - plateau);
  return p / (p + q);
}

SeparableSymbol SeparableSymbol::from_poly(const PolySymbol& a) {
  if (a.d() != 1) throw std::invalid_argument("SeparableSymbol: d must be 1");
  std::map<int, PolySymbol> by_x;
  for (const auto& [m, c] : a.terms()) {
    auto it = by_x.try_emplace(m.xexp[0], PolySymbol(1)).first;
    it->second.add_term(m.kexp, MultiIndex::zero(1), c);
  }
  SeparableSymbol s;
  for (auto& [e, P] : by_x) s.terms.push_back({[e = e](double m) { return cplx(std::pow(m, e)); }, P});
  return s;
}

SeparableSymbol SeparableSymbol::example5(double l, const PolySymbol& P) {
  if (!(l < 1.0)) throw std::domain_error("SeparableSymbol::example5: l must be < 1");
  if (P.d() != 1) throw std::invalid_argument("SeparableSymbol::example5: d must be 1");
  for (const auto& [m, c] : P.terms())
    if (m.xexp.order() != 0) throw std::invalid_argument("SeparableSymbol::example5: P must depend on xi only");
  SeparableSymbol s;
  s.terms.push_back({[l](double m) { return cplx(std::pow(1.0 - l, -0.5) * std::exp(l * m * m / (1.0 - l))); },
                     heat_quarter(P, +1)});
  return s;
}

cplx SeparableSymbol::operator()(double m, double xi) const {
  cplx v = 0.0;
  for (const auto& t : terms) v += t.f(m) * t.P.eval(0.0, xi);
  return v;
}

OscKernelReport oscillatory_kernel(const SeparableSymbol& b, const FunctionGrid& chi,
                                   std::span<const double> deltas, Cutoff psi, double noise_floor) {
  if (chi.axis.d() != 2) throw std::invalid_argument("oscillatory_kernel: chi must live on a d = 2 grid over (x, y)");
  if (deltas.empty()) throw std::invalid_argument("oscillatory_kernel: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw std::invalid_argument("oscillatory_kernel: deltas must be positive");
    if (i && !(deltas[i] < deltas[i - 1])) throw std::invalid_argument("oscillatory_kernel: deltas must decrease strictly");
  }
  const AxisGrid& g = chi.axis;
  const int n = g.n();
  const double dx = g.dx();
  const int T = static_cast<int>(b.terms.size());

  // G_t(rho) = dx^2 sum_j f_t((x_j + x_{j-rho}) / 2) chi(x_j, x_{j-rho})
  const int R = n - 1;
  std::vector<std::vector<cplx>> G(T, std::vector<cplx>(2 * R + 1));
  for (int t = 0; t < T; ++t)
    for (int rho = -R; rho <= R; ++rho) {
      cplx acc = 0.0;
      for (int j = std::max(0, rho); j < std::min(n, n + rho); ++j) {
        const int k = j - rho;
        const cplx c = chi.values[static_cast<std::size_t>(j) * n + k];
        if (c == 0.0) continue;
        acc += b.terms[t].f(0.5 * (g.x(j) + g.x(k))) * c;
      }
      G[t][rho + R] = dx * dx * acc;
    }

  const double h = kOscXiStep;
  const int kmax = static_cast<int>(std::floor(psi.support / (deltas.back() * h)));
  // F(xi_k) = sum_t P_t(xi_k) sum_rho e^{i rho dx xi_k} G_t(rho), shared by all deltas.
  std::vector<cplx> F(2 * kmax + 1);
  for (int k = -kmax; k <= kmax; ++k) {
    const double xi = k * h;
    const cplx step = std::polar(1.0, dx * xi);
    cplx total = 0.0;
    for (int t = 0; t < T; ++t) {
      cplx e = std::polar(1.0, -R * dx * xi), acc = 0.0;
      for (int rho = -R; rho <= R; ++rho) {
        acc += e * G[t][rho + R];
        e *= step;
      }
      total += b.terms[t].P.eval(0.0, xi) * acc;
    }
    F[k + kmax] = total;
  }

  OscKernelReport rep;
  rep.deltas.assign(deltas.begin(), deltas.end());
  for (double delta : deltas) {
    const int km = static_cast<int>(std::floor(psi.support / (delta * h)));
    cplx v = 0.0;
    for (int k = -km; k <= km; ++k) v += psi(delta * k * h) * F[k + kmax];
    v *= h / (2.0 * kPi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::overflow_error("oscillatory_kernel: quadrature overflows");
    rep.values.push_back(v);
  }
  for (std::size_t i = 1; i < rep.values.size(); ++i) rep.cauchy.push_back(std::abs(rep.values[i] - rep.values[i - 1]));
  const double scale = std::max(1.0, std::abs(rep.values.back()));
  rep.cauchy_shrinking = true;
  for (std::size_t i = 1; i < rep.cauchy.size(); ++i)
    if (rep.cauchy[i] > rep.cauchy[i - 1] && rep.cauchy[i] > noise_floor * scale) rep.cauchy_shrinking = false;
  rep.final_diff = rep.cauchy.empty() ? 0.0 : rep.cauchy.back();
  if (rep.values.size() >= 2) {
    const std::size_t m = rep.values.size();
    const double q = rep.deltas[m - 1] / rep.deltas[m - 2];
    rep.extrapolated = (rep.values[m - 1] - q * rep.values[m - 2]) / (1.0 - q);
  } else {
    rep.extrapolated = rep.values.back();
  }
  return rep;
}

}  // namespace uwq
