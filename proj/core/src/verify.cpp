#include "uwq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uwq/expansion.hpp"
#include "uwq/gaussconv.hpp"
#include "uwq/quant.hpp"
#include "uwq/stft.hpp"
#include "uwq/weights.hpp"

namespace uwq {

Suite parse_suite(const std::string& name) {
  for (Suite s : {Suite::All, Suite::Stft, Suite::Quant245, Suite::Expansion, Suite::Tau, Suite::Compose,
                  Suite::Gaussconv, Suite::Weights})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown suite '" + name +
                              "' (all, stft, quant245, expansion, tau, compose, gaussconv, weights)");
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::All: return "all";
    case Suite::Stft: return "stft";
    case Suite::Quant245: return "quant245";
    case Suite::Expansion: return "expansion";
    case Suite::Tau: return "tau";
    case Suite::Compose: return "compose";
    case Suite::Gaussconv: return "gaussconv";
    case Suite::Weights: return "weights";
  }
  return "?";
}

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return "pass";
    case ReportStatus::Fail: return "fail";
    case ReportStatus::Skip: return "skip";
  }
  return "?";
}

bool all_pass(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const Report& r) { return r.status != ReportStatus::Fail; });
}

namespace {

struct Outcome {
  double measured = 0.0;
  bool extra_ok = true;  // conditions beyond measured <= tolerance
  std::string detail;
};

struct Check {
  std::string name;
  int criterion;
  Suite suite;
  double tolerance;
  std::function<Outcome(const GridParams&)> run;
};

// ---- corpora -------------------------------------------------------------

std::vector<FunctionGrid> hermite_functions(const AxisGrid& g, int count) {
  std::vector<FunctionGrid> h;
  FunctionGrid prev(g), cur(g);
  for (int j = 0; j < g.n(); ++j) cur[j] = std::pow(kPi, -0.25) * std::exp(-0.5 * g.x(j) * g.x(j));
  h.push_back(cur);
  for (int k = 0; k + 1 < count; ++k) {
    FunctionGrid next(g);
    for (int j = 0; j < g.n(); ++j)
      next[j] = std::sqrt(2.0 / (k + 1)) * g.x(j) * cur[j] - std::sqrt(static_cast<double>(k) / (k + 1)) * prev[j];
    prev = cur;
    cur = next;
    h.push_back(cur);
  }
  return h;
}

FunctionGrid random_band_limited(const AxisGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  FunctionGrid F(g, Domain::Frequency);
  int k[2];
  for (std::size_t f = 0; f < g.size(); ++f) {
    g.unflatten(f, k);
    bool inside = true;
    for (int a = 0; a < g.d(); ++a) inside = inside && std::abs(g.xi(k[a])) <= 0.25 * g.xi_max();
    if (inside) F[f] = cplx(nd(rng), nd(rng));
  }
  return inverse_fourier(F);
}

std::vector<FunctionGrid> stft_corpus(const AxisGrid& g) {
  std::vector<FunctionGrid> c;
  if (g.d() == 1) {
    for (auto [y, eta] : {std::pair{0.0, 0.0}, {1.5, -2.0}, {-2.0, 1.0}}) {
      const double yy[1] = {y}, ee[1] = {eta};
      c.push_back(gaussian_window(g, yy, ee));
    }
    for (auto& h : hermite_functions(g, 5)) c.push_back(h);
    c.push_back(random_band_limited(g, 11));
    c.push_back(random_band_limited(g, 12));
  } else {
    const double y[2] = {0.5, -1.0}, eta[2] = {1.0, 0.0};
    c.push_back(gaussian_window(g, y, eta));
    c.push_back(random_band_limited(g, 13));
  }
  return c;
}

// Gaussian windows; comparisons use the inner half of the box.
std::vector<FunctionGrid> operator_corpus(const AxisGrid& g) {
  std::vector<FunctionGrid> c;
  for (double y : {-2.0, 0.0, 1.5})
    for (double eta : {-2.0, 0.0, 2.0}) {
      const double yy[1] = {y}, ee[1] = {eta};
      c.push_back(gaussian_window(g, yy, ee));
    }
  return c;
}

// max over the corpus of max_{|x| <= L/2} |Au - Bu| / max(1, max |Bu|)
double corpus_gap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, const AxisGrid& g) {
  double worst = 0.0;
  for (const auto& u : operator_corpus(g)) {
    const Eigen::Map<const Eigen::VectorXcd> v(u.values.data(), static_cast<Eigen::Index>(u.size()));
    const Eigen::VectorXcd a = A * v, b = B * v;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.n(); ++j) {
      if (std::abs(g.x(j)) > 0.5 * g.L()) continue;
      num = std::max(num, std::abs(a[j] - b[j]));
      den = std::max(den, std::abs(b[j]));
    }
    worst = std::max(worst, num / std::max(1.0, den));
  }
  return worst;
}

PolySymbol mono(int k, int x) { return PolySymbol::monomial(MultiIndex({k}), MultiIndex({x})); }

std::vector<PolySymbol> monomials_1d(int max_degree) {
  std::vector<PolySymbol> out;
  for (int deg = 0; deg <= max_degree; ++deg)
    for (int k = 0; k <= deg; ++k) out.push_back(mono(k, deg - k));
  return out;
}

PolySymbol random_poly_2d(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  PolySymbol p(2);
  for (int deg = 0; deg <= degree; ++deg)
    for (const auto& k : MultiIndex::of_order(2, deg))
      for (const auto& x : MultiIndex::of_order(2, degree - deg))
        if (ud(rng) > 0.0) p.add_term(k, x, cplx(ud(rng), ud(rng)));
  return p;
}

// Polynomials of degree <= 8: all monomials in d = 1 and a few random ones in d = 2.
std::vector<PolySymbol> expansion_corpus() {
  std::vector<PolySymbol> c = monomials_1d(8);
  for (int deg = 2; deg <= 8; deg += 2) c.push_back(random_poly_2d(deg, 100 + deg));
  return c;
}

PhaseFunctionGrid smooth_random_symbol(const AxisGrid& g, std::uint64_t seed, bool real) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.5 * g.L(), 0.5 * g.L()), amp(-1.0, 1.0);
  struct Bump {
    double x, xi;
    cplx c;
  };
  std::vector<Bump> bumps;
  for (int i = 0; i < 4; ++i) bumps.push_back({pos(rng), pos(rng), cplx(amp(rng), real ? 0.0 : amp(rng))});
  PhaseFunctionGrid a(g);
  for (int j = 0; j < g.n(); ++j)
    for (int k = 0; k < g.n(); ++k) {
      cplx v = 0.0;
      for (const auto& b : bumps) {
        const double dx = g.x(j) - b.x, dk = g.xi(k) - b.xi;
        v += b.c * std::exp(-(dx * dx + dk * dk) / 4.5);
      }
      a.at(j, k) = v;
    }
  return a;
}

double sup_abs(const PhaseFunctionGrid& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

// d = 2 spot checks: n = 32 with dx = 0.375, so the window frame sum
// sum_y g(t - y)^2 dy differs from 1 by about e^{-pi^2 / dx^2}, below 1e-30.
AxisGrid spot_grid_2d() { return AxisGrid(32, 6.0, 2); }

// ---- checks --------------------------------------------------------------

Outcome stft_inversion(const GridParams& gp) {
  Outcome o;
  for (const AxisGrid& g : {gp.axis(), spot_grid_2d()}) {
    const double scale = std::pow(2.0 * kPi, -g.d());
    for (const auto& u : stft_corpus(g)) {
      const FunctionGrid back = scale * stft_adjoint(stft(u));
      o.measured = std::max(o.measured, l2_norm(back - u) / l2_norm(u));
    }
  }
  o.detail = "10 functions on d = 1, 2 on the d = 2 spot grid";
  return o;
}

Outcome stft_isometry(const GridParams& gp) {
  Outcome o;
  for (const AxisGrid& g : {gp.axis(), spot_grid_2d()})
    for (const auto& u : stft_corpus(g)) {
      const NormCheck c = stft_norm_check(u);
      o.measured = std::max(o.measured, std::abs(c.lhs - c.rhs) / c.rhs);
    }
  return o;
}

Outcome antiwick_vs_weyl(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  const std::vector<std::pair<std::string, PolySymbol>> corpus = {
      {"1", PolySymbol::constant(1, 1.0)}, {"x", x}, {"xi^2", xi * xi},
      {"x^2+xi^2", x * x + xi * xi}, {"x^4", x * x * x * x}, {"x xi", x * xi}};
  Outcome o;
  std::string worst;
  for (const auto& [name, a] : corpus) {
    const double e = verify_prop245(a.sample(g)).max_err;
    if (e >= o.measured) worst = name;
    o.measured = std::max(o.measured, e);
  }
  const double e = verify_prop245(smooth_random_symbol(g, 7, false)).max_err;
  if (e >= o.measured) worst = "random";
  o.measured = std::max(o.measured, e);
  o.detail = "worst symbol " + worst;
  return o;
}

Outcome positivity(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1), one = PolySymbol::constant(1, 1.0);
  Outcome o;
  for (const auto& a : {one, x * x, xi * xi, x * x + xi * xi, x * x * x * x + one}) {
    const PhaseFunctionGrid s = a.sample(g);
    const double lmin = min_eigenvalue_hermitian_part(anti_wick_matrix(s).m);
    o.measured = std::max(o.measured, std::max(0.0, -lmin) / (1.0 + sup_abs(s)));
  }
  o.detail = "max(0, -lambda_min) / (1 + max a)";
  return o;
}

Outcome norm_bound(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  double worst = 0.0;
  for (std::uint64_t seed = 21; seed < 26; ++seed) {
    const PhaseFunctionGrid a = smooth_random_symbol(g, seed, seed % 2 == 0);
    worst = std::max(worst, spectral_norm(anti_wick_matrix(a).m) / sup_abs(a));
  }
  Outcome o;
  o.measured = std::max(0.0, worst - 1.0);
  o.detail = "largest ||A_a|| / ||a||_inf = " + fmt(worst);
  return o;
}

Outcome oscillator(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  const Eigen::VectorXd ev = eigenvalues_hermitian_part(weyl(x * x + xi * xi, g).m);
  Outcome o;
  for (int k = 0; k < 8; ++k) o.measured = std::max(o.measured, std::abs(ev[k] - (2 * k + 1)));
  o.detail = "lowest 8 eigenvalues against 1, 3, ..., 15";
  return o;
}

Outcome aw_to_weyl(const GridParams&) {
  Outcome o;
  for (const auto& a : expansion_corpus()) {
    const FormalExpansion e = aw_to_weyl_terms(a, std::max(0, a.degree()) / 2);
    const PolySymbol lhs = expansion_partial_sum(e, e.size());
    const PolySymbol rhs = heat_quarter(a, +1);
    o.measured = std::max(o.measured, lhs.max_coeff_diff(rhs) / std::max(1.0, rhs.max_coeff()));
  }
  return o;
}

Outcome inverse_coeff(const GridParams&) {
  Outcome o;
  for (const auto& b : expansion_corpus()) {
    const PolySymbol a = inverse_aw_recursion(b, std::max(0, b.degree()) / 2).a;
    const PolySymbol back = heat_quarter(a, +1);
    o.measured = std::max(o.measured, back.max_coeff_diff(b) / std::max(1.0, b.max_coeff()));
  }
  return o;
}

Outcome inverse_matrix(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  Outcome o;
  for (const auto& b : {x * x + xi * xi, x * xi, x * x * x * x, x * x * xi * xi}) {
    const PolySymbol a = inverse_aw_recursion(b, std::max(0, b.degree()) / 2).a;
    o.measured = std::max(o.measured, corpus_gap(anti_wick_matrix(a.sample(g)).m, weyl(b, g).m, g));
  }
  o.detail = "windowed inputs, inner half";
  return o;
}

Outcome tau_change(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  Outcome o;
  for (const auto& a : monomials_1d(4))
    for (double t1 : {0.0, 0.5, 1.0})
      for (double t : {0.0, 0.5, 1.0}) {
        const PolySymbol b = tau_change_terms(a, Tau(t1), Tau(t));
        o.measured = std::max(o.measured, corpus_gap(op_tau(b, g, Tau(t)).m, op_tau(a, g, Tau(t1)).m, g));
      }
  return o;
}

// Kernel of x xi built at tau = 0 and read back at tau = 1/2: the mean offset from x xi
// on the inner half must be +i/2 and not -i/2.
Outcome tau_sign(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const PolySymbol a = PolySymbol::x(1) * PolySymbol::xi(1);
  const PhaseFunctionGrid r = symbol_from_kernel(kernel_from_symbol(a, g, Tau(0.0)), Tau(0.5));
  cplx mean = 0.0;
  int count = 0;
  for (int j = 0; j < g.n(); ++j)
    for (int k = 1; k < g.n(); ++k) {
      if (std::abs(g.x(j)) > 0.5 * g.L() || std::abs(g.xi(k)) > 0.5 * g.xi_max()) continue;
      mean += r.at(j, k) - a.eval(g.x(j), g.xi(k));
      ++count;
    }
  mean /= static_cast<double>(count);
  const cplx predicted = tau_change_terms(a, Tau(0.0), Tau(0.5)).coeff(MultiIndex({0}), MultiIndex({0}));
  Outcome o;
  o.measured = std::abs(mean - predicted);
  o.extra_ok = std::abs(mean - predicted) < std::abs(mean + predicted);
  o.detail = "mean offset " + fmt(mean.real()) + (mean.imag() < 0 ? " - " : " + ") + fmt(std::abs(mean.imag())) + "i";
  return o;
}

Outcome transpose(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  Outcome o;
  for (const auto& a : monomials_1d(4))
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      const Eigen::MatrixXcd lhs = op_tau(a, g, Tau(t)).m.transpose();
      const Eigen::MatrixXcd rhs = op_tau(a.reflect_xi(), g, Tau(1.0 - t)).m;
      o.measured = std::max(o.measured, max_abs(Eigen::MatrixXcd(lhs - rhs)));
    }
  o.detail = "entrywise";
  return o;
}

Outcome transpose_symbol(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  Outcome o;
  for (const auto& a : monomials_1d(4))
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      const Eigen::MatrixXcd At = op_tau(a, g, Tau(t)).m.transpose();
      o.measured = std::max(o.measured, corpus_gap(op_tau(transpose_terms(a, Tau(t)), g, Tau(t)).m, At, g));
    }
  return o;
}

Outcome compose(const GridParams& gp) {
  const AxisGrid g = gp.axis();
  const auto mons = monomials_1d(3);
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& a : mons) ops.push_back(op_tau(a, g, Tau(0.0)).m);
  Outcome o;
  for (std::size_t i = 0; i < mons.size(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j) {
      const Eigen::MatrixXcd prod = ops[i] * ops[j];
      const Eigen::MatrixXcd f = op_tau(compose_terms(mons[i], mons[j]), g, Tau(0.0)).m;
      o.measured = std::max(o.measured, corpus_gap(prod, f, g));
    }
  o.detail = "monomial pairs of degree <= 3";
  return o;
}

Outcome gaussconv(const GridParams&) {
  const std::vector<CompactDensity> corpus = {CompactDensity::indicator(-1.0, 1.0),
                                              CompactDensity::bump(-1.0, 1.0),
                                              CompactDensity::poly_bump(-1.0, 1.0, {1.0, 0.5, -0.25})};
  Outcome o;
  for (const auto& S : corpus)
    for (double s : {-2.0, -1.0, -0.25})
      for (int i = 0; i <= 20; ++i) {
        const double x[1] = {-5.0 + 0.5 * i};
        const cplx via = conv_gauss_via_laplace(S, s, x);
        const cplx direct = conv_gauss_direct(S, s, x);
        o.measured = std::max(o.measured, std::abs(via - direct) / (1.0 + std::abs(direct)));
      }
  return o;
}

Outcome osc_kernel(const GridParams&) {
  const AxisGrid g(256, 6.0, 2);
  FunctionGrid chi(g);
  int idx[2];
  for (std::size_t f = 0; f < g.size(); ++f) {
    g.unflatten(f, idx);
    const double x = g.x(idx[0]), y = g.x(idx[1]);
    chi[f] = std::exp(-(x * x + y * y)) * (1.0 + 0.5 * x - 0.25 * y);
  }
  const double deltas[] = {0.4, 0.2, 0.1, 0.05, 0.025};
  const auto xi = PolySymbol::xi(1);
  const std::vector<std::pair<std::string, SeparableSymbol>> corpus = {
      {"1", SeparableSymbol::from_poly(PolySymbol::constant(1, 1.0))},
      {"xi", SeparableSymbol::from_poly(xi)},
      {"example5", SeparableSymbol::example5(0.5, xi * xi)}};
  Outcome o;
  std::ostringstream detail;
  for (const auto& [name, b] : corpus) {
    const OscKernelReport r1 = oscillatory_kernel(b, chi, deltas);
    const OscKernelReport r2 = oscillatory_kernel(b, chi, deltas, Cutoff{0.5, 1.5});
    const double psi_gap = std::abs(r1.extrapolated - r2.extrapolated);
    o.measured = std::max({o.measured, r1.final_diff, r2.final_diff, psi_gap});
    if (!r1.cauchy_shrinking || !r2.cauchy_shrinking) {
      o.extra_ok = false;
      detail << name << ": Cauchy differences not shrinking; ";
    }
  }
  o.detail = detail.str().empty() ? "final differences and psi gap" : detail.str();
  return o;
}

Outcome weights(const GridParams&) {
  Outcome o;
  int failures = 0;
  std::ostringstream detail;
  for (double s : {1.5, 2.0, 3.0}) {
    const WeightSequence w = WeightSequence::gevrey(s);
    const ConditionReport rep = check_conditions(w);
    if (!rep.m1_ok || !rep.m2.holds || !rep.m3.holds) {
      ++failures;
      detail << "conditions fail for s=" << s << "; ";
    }
    for (double m : {0.5, 1.0, 2.0})
      if (!lemma69_check(w, m, 20)) {
        ++failures;
        detail << "quotient bound fails for s=" << s << " m=" << m << "; ";
      }
  }
  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[i] = 50.0 * i / 199.0;
  for (double s : {2.0, 3.0}) {
    const WeightSequence w = WeightSequence::gevrey(s);
    const Ultrapolynomial P(w, 1.0, 1, Ultrapolynomial::required_factors(w, 1.0, 1, 50.0));
    double k_found = 0.0;
    for (double k = 0.01; k <= 1024.0 && k_found == 0.0; k *= 2.0)
      if (verify_ultrapoly_bound(P, k, grid).ok) k_found = k;
    if (k_found == 0.0) {
      ++failures;
      detail << "no k <= 1024 gives the ultrapolynomial bound for s=" << s << "; ";
    } else {
      detail << "s=" << s << " bound holds from k=" << k_found << "; ";
    }
  }
  o.measured = failures;
  o.detail = detail.str();
  return o;
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"c01.stft_inversion", 1, Suite::Stft, tol::kStftInversion, stft_inversion},
      {"c02.stft_isometry", 2, Suite::Stft, tol::kStftIsometry, stft_isometry},
      {"c03.antiwick_vs_weyl", 3, Suite::Quant245, tol::kAntiWickWeyl, antiwick_vs_weyl},
      {"c04.aw_to_weyl_exact", 4, Suite::Expansion, tol::kAwToWeyl, aw_to_weyl},
      {"c05.inverse_coefficients", 5, Suite::Expansion, tol::kInverseCoeff, inverse_coeff},
      {"c05.inverse_matrix", 5, Suite::Expansion, tol::kInverseMatrix, inverse_matrix},
      {"c06.tau_change", 6, Suite::Tau, tol::kTauChange, tau_change},
      {"c06.tau_sign_oracle", 6, Suite::Tau, tol::kTauSign, tau_sign},
      {"c07.transpose_matrix", 7, Suite::Tau, tol::kTranspose, transpose},
      {"c07.transpose_symbol", 7, Suite::Tau, tol::kTransposeTerms, transpose_symbol},
      {"c08.composition", 8, Suite::Compose, tol::kCompose, compose},
      {"c09.positivity", 9, Suite::Quant245, tol::kPositivity, positivity},
      {"c10.norm_bound", 10, Suite::Quant245, tol::kNormBound, norm_bound},
      {"c11.harmonic_oscillator", 11, Suite::Quant245, tol::kOscillator, oscillator},
      {"c12.gauss_conv_laplace", 12, Suite::Gaussconv, tol::kGaussconv, gaussconv},
      {"c13.oscillatory_kernel", 13, Suite::Gaussconv, tol::kOscKernel, osc_kernel},
      {"c14.weight_sequences", 14, Suite::Weights, 0.0, weights},
  };
  return checks;
}

Report execute(const Check& c, const GridParams& gp) {
  Report r;
  r.name = c.name;
  r.criterion = c.criterion;
  r.tolerance = c.tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.run(gp);
    r.measured = o.measured;
    r.detail = o.detail;
    r.status = (o.extra_ok && o.measured <= c.tolerance) ? ReportStatus::Pass : ReportStatus::Fail;
  } catch (const std::exception& e) {
    r.status = ReportStatus::Fail;
    r.measured = std::numeric_limits<double>::infinity();
    r.detail = std::string("error: ") + e.what();
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<int> suite_criteria(Suite suite) {
  std::vector<int> out;
  for (const auto& c : registry())
    if (suite == Suite::All || c.suite == suite) out.push_back(c.criterion);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Report> run_verify(Suite suite, const VerifyOptions& opts) {
  (void)opts.grid.axis();
  if (opts.grid.d != 1) throw std::invalid_argument("verify runs on d = 1 grids; d = 2 spot checks are built in");
  std::vector<const Check*> selected;
  for (const auto& c : registry())
    if (suite == Suite::All || c.suite == suite) selected.push_back(&c);

  std::vector<Report> out;
  if (opts.parallel) {
    std::vector<std::future<Report>> jobs;
    for (const Check* c : selected)
      jobs.push_back(std::async(std::launch::async, [c, &opts] { return execute(*c, opts.grid); }));
    for (auto& j : jobs) out.push_back(j.get());
  } else {
    for (const Check* c : selected) out.push_back(execute(*c, opts.grid));
  }
  std::sort(out.begin(), out.end(), [](const Report& a, const Report& b) { return a.name < b.name; });
  return out;
}

std::string emit_report(const std::vector<Report>& reports, ReportFormat format, const GridParams& grid) {
  std::ostringstream head;
  head << defaults_banner() << " | run n=" << grid.n << " L=" << grid.L << " d=" << grid.d;
  if (format == ReportFormat::Json) {
    nlohmann::json j;
    j["header"] = head.str();
    j["pass"] = all_pass(reports);
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports)
      j["reports"].push_back({{"name", r.name},
                              {"criterion", r.criterion},
                              {"status", to_string(r.status)},
                              {"measured", std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json(nullptr)},
                              {"tolerance", r.tolerance},
                              {"runtime_ms", r.runtime_ms},
                              {"detail", r.detail}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# " << head.str() << "\n";
  os << std::left << std::setw(28) << "name" << std::setw(6) << "status" << std::right << std::setw(12)
     << "measured" << std::setw(12) << "tolerance" << std::setw(11) << "ms" << "  detail\n";
  for (const auto& r : reports)
    os << std::left << std::setw(28) << r.name << std::setw(6) << to_string(r.status) << std::right
       << std::setw(12) << fmt(r.measured) << std::setw(12) << fmt(r.tolerance) << std::setw(11)
       << std::fixed << std::setprecision(1) << r.runtime_ms << std::defaultfloat << "  " << r.detail << "\n";
  return os.str();
}

}  // namespace uwq
