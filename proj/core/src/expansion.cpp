#include "uwq/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uwq {

double gaussian_moment(int k) {
  if (k < 0) throw std::invalid_argument("gaussian_moment: negative order");
  if (k % 2) return 0.0;
  double m = 1.0;
  for (int j = 2; j <= k; j += 2) m *= 0.5 * (j - 1);
  return m;
}

double moment_coeff(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.d() != beta.d()) throw std::invalid_argument("moment_coeff: dimension mismatch");
  double c = 1.0;
  for (int i = 0; i < alpha.d(); ++i) c *= gaussian_moment(alpha[i]) * gaussian_moment(beta[i]);
  return c;
}

PolySymbol expansion_partial_sum(const FormalExpansion& e, int N) {
  if (N < 0 || N > e.size())
    throw std::out_of_range("expansion_partial_sum: N = " + std::to_string(N) + " exceeds " +
                            std::to_string(e.size()) + " stored terms");
  const int d = e.terms.empty() ? 1 : e.terms.front().d();
  PolySymbol s(d);
  for (int j = 0; j < N; ++j) s += e.terms[j];
  return s;
}

PolySymbol moment_derivative(const PolySymbol& a, int k) {
  const int d = a.d();
  PolySymbol r(d);
  for (int ka = 0; ka <= k; ++ka)
    for (const auto& alpha : MultiIndex::of_order(d, ka))
      for (const auto& beta : MultiIndex::of_order(d, k - ka)) {
        const double c = moment_coeff(alpha, beta);
        if (c == 0.0) continue;
        const double w = c / static_cast<double>(alpha.factorial() * beta.factorial());
        r += w * poly_derive(a, alpha, beta);
      }
  return r;
}

FormalExpansion aw_to_weyl_terms(const PolySymbol& a, int J, bool include_odd_orders) {
  if (J < 0) throw std::invalid_argument("aw_to_weyl_terms: J must be non-negative");
  FormalExpansion e;
  e.terms.push_back(a);
  for (int j = 1; j <= J; ++j) {
    PolySymbol p = moment_derivative(a, 2 * j);
    if (include_odd_orders) p += moment_derivative(a, 2 * j - 1);
    e.terms.push_back(std::move(p));
  }
  return e;
}

PolySymbol heat_quarter(const PolySymbol& a, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("heat_quarter: sign must be +1 or -1");
  const int d = a.d();
  auto laplacian = [d](const PolySymbol& p) {
    PolySymbol r(d);
    const MultiIndex z = MultiIndex::zero(d);
    for (int i = 0; i < d; ++i) {
      r += poly_derive(p, MultiIndex::unit(d, i, 2), z);
      r += poly_derive(p, z, MultiIndex::unit(d, i, 2));
    }
    return r;
  };
  PolySymbol result = a;
  PolySymbol term = a;
  for (int k = 1; !term.is_zero(); ++k) {
    term = (sign * 0.25 / k) * laplacian(term);
    result += term;
  }
  return result;
}

InverseRecursion inverse_aw_recursion(const PolySymbol& b, int J) {
  if (J < 0) throw std::invalid_argument("inverse_aw_recursion: J must be non-negative");
  const int d = b.d();
  // T_l lowers the degree by 2l, so nothing survives past k = deg / 2.
  const int K = std::max(0, b.degree()) / 2;
  const int jmax = std::min(J, K);
  InverseRecursion out;
  out.primed.assign(K + 1, std::vector<PolySymbol>(jmax + 1, PolySymbol(d)));
  out.primed[0][0] = b;
  for (int j = 1; j <= jmax; ++j)
    for (int k = j; k <= K; ++k) {
      PolySymbol acc(d);
      for (int l = 1; l <= k - j + 1; ++l) {
        const PolySymbol& prev = out.primed[k - l][j - 1];
        if (!prev.is_zero()) acc += moment_derivative(prev, 2 * l);
      }
      out.primed[k][j] = std::move(acc);
    }
  out.a = PolySymbol(d);
  for (int j = 0; j <= J; ++j) {
    PolySymbol bj(d);
    if (j <= jmax)
      for (int k = 0; k <= K; ++k) bj += out.primed[k][j];
    out.a += (j % 2 ? -1.0 : 1.0) * bj;
    out.bj.push_back(std::move(bj));
  }
  return out;
}

namespace {

// sum over alpha of w^{|alpha|} / alpha! d_xi^alpha f(d_x^alpha) with f applied per term.
template <class F>
PolySymbol alpha_series(const PolySymbol& a, int max_order, F&& term) {
  PolySymbol r(a.d());
  for (int k = 0; k <= max_order; ++k)
    for (const auto& alpha : MultiIndex::of_order(a.d(), k)) r += term(alpha);
  return r;
}

}  // namespace

PolySymbol tau_change_terms(const PolySymbol& a, Tau tau1, Tau tau) {
  const double w = tau1.value - tau.value;
  const int deg = std::max(0, a.degree());
  return alpha_series(a, deg / 2, [&](const MultiIndex& beta) {
    const double c = std::pow(w, beta.order()) / static_cast<double>(beta.factorial());
    return c * poly_derive(poly_derive_D(a, MultiIndex::zero(a.d()), beta), beta, MultiIndex::zero(a.d()));
  });
}

PolySymbol transpose_terms(const PolySymbol& a, Tau tau) {
  const double w = 1.0 - 2.0 * tau.value;
  const int deg = std::max(0, a.degree());
  const MultiIndex z = MultiIndex::zero(a.d());
  PolySymbol q = alpha_series(a, deg / 2, [&](const MultiIndex& alpha) {
    const int k = alpha.order();
    const double c = std::pow(-w, k) / static_cast<double>(alpha.factorial());
    return c * poly_derive(poly_derive_D(a, z, alpha), alpha, z);
  });
  return q.reflect_xi();
}

PolySymbol compose_terms(const PolySymbol& a, const PolySymbol& b) {
  if (a.d() != b.d()) throw std::invalid_argument("compose_terms: dimension mismatch");
  const MultiIndex z = MultiIndex::zero(a.d());
  const int max_order = std::max(0, std::min(a.degree(), b.degree()));
  return alpha_series(a, max_order, [&](const MultiIndex& alpha) {
    const PolySymbol da = poly_derive(a, alpha, z);
    if (da.is_zero()) return PolySymbol(a.d());
    return (1.0 / static_cast<double>(alpha.factorial())) * (da * poly_derive_D(b, z, alpha));
  });
}

double gamma_norm_estimate(const PolySymbol& a, const ClassParams& params, double box, int samples) {
  if (!(params.rho > 0.0 && params.rho <= 1.0)) throw std::invalid_argument("ClassParams: rho must lie in (0, 1]");
  if (!(params.h > 0.0) || !(params.m > 0.0)) throw std::invalid_argument("ClassParams: h and m must be positive");
  if (!(box > 0.0) || samples < 2) throw std::invalid_argument("gamma_norm_estimate: bad sampling box");
  if (a.is_zero()) return 0.0;
  const int d = a.d();
  if (d != 1 && d != 2) throw std::invalid_argument("gamma_norm_estimate: d must be 1 or 2");

  std::vector<double> axis(samples);
  for (int i = 0; i < samples; ++i) axis[i] = -box + 2.0 * box * i / (samples - 1);

  // e^{-M(m t)} on |t| for the sampled coordinates.
  auto assoc_log = [&](double t) {
    if (t == 0.0) return 0.0;
    const AssocValue v = assoc_fn(params.weight, params.m * t);
    if (v.saturated)
      throw std::overflow_error("gamma_norm_estimate: associated function saturated at rho = " +
                                std::to_string(params.m * t));
    return v.value;
  };

  const int deg = a.degree();
  double best = 0.0;
  std::vector<int> idx(2 * d, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(samples, 2 * d));
  for (int ka = 0; ka <= deg; ++ka)
    for (int kb = 0; ka + kb <= deg; ++kb)
      for (const auto& alpha : MultiIndex::of_order(d, ka))
        for (const auto& beta : MultiIndex::of_order(d, kb)) {
          const PolySymbol p = poly_derive_D(a, alpha, beta);
          if (p.is_zero()) continue;
          const double log_den = (ka + kb) * std::log(params.h) +
                                 params.rho * (params.weight.log_value(ka) + params.weight.log_value(kb));
          for (std::size_t f = 0; f < total; ++f) {
            std::size_t rem = f;
            for (int c = 2 * d - 1; c >= 0; --c) {
              idx[c] = static_cast<int>(rem % samples);
              rem /= samples;
            }
            double x[2], xi[2], r2 = 1.0, nx = 0.0, nxi = 0.0;
            for (int c = 0; c < d; ++c) {
              x[c] = axis[idx[c]];
              xi[c] = axis[idx[d + c]];
              r2 += x[c] * x[c] + xi[c] * xi[c];
              nx += x[c] * x[c];
              nxi += xi[c] * xi[c];
            }
            const double v = std::abs(p.eval(std::span<const double>(x, d), std::span<const double>(xi, d)));
            if (v == 0.0) continue;
            const double lg = std::log(v) + 0.5 * params.rho * (ka + kb) * std::log(r2) -
                              assoc_log(std::sqrt(nxi)) - assoc_log(std::sqrt(nx)) - log_den;
            best = std::max(best, std::exp(lg));
          }
        }
  return best;
}

}  // namespace uwq
