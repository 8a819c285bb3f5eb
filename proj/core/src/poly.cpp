#include "uwq/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace uwq {

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty() || parts_.size() > 2) throw std::invalid_argument("MultiIndex: d must be 1 or 2");
  for (int p : parts_)
    if (p < 0) throw std::invalid_argument("MultiIndex: negative component");
}

MultiIndex MultiIndex::unit(int d, int axis, int k) {
  std::vector<int> v(d, 0);
  v.at(axis) = k;
  return MultiIndex(std::move(v));
}

int MultiIndex::order() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

long long MultiIndex::factorial() const {
  long long f = 1;
  for (int p : parts_) {
    if (p > 20) throw std::overflow_error("MultiIndex: factorial beyond 20!");
    for (int k = 2; k <= p; ++k) f *= k;
  }
  return f;
}

bool MultiIndex::dominated_by(const MultiIndex& o) const {
  for (int i = 0; i < d(); ++i)
    if (parts_[i] > o.parts_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (d() != o.d()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> v(parts_);
  for (int i = 0; i < d(); ++i) v[i] += o.parts_[i];
  return MultiIndex(std::move(v));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (d() != o.d()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> v(parts_);
  for (int i = 0; i < d(); ++i) v[i] -= o.parts_[i];
  return MultiIndex(std::move(v));
}

std::vector<MultiIndex> MultiIndex::of_order(int d, int k) {
  std::vector<MultiIndex> out;
  if (d == 1) {
    out.emplace_back(std::vector<int>{k});
  } else {
    for (int a = k; a >= 0; --a) out.emplace_back(std::vector<int>{a, k - a});
  }
  return out;
}

bool Monomial::operator<(const Monomial& o) const {
  const int da = degree(), db = o.degree();
  if (da != db) return da > db;
  if (kexp != o.kexp) return kexp > o.kexp;
  return xexp > o.xexp;
}

// ---- PolySymbol ----

void PolySymbol::check_dim(const MultiIndex& m) const {
  if (m.d() != d_) throw std::invalid_argument("PolySymbol: multi-index dimension mismatch");
}

PolySymbol PolySymbol::constant(int d, std::complex<double> c) {
  PolySymbol p(d);
  p.add_term(MultiIndex::zero(d), MultiIndex::zero(d), c);
  return p;
}

PolySymbol PolySymbol::monomial(const MultiIndex& kexp, const MultiIndex& xexp, std::complex<double> c) {
  PolySymbol p(kexp.d());
  p.add_term(kexp, xexp, c);
  return p;
}

PolySymbol PolySymbol::xi(int d, int axis) {
  return monomial(MultiIndex::unit(d, axis), MultiIndex::zero(d));
}

PolySymbol PolySymbol::x(int d, int axis) {
  return monomial(MultiIndex::zero(d), MultiIndex::unit(d, axis));
}

int PolySymbol::degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.degree());
  return deg;
}

std::complex<double> PolySymbol::coeff(const MultiIndex& kexp, const MultiIndex& xexp) const {
  auto it = terms_.find(Monomial{kexp, xexp});
  return it == terms_.end() ? std::complex<double>{} : it->second;
}

void PolySymbol::add_term(const MultiIndex& kexp, const MultiIndex& xexp, std::complex<double> c) {
  check_dim(kexp);
  check_dim(xexp);
  if (c == 0.0) return;
  Monomial m{kexp, xexp};
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

PolySymbol& PolySymbol::operator+=(const PolySymbol& o) {
  if (o.d_ != d_) throw std::invalid_argument("PolySymbol: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m.kexp, m.xexp, c);
  return *this;
}

PolySymbol& PolySymbol::operator-=(const PolySymbol& o) {
  if (o.d_ != d_) throw std::invalid_argument("PolySymbol: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m.kexp, m.xexp, -c);
  return *this;
}

PolySymbol& PolySymbol::operator*=(std::complex<double> s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  if (a.d() != b.d()) throw std::invalid_argument("PolySymbol: dimension mismatch");
  PolySymbol r(a.d());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma.kexp + mb.kexp, ma.xexp + mb.xexp, ca * cb);
  return r;
}

PolySymbol PolySymbol::reflect_xi() const {
  PolySymbol r(d_);
  for (const auto& [m, c] : terms_) r.add_term(m.kexp, m.xexp, (m.kexp.order() % 2) ? -c : c);
  return r;
}

bool PolySymbol::is_real() const {
  for (const auto& [m, c] : terms_)
    if (c.imag() != 0.0) return false;
  return true;
}

std::complex<double> PolySymbol::eval(std::span<const double> x, std::span<const double> xi) const {
  if (static_cast<int>(x.size()) != d_ || static_cast<int>(xi.size()) != d_)
    throw std::invalid_argument("PolySymbol::eval: point dimension mismatch");
  std::complex<double> s = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = 1.0;
    for (int i = 0; i < d_; ++i) v *= std::pow(xi[i], m.kexp[i]) * std::pow(x[i], m.xexp[i]);
    s += c * v;
  }
  return s;
}

std::complex<double> PolySymbol::eval(double x, double xi) const {
  return eval(std::span<const double>(&x, 1), std::span<const double>(&xi, 1));
}

PhaseFunctionGrid PolySymbol::sample(const AxisGrid& axis) const {
  if (axis.d() != d_) throw std::invalid_argument("PolySymbol::sample: dimension mismatch");
  PhaseFunctionGrid a(axis);
  const std::size_t N = axis.size();
  int ix[2], ik[2];
  double x[2], xi[2];
  for (std::size_t i = 0; i < N; ++i) {
    axis.unflatten(i, ix);
    for (int k = 0; k < d_; ++k) x[k] = axis.x(ix[k]);
    for (std::size_t j = 0; j < N; ++j) {
      axis.unflatten(j, ik);
      for (int k = 0; k < d_; ++k) xi[k] = axis.xi(ik[k]);
      a.at(i, j) = eval(std::span<const double>(x, d_), std::span<const double>(xi, d_));
    }
  }
  return a;
}

PolySymbol PolySymbol::pruned(double tol) const {
  PolySymbol r(d_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(m, c);
  return r;
}

double PolySymbol::max_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double PolySymbol::max_coeff_diff(const PolySymbol& o) const {
  PolySymbol diff = *this - o;
  return diff.max_coeff();
}

bool PolySymbol::approx_equal(const PolySymbol& o, double tol) const {
  const double scale = std::max({1.0, max_coeff(), o.max_coeff()});
  return max_coeff_diff(o) <= tol * scale;
}

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_coeff(std::complex<double> c) {
  if (c.imag() == 0.0) return fmt_num(c.real());
  if (c.real() == 0.0) return fmt_num(c.imag()) + "i";
  return "(" + fmt_num(c.real()) + (c.imag() < 0 ? "" : "+") + fmt_num(c.imag()) + "i)";
}

std::string fmt_var(const char* name, const MultiIndex& e) {
  std::string s;
  for (int i = 0; i < e.d(); ++i) {
    if (e[i] == 0) continue;
    s += "*";
    s += name;
    if (e.d() > 1) s += std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string PolySymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += fmt_coeff(c) + fmt_var("xi", m.kexp) + fmt_var("x", m.xexp);
  }
  return s;
}

PolySymbol poly_derive(const PolySymbol& p, const MultiIndex& alpha, const MultiIndex& beta) {
  PolySymbol r(p.d());
  for (const auto& [m, c] : p.terms()) {
    if (!alpha.dominated_by(m.kexp) || !beta.dominated_by(m.xexp)) continue;
    double f = 1.0;
    for (int i = 0; i < p.d(); ++i) {
      for (int k = 0; k < alpha[i]; ++k) f *= m.kexp[i] - k;
      for (int k = 0; k < beta[i]; ++k) f *= m.xexp[i] - k;
    }
    r.add_term(m.kexp - alpha, m.xexp - beta, c * f);
  }
  return r;
}

PolySymbol poly_derive_D(const PolySymbol& p, const MultiIndex& alpha, const MultiIndex& beta) {
  static const std::complex<double> minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return minus_i_pow[(alpha.order() + beta.order()) % 4] * poly_derive(p, alpha, beta);
}

}  // namespace uwq
