#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "uwq/grid.hpp"

namespace uwq {

/// alpha = (alpha_1, ..., alpha_d), d in {1, 2}.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> parts);
  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(d, 0)); }
  static MultiIndex unit(int d, int axis, int k = 1);

  int d() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }
  int order() const;
  /// prod alpha_i!, exact in 64-bit integers up to 20!.
  long long factorial() const;
  bool dominated_by(const MultiIndex& o) const;  // alpha <= o componentwise

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  auto operator<=>(const MultiIndex&) const = default;

  /// All alpha with |alpha| = k in d dimensions, lexicographically descending in alpha_1.
  static std::vector<MultiIndex> of_order(int d, int k);

private:
  std::vector<int> parts_;
};

/// Monomial xi^kexp x^xexp.
struct Monomial {
  MultiIndex kexp;
  MultiIndex xexp;
  int degree() const { return kexp.order() + xexp.order(); }
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return kexp == o.kexp && xexp == o.xexp; }
};

/// Polynomial symbol sum c_{ab} xi^a x^b with complex coefficients.
class PolySymbol {
public:
  explicit PolySymbol(int d = 1) : d_(d) {}
  static PolySymbol constant(int d, std::complex<double> c);
  /// Coefficient c times xi^kexp x^xexp.
  static PolySymbol monomial(const MultiIndex& kexp, const MultiIndex& xexp, std::complex<double> c = 1.0);
  static PolySymbol xi(int d, int axis = 0);
  static PolySymbol x(int d, int axis = 0);

  int d() const { return d_; }
  const std::map<Monomial, std::complex<double>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero
  std::complex<double> coeff(const MultiIndex& kexp, const MultiIndex& xexp) const;
  void add_term(const MultiIndex& kexp, const MultiIndex& xexp, std::complex<double> c);

  PolySymbol& operator+=(const PolySymbol& o);
  PolySymbol& operator-=(const PolySymbol& o);
  PolySymbol& operator*=(std::complex<double> s);
  friend PolySymbol operator+(PolySymbol a, const PolySymbol& b) { return a += b; }
  friend PolySymbol operator-(PolySymbol a, const PolySymbol& b) { return a -= b; }
  friend PolySymbol operator*(std::complex<double> s, PolySymbol a) { return a *= s; }
  friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);

  /// a(x, -xi)
  PolySymbol reflect_xi() const;
  bool is_real() const;

  std::complex<double> eval(std::span<const double> x, std::span<const double> xi) const;
  std::complex<double> eval(double x, double xi) const;
  /// Samples on the phase grid of `axis`.
  PhaseFunctionGrid sample(const AxisGrid& axis) const;

  /// Drops coefficients with |c| <= tol.
  PolySymbol pruned(double tol) const;
  /// max |coeff difference| <= tol * max(1, max |coeff|).
  bool approx_equal(const PolySymbol& o, double tol) const;
  double max_coeff() const;
  double max_coeff_diff(const PolySymbol& o) const;

  /// Human readable, canonical term order, e.g. "1*xi^2 + 0.5".
  std::string to_string() const;

private:
  void check_dim(const MultiIndex& m) const;
  int d_;
  std::map<Monomial, std::complex<double>> terms_;
};

/// d_xi^alpha d_x^beta p, exact term-wise.
PolySymbol poly_derive(const PolySymbol& p, const MultiIndex& alpha, const MultiIndex& beta);
/// D_xi^alpha D_x^beta p with D = -i d.
PolySymbol poly_derive_D(const PolySymbol& p, const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace uwq
