#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace uwq {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform periodic grid on [-L, L)^d with n points per axis.
///
/// Positions x_j = -L + j dx. The dual frequency axis has spacing dxi = pi / L and
/// nodes xi_k = (k - n/2) dxi, so dx * dxi * n = 2 pi.
class AxisGrid {
public:
  AxisGrid(int n, double L, int d = 1);

  int n() const { return n_; }
  double L() const { return L_; }
  int d() const { return d_; }
  double dx() const { return 2.0 * L_ / n_; }
  double dxi() const { return kPi / L_; }
  double xi_max() const { return kPi * n_ / (2.0 * L_); }
  /// n^d
  std::size_t size() const { return size_; }
  double cell() const;      // dx^d
  double dual_cell() const; // dxi^d

  double x(int j) const { return -L_ + j * dx(); }
  double xi(int k) const { return (k - n_ / 2) * dxi(); }
  /// Wraps t into [-L, L).
  double wrap(double t) const;
  /// Axis indices of a flat row-major index.
  void unflatten(std::size_t flat, int* idx) const;
  std::size_t flatten(const int* idx) const;

  bool operator==(const AxisGrid& o) const { return n_ == o.n_ && L_ == o.L_ && d_ == o.d_; }

private:
  int n_;
  double L_;
  int d_;
  std::size_t size_;
};

enum class Domain { Position, Frequency };

/// Complex samples on AxisGrid, row-major over axes.
struct FunctionGrid {
  AxisGrid axis;
  std::vector<cplx> values;
  Domain domain = Domain::Position;

  explicit FunctionGrid(AxisGrid a, Domain dom = Domain::Position)
      : axis(a), values(a.size()), domain(dom) {}
  FunctionGrid(AxisGrid a, std::vector<cplx> v, Domain dom = Domain::Position);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

/// Samples a(x, xi) on the phase grid: index = xi_flat + n^d * x_flat.
struct PhaseFunctionGrid {
  AxisGrid xaxis;
  std::vector<cplx> values;

  explicit PhaseFunctionGrid(AxisGrid a) : xaxis(a), values(a.size() * a.size()) {}
  PhaseFunctionGrid(AxisGrid a, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
  std::size_t index(std::size_t x_flat, std::size_t xi_flat) const {
    return xi_flat + xaxis.size() * x_flat;
  }
  cplx& at(std::size_t x_flat, std::size_t xi_flat) { return values[index(x_flat, xi_flat)]; }
  const cplx& at(std::size_t x_flat, std::size_t xi_flat) const {
    return values[index(x_flat, xi_flat)];
  }
};

/// F(xi_k) = dx^d sum_j e^{-i x_j xi_k} u(x_j).
FunctionGrid fourier(const FunctionGrid& u);
/// u(x_j) = (2 pi)^{-d} dxi^d sum_k e^{i x_j xi_k} F(xi_k).
FunctionGrid inverse_fourier(const FunctionGrid& F);

/// G_{y,eta}(x) = pi^{-d/4} e^{i x eta} e^{-|x - y|^2 / 2}, with x - y taken periodically.
/// Centers with |y_i| > L/2 append a message to `warnings` when given.
FunctionGrid gaussian_window(const AxisGrid& axis, std::span<const double> y,
                             std::span<const double> eta,
                             std::vector<std::string>* warnings = nullptr);

/// dx^d sum_j u(x_j)
cplx quadrature(const FunctionGrid& u);
/// dx^d sum_j u_j conj(v_j)
cplx inner(const FunctionGrid& u, const FunctionGrid& v);
double l2_norm(const FunctionGrid& u);
/// (dx dxi)^d sum a conj(b) over the phase grid.
cplx inner(const PhaseFunctionGrid& a, const PhaseFunctionGrid& b);
double l2_norm(const PhaseFunctionGrid& a);

FunctionGrid operator+(const FunctionGrid& a, const FunctionGrid& b);
FunctionGrid operator-(const FunctionGrid& a, const FunctionGrid& b);
FunctionGrid operator*(cplx s, const FunctionGrid& a);
double max_abs_diff(const FunctionGrid& a, const FunctionGrid& b);
double max_abs(const FunctionGrid& a);

/// CSV: header `# n=<n> L=<L> d=<d>` then `index,re,im` rows.
void write_csv(std::ostream& os, const FunctionGrid& u);
void write_csv(std::ostream& os, const PhaseFunctionGrid& a);
FunctionGrid read_function_csv(std::istream& is);
PhaseFunctionGrid read_phase_csv(std::istream& is);

}  // namespace uwq
