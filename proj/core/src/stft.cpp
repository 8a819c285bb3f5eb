#include "uwq/stft.hpp"

#include <cmath>
#include <stdexcept>

#include "uwq/fft.hpp"

namespace uwq {

std::vector<double> window_table(const AxisGrid& axis) {
  std::vector<double> g(axis.n());
  const double c = std::pow(kPi, -0.25);
  for (int k = 0; k < axis.n(); ++k) {
    const double r = axis.wrap(k * axis.dx());
    g[k] = c * std::exp(-0.5 * r * r);
  }
  return g;
}

namespace {

// Window value G_0(t - y) for flat indices on a d-dimensional grid.
struct Window {
  const AxisGrid& axis;
  std::vector<double> table;

  explicit Window(const AxisGrid& a) : axis(a), table(window_table(a)) {}

  double operator()(std::size_t t, std::size_t y) const {
    const int n = axis.n();
    double v = 1.0;
    for (int a = 0; a < axis.d(); ++a) {
      const int ti = static_cast<int>(t % n), yi = static_cast<int>(y % n);
      v *= table[((ti - yi) % n + n) % n];
      t /= n;
      y /= n;
    }
    return v;
  }
};

std::vector<int> axes_of(const AxisGrid& g) {
  std::vector<int> a(g.d());
  for (int i = 0; i < g.d(); ++i) a[i] = i;
  return a;
}

}  // namespace

PhaseFunctionGrid stft(const FunctionGrid& u) {
  if (u.domain != Domain::Position) throw std::invalid_argument("stft: input must be in position domain");
  const AxisGrid& ax = u.axis;
  const std::size_t N = ax.size();
  const Window g(ax);
  const std::vector<int> shape(ax.d(), ax.n());
  const std::vector<int> axes = axes_of(ax);
  PhaseFunctionGrid out(ax);
  std::vector<cplx> buf(N);
  const double cell = ax.cell();
  for (std::size_t y = 0; y < N; ++y) {
    for (std::size_t t = 0; t < N; ++t) buf[t] = u[t] * g(t, y);
    fft::centered_dft(buf, shape, axes, -1);
    for (std::size_t k = 0; k < N; ++k) out.at(y, k) = cell * buf[k];
  }
  return out;
}

FunctionGrid stft_adjoint(const PhaseFunctionGrid& F) {
  const AxisGrid& ax = F.xaxis;
  const std::size_t N = ax.size();
  const Window g(ax);
  const std::vector<int> shape(ax.d(), ax.n());
  const std::vector<int> axes = axes_of(ax);
  FunctionGrid out(ax);
  std::vector<cplx> buf(N);
  // (2 pi)^d dy^d (dxi / 2 pi)^d = (dy dxi)^d
  const double scale = ax.cell() * ax.dual_cell();
  for (std::size_t y = 0; y < N; ++y) {
    for (std::size_t k = 0; k < N; ++k) buf[k] = F.at(y, k);
    fft::centered_dft(buf, shape, axes, +1);
    for (std::size_t t = 0; t < N; ++t) out[t] += scale * g(t, y) * buf[t];
  }
  return out;
}

NormCheck stft_norm_check(const FunctionGrid& u) {
  NormCheck c;
  c.lhs = l2_norm(stft(u));
  c.rhs = std::pow(2.0 * kPi, 0.5 * u.axis.d()) * l2_norm(u);
  return c;
}

}  // namespace uwq
