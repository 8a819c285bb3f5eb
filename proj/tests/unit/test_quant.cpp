#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "uwq/expansion.hpp"
#include "uwq/quant.hpp"
#include "uwq/stft.hpp"

using namespace uwq;

namespace {

const AxisGrid kGrid(128, 10.0);

FunctionGrid plane_wave(const AxisGrid& g, int k) {
  FunctionGrid u(g);
  for (int j = 0; j < g.n(); ++j) u[j] = std::polar(1.0, g.xi(k) * g.x(j));
  return u;
}

// exp(-x^2/4 - xi^2/4)(1 + 0.3x + 0.2i xi): decays below 1e-10 at the box edges.
PhaseFunctionGrid band_limited_symbol(const AxisGrid& g) {
  PhaseFunctionGrid a(g);
  for (int j = 0; j < g.n(); ++j)
    for (int k = 0; k < g.n(); ++k) {
      const double x = g.x(j), xi = g.xi(k);
      a.at(j, k) = std::exp(-0.25 * (x * x + xi * xi)) * cplx(1 + 0.3 * x, 0.2 * xi);
    }
  return a;
}

double max_diff(const PhaseFunctionGrid& a, const PhaseFunctionGrid& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

}  // namespace

TEST(Quant, XiIsSpectralDerivative) {
  const auto xi = PolySymbol::xi(1);
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const OperatorMatrix op = op_tau(xi.sample(kGrid), Tau(t));
    const OperatorMatrix pop = op_tau(xi, kGrid, Tau(t));
    for (int k : {1, 30, 64, 100, 127}) {
      const FunctionGrid u = plane_wave(kGrid, k);
      const FunctionGrid expected = cplx(kGrid.xi(k)) * u;
      EXPECT_LT(max_abs_diff(op.apply(u), expected), 1e-10) << "tau=" << t << " k=" << k;
      EXPECT_LT(max_abs_diff(pop.apply(u), expected), 1e-10) << "tau=" << t << " k=" << k;
    }
  }
}

TEST(Quant, XIsMultiplication) {
  const OperatorMatrix op = op_tau(PolySymbol::x(1), kGrid, Tau(0.5));
  const double y[1] = {1.0}, eta[1] = {-1.0};
  const FunctionGrid u = gaussian_window(kGrid, y, eta);
  FunctionGrid expected(kGrid);
  for (int j = 0; j < kGrid.n(); ++j) expected[j] = kGrid.x(j) * u[j];
  EXPECT_LT(max_abs_diff(op.apply(u), expected), 1e-12);
}

TEST(Quant, TauMustBeFinite) {
  EXPECT_THROW((void)Tau(std::nan("")), std::invalid_argument);
  EXPECT_THROW((void)Tau(std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_NO_THROW((void)Tau(1.5));
  EXPECT_EQ(Tau::weyl().value, 0.5);
}

TEST(Quant, KernelRoundTripBandLimited) {
  const PhaseFunctionGrid a = band_limited_symbol(kGrid);
  for (double t : {0.0, 0.25, 0.5, 1.0})
    EXPECT_LT(max_diff(symbol_from_kernel(kernel_from_symbol(a, Tau(t)), Tau(t)), a), 1e-9) << "tau=" << t;
}

TEST(Quant, KernelRoundTripConstant) {
  const PhaseFunctionGrid one = PolySymbol::constant(1, 1.0).sample(kGrid);
  EXPECT_LT(max_diff(symbol_from_kernel(kernel_from_symbol(one, Tau(0.5)), Tau(0.5)), one), 1e-10);
  const auto pk = kernel_from_symbol(PolySymbol::constant(1, 1.0), kGrid, Tau(0.5));
  EXPECT_LT(max_diff(symbol_from_kernel(pk, Tau(0.5)), one), 1e-10);
}

// The Nyquist column k = 0 stores the average over +-xi_N and is skipped.
TEST(Quant, KernelRoundTripXXiInnerHalf) {
  const auto a = PolySymbol::x(1) * PolySymbol::xi(1);
  const PhaseFunctionGrid r = symbol_from_kernel(kernel_from_symbol(a, kGrid, Tau(0.5)), Tau(0.5));
  double e = 0.0;
  for (int j = 32; j < 96; ++j)
    for (int k = 1; k < kGrid.n(); ++k) e = std::max(e, std::abs(r.at(j, k) - a.eval(kGrid.x(j), kGrid.xi(k))));
  EXPECT_LT(e, 1e-9);
}

// Reading a tau = 0 kernel at tau = 1/2 recovers x xi + i/2 on average; this pins
// the sign of the tau-change expansion.
TEST(Quant, TauChangeSignOracle) {
  const auto a = PolySymbol::x(1) * PolySymbol::xi(1);
  const PhaseFunctionGrid r = symbol_from_kernel(kernel_from_symbol(a, kGrid, Tau(0.0)), Tau(0.5));
  cplx mean = 0.0;
  int count = 0;
  for (int j = 32; j < 96; ++j)
    for (int k = 32; k < 96; ++k) {
      mean += r.at(j, k) - a.eval(kGrid.x(j), kGrid.xi(k));
      ++count;
    }
  mean /= static_cast<double>(count);
  EXPECT_NEAR(mean.real(), 0.0, 1e-3);
  EXPECT_NEAR(mean.imag(), 0.5, 1e-3);
  const auto b = tau_change_terms(a, Tau(0.0), Tau(0.5));
  EXPECT_NEAR(std::abs(b.coeff(MultiIndex({0}), MultiIndex({0})) - cplx(0.0, 0.5)), 0.0, 1e-15);
}

TEST(Quant, WeylOfRealSymbolIsHermitian) {
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  const auto a = x * x * xi + xi * x * x * x;
  const auto m = weyl(a, kGrid).m;
  EXPECT_LT(hermitian_defect(m), 1e-12 * max_abs(m));
  PhaseFunctionGrid real = band_limited_symbol(kGrid);
  for (auto& v : real.values) v = v.real();
  const auto mg = weyl(real).m;
  EXPECT_LT(hermitian_defect(mg), 1e-13 * max_abs(mg));
}

TEST(Quant, HarmonicOscillatorSpectrum) {
  const AxisGrid g(128, 8.0);
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  for (const auto& ev : {eigenvalues_hermitian_part(weyl(x * x + xi * xi, g).m),
                         eigenvalues_hermitian_part(weyl((x * x + xi * xi).sample(g)).m)})
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(ev[k], 2 * k + 1, 1e-6);
}

TEST(Quant, AntiWickDirectMatchesMatrix) {
  const AxisGrid g(64, 8.0);
  const PhaseFunctionGrid a = band_limited_symbol(g);
  const double y[1] = {0.5}, eta[1] = {1.0};
  const FunctionGrid u = gaussian_window(g, y, eta);
  EXPECT_LT(max_abs_diff(anti_wick_direct(a, u), anti_wick_matrix(a).apply(u)), 1e-13);
}

TEST(Quant, AntiWickOfOneIsIdentity) {
  const AxisGrid g(64, 8.0);
  const auto m = anti_wick_matrix(PolySymbol::constant(1, 1.0).sample(g)).m;
  EXPECT_LT(max_abs(Eigen::MatrixXcd(m - Eigen::MatrixXcd::Identity(g.n(), g.n()))), 1e-13);
}

// Gaussian smoothing of a polynomial is exp(Delta/4) of it, away from the box edges.
TEST(Quant, GaussSmoothMatchesHeatFlow) {
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  const auto a = x * x * xi * xi + x * xi;
  const PhaseFunctionGrid s = gauss_smooth(a.sample(kGrid));
  const auto h = heat_quarter(a, +1);
  double e = 0.0;
  for (int j = 32; j < 96; ++j)
    for (int k = 32; k < 96; ++k) {
      const cplx v = h.eval(kGrid.x(j), kGrid.xi(k));
      e = std::max(e, std::abs(s.at(j, k) - v) / std::max(1.0, std::abs(v)));
    }
  EXPECT_LT(e, 1e-11);
}

TEST(Quant, AntiWickEqualsWeylOfSmoothed) {
  const AxisGrid g(64, 8.0);
  EXPECT_LT(verify_prop245(band_limited_symbol(g)).max_err, 1e-10);
}

TEST(Quant, PositivityAndNormBound) {
  const AxisGrid g(64, 8.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  PhaseFunctionGrid a(g);
  for (auto& v : a.values) v = ud(rng);
  const auto m = anti_wick_matrix(a).m;
  EXPECT_GT(min_eigenvalue_hermitian_part(m), -1e-12);
  EXPECT_LE(spectral_norm(m), 1.0 + 1e-12);
}

TEST(Quant, WeightedKernelRejected) {
  KernelMatrix K = kernel_from_symbol(PolySymbol::constant(1, 1.0), AxisGrid(16, 2.0), Tau(0.0));
  K.weighted = true;
  EXPECT_THROW(operator_matrix(K), std::invalid_argument);
  EXPECT_THROW(symbol_from_kernel(K, Tau(0.0)), std::invalid_argument);
}

TEST(Quant, TransposeMatrixIdentity) {
  const auto x = PolySymbol::x(1), xi = PolySymbol::xi(1);
  const auto a = x * x * xi + xi * xi * xi;
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const Eigen::MatrixXcd lhs = op_tau(a, kGrid, Tau(t)).m.transpose();
    const Eigen::MatrixXcd rhs = op_tau(a.reflect_xi(), kGrid, Tau(1 - t)).m;
    EXPECT_LT(max_abs(Eigen::MatrixXcd(lhs - rhs)), 1e-9);
  }
}
