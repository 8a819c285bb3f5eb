#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "uwq/gaussconv.hpp"

using namespace uwq;

namespace {

constexpr double kPiD = 3.14159265358979323846;

// int_{-1}^{1} e^{s (x - y)^2} dy for s < 0
double indicator_conv(double s, double x) {
  const double r = std::sqrt(-s);
  return 0.5 * std::sqrt(kPiD / -s) * (std::erf(r * (x + 1)) - std::erf(r * (x - 1)));
}

}  // namespace

TEST(Gaussconv, LaplaceOfIndicator) {
  const auto S = CompactDensity::indicator(-1.0, 1.0);
  EXPECT_NEAR(std::abs(laplace(S, 0.0) - 2.0), 0.0, 1e-13);
  for (double z : {-3.0, -0.5, 0.7, 2.0}) EXPECT_NEAR(laplace(S, z).real(), 2 * std::sinh(z) / z, 1e-12);
}

// L(S)(i eta) is the Fourier transform of the zero-extended density.
TEST(Gaussconv, LaplaceOnImaginaryAxisIsFourier) {
  const auto S = CompactDensity::indicator(-1.0, 1.0);
  for (double eta : {0.3, 1.0, 4.0}) EXPECT_NEAR(std::abs(laplace(S, cplx(0, eta)) - 2 * std::sin(eta) / eta), 0.0, 1e-10);
}

TEST(Gaussconv, LaplaceCauchyRiemann) {
  const auto S = CompactDensity::poly_bump(-1.0, 1.0, {1.0, 0.5, -0.25});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  const double h = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const cplx z(ud(rng), ud(rng));
    const cplx dx = (laplace(S, z + h) - laplace(S, z - h)) / (2 * h);
    const cplx dy = (laplace(S, z + cplx(0, h)) - laplace(S, z - cplx(0, h))) / (2 * h);
    const double scale = std::max(1.0, std::abs(laplace(S, z)));
    EXPECT_LT(std::abs(dx - dy / cplx(0, 1)), 1e-6 * scale);
  }
}

TEST(Gaussconv, ConvolutionIdentity) {
  const auto S = CompactDensity::indicator(-1.0, 1.0);
  for (double s : {-2.0, -1.0, -0.25})
    for (double x = -5.0; x <= 5.0; x += 0.5) {
      const double xs[1] = {x};
      const double exact = indicator_conv(s, x);
      EXPECT_NEAR(conv_gauss_direct(S, s, xs).real(), exact, 1e-10 * (1 + exact));
      EXPECT_NEAR(conv_gauss_via_laplace(S, s, xs).real(), exact, 1e-9 * (1 + exact));
    }
}

TEST(Gaussconv, ConvolutionTwoDimensional) {
  const auto S = CompactDensity::bump(-1.0, 1.0, 2);
  const double x[2] = {0.5, -1.5};
  const cplx a = conv_gauss_via_laplace(S, -0.5, x), b = conv_gauss_direct(S, -0.5, x);
  EXPECT_LT(std::abs(a - b), 1e-8 * (1 + std::abs(b)));
}

TEST(Gaussconv, ParseDensity) {
  EXPECT_EQ(parse_density("indicator:-1:1").kind(), DensityKind::Indicator);
  EXPECT_EQ(parse_density("bump:0:2").kind(), DensityKind::GaussianBump);
  const auto p = parse_density("polybump:-1:1:1,2");
  EXPECT_EQ(p.kind(), DensityKind::PolyTimesBump);
  const double x[1] = {0.5};
  const double u = 0.5;
  EXPECT_NEAR(std::abs(p(x) - (1 + 2 * 0.5) * std::exp(1 - 1 / (1 - u * u))), 0.0, 1e-14);
  const double outside[1] = {1.5};
  EXPECT_EQ(p(outside), cplx(0.0));
  EXPECT_THROW(parse_density("ball:0:1"), std::invalid_argument);
  EXPECT_THROW(parse_density("indicator:1:-1"), std::invalid_argument);
}

TEST(Gaussconv, BStarDiagnostic) {
  const double ks[] = {0.5, 1.0, 2.0};
  // Gaussian envelope e^{-x^2} dominates e^{-0.5 x^2} cosh(k x)
  const auto good = bstar_diagnostic([](double r) { return -r * r; }, -0.5, ks, 12.0);
  EXPECT_TRUE(good.all_pass());
  // e^{+0.5 x^2} growth with no decay is not integrable
  const auto bad = bstar_diagnostic([](double) { return 0.0; }, 0.5, ks, 12.0);
  EXPECT_FALSE(bad.all_pass());
}

TEST(Gaussconv, Example5ReducesForConstantP) {
  const auto one = PolySymbol::constant(1, 1.0);
  const double x[1] = {1.2}, xi[1] = {-0.7};
  const double l = 0.5;
  EXPECT_NEAR(std::abs(example5_symbol(l, one, x, xi) - std::pow(1 - l, -0.5) * std::exp(l * 1.44 / (1 - l))), 0.0, 1e-12);
  const auto xi2 = PolySymbol::xi(1) * PolySymbol::xi(1);
  EXPECT_NEAR(std::abs(example5_symbol(l, xi2, x, xi) - std::pow(1 - l, -0.5) * std::exp(l * 1.44 / (1 - l)) * (0.49 + 0.5)), 0.0, 1e-12);
}

TEST(Gaussconv, CutoffShape) {
  const Cutoff psi;
  EXPECT_EQ(psi(0.0), 1.0);
  EXPECT_EQ(psi(1.0), 1.0);
  EXPECT_EQ(psi(2.0), 0.0);
  EXPECT_GT(psi(1.5), 0.0);
  EXPECT_LT(psi(1.5), 1.0);
  for (double t = 1.0; t < 2.0; t += 0.01) EXPECT_GE(psi(t), psi(t + 0.01));
}

class OscKernel : public ::testing::Test {
protected:
  // chi = e^{-x^2 - y^2} (1 + x/2 - y/4)
  static FunctionGrid chi() {
    const AxisGrid g(256, 6.0, 2);
    FunctionGrid c(g);
    int idx[2];
    for (std::size_t f = 0; f < g.size(); ++f) {
      g.unflatten(f, idx);
      const double x = g.x(idx[0]), y = g.x(idx[1]);
      c[f] = std::exp(-x * x - y * y) * (1 + 0.5 * x - 0.25 * y);
    }
    return c;
  }
  static constexpr double deltas[5] = {0.4, 0.2, 0.1, 0.05, 0.025};
};

// b = 1 gives the diagonal integral int chi(x, x) dx = sqrt(pi / 2).
TEST_F(OscKernel, ConstantSymbolIsDiagonalTrace) {
  const auto r = oscillatory_kernel(SeparableSymbol::from_poly(PolySymbol::constant(1, 1.0)), chi(), deltas);
  EXPECT_TRUE(r.cauchy_shrinking);
  EXPECT_NEAR(std::abs(r.extrapolated - std::sqrt(kPiD / 2)), 0.0, 1e-8);
}

// b = xi gives -i int d_y chi(x, x) dx = 0.375 i sqrt(pi / 2).
TEST_F(OscKernel, XiSymbol) {
  const auto r = oscillatory_kernel(SeparableSymbol::from_poly(PolySymbol::xi(1)), chi(), deltas);
  EXPECT_TRUE(r.cauchy_shrinking);
  EXPECT_NEAR(std::abs(r.extrapolated - cplx(0, 0.375 * std::sqrt(kPiD / 2))), 0.0, 1e-8);
}

TEST_F(OscKernel, CutoffIndependence) {
  const auto b = SeparableSymbol::example5(0.5, PolySymbol::xi(1) * PolySymbol::xi(1));
  const auto r1 = oscillatory_kernel(b, chi(), deltas);
  const auto r2 = oscillatory_kernel(b, chi(), deltas, Cutoff{0.5, 1.5});
  EXPECT_LT(std::abs(r1.extrapolated - r2.extrapolated), 1e-5);
  EXPECT_LT(r1.final_diff, 1e-5);
}

TEST_F(OscKernel, RejectsBadLadder) {
  const double up[] = {0.1, 0.2};
  EXPECT_THROW(oscillatory_kernel(SeparableSymbol::from_poly(PolySymbol::constant(1, 1.0)), chi(), up),
               std::invalid_argument);
}
