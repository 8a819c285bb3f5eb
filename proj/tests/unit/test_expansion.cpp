#include <gtest/gtest.h>

#include <cmath>

#include "uwq/expansion.hpp"

using namespace uwq;

namespace {

const PolySymbol X = PolySymbol::x(1);
const PolySymbol XI = PolySymbol::xi(1);

PolySymbol c(double v) { return PolySymbol::constant(1, v); }

// pi^{-1/2} int t^k e^{-t^2} dt by the trapezoid rule on [-12, 12].
double moment_by_quadrature(int k) {
  const int n = 24000;
  const double h = 24.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = -12.0 + i * h;
    s += std::pow(t, k) * std::exp(-t * t);
  }
  return s * h / std::sqrt(3.14159265358979323846);
}

}  // namespace

TEST(Expansion, GaussianMoments) {
  for (int k = 0; k <= 10; ++k) EXPECT_NEAR(gaussian_moment(k), moment_by_quadrature(k), 1e-12 * (1 + gaussian_moment(k)));
  EXPECT_DOUBLE_EQ(gaussian_moment(2), 0.5);
  EXPECT_DOUBLE_EQ(gaussian_moment(4), 0.75);
  EXPECT_THROW(gaussian_moment(-1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(moment_coeff(MultiIndex({2}), MultiIndex({2})), 0.25);
}

TEST(Expansion, HeatQuarterClosedForms) {
  EXPECT_TRUE(heat_quarter(XI * XI, +1).approx_equal(XI * XI + c(0.5), 1e-15));
  EXPECT_TRUE(heat_quarter(X * X * X * X, +1).approx_equal(X * X * X * X + c(3.0) * X * X + c(0.75), 1e-15));
  const auto p = X * X * XI * XI + X * XI * XI * XI;
  EXPECT_TRUE(heat_quarter(heat_quarter(p, +1), -1).approx_equal(p, 1e-14));
  EXPECT_THROW(heat_quarter(p, 0), std::invalid_argument);
}

TEST(Expansion, AwToWeylMatchesHeatFlow) {
  for (int deg = 0; deg <= 8; ++deg)
    for (int k = 0; k <= deg; ++k) {
      const auto a = PolySymbol::monomial(MultiIndex({k}), MultiIndex({deg - k}));
      const auto e = aw_to_weyl_terms(a, deg / 2);
      EXPECT_TRUE(expansion_partial_sum(e, e.size()).approx_equal(heat_quarter(a, +1), 1e-12));
      const auto odd = aw_to_weyl_terms(a, deg / 2, true);
      EXPECT_TRUE(expansion_partial_sum(odd, odd.size()).approx_equal(heat_quarter(a, +1), 1e-12));
    }
}

TEST(Expansion, AwToWeylTwoDimensional) {
  const auto a = PolySymbol::xi(2, 0) * PolySymbol::xi(2, 0) * PolySymbol::x(2, 1) * PolySymbol::x(2, 1) +
                 PolySymbol::x(2, 0) * PolySymbol::xi(2, 1);
  const auto e = aw_to_weyl_terms(a, 2);
  EXPECT_TRUE(expansion_partial_sum(e, e.size()).approx_equal(heat_quarter(a, +1), 1e-12));
}

TEST(Expansion, PartialSumBounds) {
  const auto e = aw_to_weyl_terms(XI * XI, 1);
  EXPECT_EQ(e.size(), 2);
  EXPECT_TRUE(expansion_partial_sum(e, 0).is_zero());
  EXPECT_THROW(expansion_partial_sum(e, 3), std::out_of_range);
}

TEST(Expansion, InverseRecursion) {
  const auto b = X * X + XI * XI;
  const auto r = inverse_aw_recursion(b, 4);
  EXPECT_TRUE(r.a.approx_equal(b - c(1.0), 1e-14));
  const auto q = X * X * X * X * XI * XI + X * XI;
  EXPECT_TRUE(inverse_aw_recursion(q, 6).a.approx_equal(heat_quarter(q, -1), 1e-12));
  EXPECT_TRUE(heat_quarter(inverse_aw_recursion(q, 6).a, +1).approx_equal(q, 1e-12));
}

TEST(Expansion, TauChange) {
  EXPECT_TRUE(tau_change_terms(X * XI, Tau(0.0), Tau(0.5)).approx_equal(X * XI + PolySymbol::constant(1, {0, 0.5}), 1e-15));
  EXPECT_TRUE(tau_change_terms(X * XI, Tau(0.5), Tau(0.5)).approx_equal(X * XI, 1e-15));
  const auto a = X * X * XI * XI;
  const auto there = tau_change_terms(a, Tau(0.0), Tau(1.0));
  EXPECT_TRUE(tau_change_terms(there, Tau(1.0), Tau(0.0)).approx_equal(a, 1e-14));
}

// (x D)^T = -D x = -x D + i
TEST(Expansion, Transpose) {
  EXPECT_TRUE(transpose_terms(X * XI, Tau(0.0)).approx_equal(c(-1.0) * X * XI + PolySymbol::constant(1, {0, 1}), 1e-15));
  EXPECT_TRUE(transpose_terms(X * XI, Tau(0.5)).approx_equal(c(-1.0) * X * XI, 1e-15));
}

// D x = x D - i
TEST(Expansion, Compose) {
  EXPECT_TRUE(compose_terms(XI, X).approx_equal(X * XI - PolySymbol::constant(1, {0, 1}), 1e-15));
  EXPECT_TRUE(compose_terms(X, XI).approx_equal(X * XI, 1e-15));
  EXPECT_TRUE(compose_terms(XI * XI, X * X).approx_equal(X * X * XI * XI + PolySymbol::constant(1, {0, -4}) * X * XI - c(2.0), 1e-15));
}

TEST(Expansion, GammaNorm) {
  const ClassParams params;
  const double v = gamma_norm_estimate(X * X + XI * XI, params, 4.0, 21);
  EXPECT_GT(v, 0.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(gamma_norm_estimate(PolySymbol(1), params, 4.0), 0.0);
  ClassParams bad;
  bad.rho = 0.0;
  EXPECT_THROW(gamma_norm_estimate(X, bad, 4.0), std::invalid_argument);
}
