#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "uwq/stft.hpp"

using namespace uwq;

namespace {

FunctionGrid random_function(const AxisGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  FunctionGrid u(g);
  for (auto& v : u.values) v = cplx(nd(rng), nd(rng));
  return u;
}

}  // namespace

TEST(Stft, Inversion) {
  for (int d : {1, 2}) {
    const AxisGrid g(d == 1 ? 128 : 32, d == 1 ? 10.0 : 6.0, d);
    const FunctionGrid u = random_function(g, 3);
    const FunctionGrid back = std::pow(2 * kPi, -d) * stft_adjoint(stft(u));
    EXPECT_LT(l2_norm(back - u) / l2_norm(u), 1e-12) << "d=" << d;
  }
}

TEST(Stft, Isometry) {
  const AxisGrid g(128, 10.0);
  const auto c = stft_norm_check(random_function(g, 4));
  EXPECT_NEAR(c.lhs / c.rhs, 1.0, 1e-12);
}

// <Vu, F> over phase space equals <u, V*F> over position space.
TEST(Stft, AdjointIdentity) {
  const AxisGrid g(64, 8.0);
  const FunctionGrid u = random_function(g, 5);
  PhaseFunctionGrid F(g);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  for (auto& v : F.values) v = cplx(nd(rng), nd(rng));
  const cplx lhs = inner(stft(u), F);
  const cplx rhs = inner(u, stft_adjoint(F));
  EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::abs(lhs));
}

// V G_0 (y, eta) = e^{-y^2/4 - eta^2/4 - i y eta / 2}
TEST(Stft, GaussianClosedForm) {
  const AxisGrid g(128, 10.0);
  const double y0[1] = {0.0}, e0[1] = {0.0};
  const PhaseFunctionGrid V = stft(gaussian_window(g, y0, e0));
  for (int j = 32; j < 96; j += 3)
    for (int k = 0; k < g.n(); k += 5) {
      const double y = g.x(j), eta = g.xi(k);
      const cplx expected = std::exp(cplx(-0.25 * (y * y + eta * eta), -0.5 * y * eta));
      EXPECT_NEAR(std::abs(V.at(j, k) - expected), 0.0, 1e-12) << y << " " << eta;
    }
}

TEST(Stft, WindowTableIsPeriodic) {
  const AxisGrid g(32, 5.0);
  const auto w = window_table(g);
  ASSERT_EQ(w.size(), 32u);
  EXPECT_NEAR(w[0], std::pow(kPi, -0.25), 1e-15);
  for (int k = 1; k < 32; ++k) EXPECT_NEAR(w[k], w[32 - k], 1e-15);
}
