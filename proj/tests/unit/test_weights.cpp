#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "uwq/weights.hpp"

using namespace uwq;

namespace {

// max over p of (p ln rho - ln M_p)_+, scanned directly.
double brute_assoc(const WeightSequence& w, double rho) {
  double best = 0.0;
  for (int p = 0; p <= w.truncation(); ++p) best = std::max(best, p * std::log(rho) - w.log_value(p));
  return best;
}

WeightSequence factorial_sequence(int P) {
  std::vector<double> logs(P + 1);
  for (int p = 0; p <= P; ++p) logs[p] = std::lgamma(p + 1.0);
  return WeightSequence::from_logs(logs);
}

}  // namespace

TEST(Weights, GevreyIsLogConvex) {
  EXPECT_TRUE(check_conditions(WeightSequence::gevrey(2.0, 40)).m1_ok);
}

TEST(Weights, GevreyLogValuesMatchLgamma) {
  const auto w = WeightSequence::gevrey(1.5);
  for (int p : {0, 1, 5, 30, 64}) EXPECT_NEAR(w.log_value(p), 1.5 * std::lgamma(p + 1.0), 1e-9 * (1 + p * p));
  EXPECT_NEAR(w.log_value_extended(200), 1.5 * std::lgamma(201.0), 1e-7);
}

TEST(Weights, FactorialHasStabilityConstantTwo) {
  const auto rep = check_conditions(factorial_sequence(40));
  ASSERT_TRUE(rep.m2.holds);
  EXPECT_NEAR(rep.m2.H, 2.0, 1e-9);
}

TEST(Weights, NonLogConvexSequenceDetected) {
  const std::vector<double> m = {1, 1, 10, 11, 12, 13};
  const auto rep = check_conditions(WeightSequence::from_values(m));
  EXPECT_FALSE(rep.m1_ok);
  EXPECT_EQ(rep.m1_first_violation, 2);
}

TEST(Weights, RejectsBadInput) {
  EXPECT_THROW(WeightSequence::from_logs({0.5, 1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  EXPECT_THROW(check_conditions(WeightSequence::from_logs({0.0, 1.0, 2.0})), std::invalid_argument);
}

TEST(Weights, AssocFnMatchesBruteForce) {
  for (double s : {1.5, 2.0, 3.0}) {
    const auto w = WeightSequence::gevrey(s);
    for (double rho = 0.25; rho < 50.0; rho *= 1.3) {
      const auto v = assoc_fn(w, rho);
      ASSERT_FALSE(v.saturated);
      EXPECT_NEAR(v.value, brute_assoc(w, rho), 1e-12 * (1 + v.value)) << "s=" << s << " rho=" << rho;
    }
  }
}

TEST(Weights, AssocFnVanishesBelowFirstQuotient) {
  const auto w = WeightSequence::gevrey(2.0);
  for (double rho = 0.01; rho <= w.quotient(1); rho += 0.05) EXPECT_EQ(assoc_fn(w, rho).value, 0.0);
}

TEST(Weights, AssocFnMonotoneAndStrictPastVanishing) {
  const auto w = WeightSequence::gevrey(2.0);
  double prev = 0.0;
  for (double rho = 0.5; rho < 1e5; rho *= 1.3) {
    const auto v = assoc_fn(w, rho);
    EXPECT_GE(v.value, prev);
    prev = v.value;
    const auto v2 = assoc_fn(w, 2 * rho);
    if (v2.value > 0.0 && !v2.saturated) EXPECT_LT(v.value, v2.value);
  }
}

TEST(Weights, AssocFnReportsSaturation) {
  const auto w = WeightSequence::gevrey(1.0, 8);
  EXPECT_TRUE(assoc_fn(w, 1e6).saturated);
}

// sup_p p ln 10 - ln (p!)^3 is attained at p = 2.
TEST(Weights, SubordinateRegression) {
  const auto v = assoc_fn_subordinate(WeightSequence::gevrey(2.0), SubordinateSequence::identity(64), 10.0);
  EXPECT_NEAR(v.value, 2 * std::log(10.0) - 3 * std::log(2.0), 1e-12);
  EXPECT_EQ(v.argmax, 2);
}

TEST(Weights, UltrapolynomialAtZeroAndAtRoot) {
  const auto w = WeightSequence::gevrey(2.0);
  const Ultrapolynomial P(w, 1.0, 1, Ultrapolynomial::required_factors(w, 1.0, 1, 2.0));
  EXPECT_EQ(ultrapoly_eval(P, 0.0), std::complex<double>(1.0));
  EXPECT_NEAR(std::abs(ultrapoly_eval(P, {0.0, 1.0})), 0.0, 1e-14);
}

// prod_{j >= 1} (1 + 4 / j^4) = (cosh 2 pi - cos 2 pi) / (4 pi^2)
TEST(Weights, UltrapolynomialInfiniteProduct) {
  const auto w = WeightSequence::gevrey(2.0);
  const Ultrapolynomial P(w, 1.0, 1, Ultrapolynomial::required_factors(w, 1.0, 1, 2.0));
  const double pi = 3.14159265358979323846;
  const double exact = (std::cosh(2 * pi) - std::cos(2 * pi)) / (4 * pi * pi);
  EXPECT_NEAR(ultrapoly_eval(P, 2.0).real(), exact, 1e-10);
  EXPECT_NEAR(std::exp(ultrapoly_log_abs(P, 2.0)), exact, 1e-10);
}

TEST(Weights, UltrapolynomialTruncationGuard) {
  const Ultrapolynomial P(WeightSequence::gevrey(2.0), 1.0, 1, 50);
  EXPECT_THROW(ultrapoly_eval(P, 2.0), std::domain_error);
}

TEST(Weights, UltrapolynomialMonotoneOnReals) {
  const auto w = WeightSequence::gevrey(2.0);
  const Ultrapolynomial P(w, 1.0, 1, Ultrapolynomial::required_factors(w, 1.0, 1, 30.0));
  double prev = 0.0;
  for (double x = 0.0; x <= 30.0; x += 0.5) {
    const double v = ultrapoly_log_abs(P, x);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Weights, UltrapolyBound) {
  const auto w = WeightSequence::gevrey(2.0);
  const Ultrapolynomial P(w, 1.0, 1, Ultrapolynomial::required_factors(w, 1.0, 1, 50.0));
  const double origin[1] = {0.0};
  const auto at0 = verify_ultrapoly_bound(P, 10.0, origin);
  EXPECT_TRUE(at0.ok);
  EXPECT_DOUBLE_EQ(at0.c_tilde, 1.0);

  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[i] = 50.0 * i / 199.0;
  EXPECT_FALSE(verify_ultrapoly_bound(P, 0.01, grid).ok);
  bool seen_ok = false;
  for (double k = 0.01; k < 100.0; k *= 2.0) {
    const bool ok = verify_ultrapoly_bound(P, k, grid).ok;
    if (seen_ok) EXPECT_TRUE(ok) << "k=" << k;
    seen_ok = seen_ok || ok;
  }
  EXPECT_TRUE(seen_ok);
}

TEST(Weights, AssocBoundAtQuotients) {
  const auto w = WeightSequence::gevrey(2.0);
  EXPECT_TRUE(lemma69_check(w, 1.0, 20));
  EXPECT_TRUE(lemma69_check(w, 0.5, 20));
  EXPECT_FALSE(lemma69_check(w, 1.0, 20, 1.0, 1.0));
}

TEST(Weights, ParseText) {
  const auto g = parse_weight_sequence("gevrey s=2\n");
  EXPECT_TRUE(g.is_gevrey());
  EXPECT_NEAR(g.log_value(3), 2 * std::log(6.0), 1e-12);
  const auto e = parse_weight_sequence("explicit\n0\n0\n1\n# comment\n2.5\n4\n");
  EXPECT_EQ(e.truncation(), 4);
  EXPECT_DOUBLE_EQ(e.log_value(3), 2.5);
  EXPECT_THROW(parse_weight_sequence("nonsense\n"), std::invalid_argument);
  EXPECT_THROW(parse_weight_sequence(""), std::invalid_argument);
}
