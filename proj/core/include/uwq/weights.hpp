#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <complex>

namespace uwq {

// Default number of stored terms M_0..M_P.
inline constexpr int kDefaultWeightTruncation = 64;

struct GevreyGenerator {
  double s;
};
struct ExplicitGenerator {};
using WeightGenerator = std::variant<GevreyGenerator, ExplicitGenerator>;

/// Weight sequence M_0 = 1, M_1, ..., M_P stored as ln M_p.
///
/// Gevrey sequences (p!)^s can be queried beyond the stored truncation through
/// `log_value_extended`, explicit sequences cannot.
class WeightSequence {
public:
  static WeightSequence gevrey(double s, int truncation = kDefaultWeightTruncation);
  /// From ln M_p values; ln M_0 must be 0.
  static WeightSequence from_logs(std::vector<double> log_values);
  /// From M_p values; M_0 must be 1.
  static WeightSequence from_values(std::span<const double> values);

  int truncation() const { return static_cast<int>(log_m_.size()) - 1; }
  const std::vector<double>& log_values() const { return log_m_; }
  double log_value(int p) const;
  /// ln M_p for any p when the generator allows it; throws for explicit p > P.
  double log_value_extended(int p) const;
  /// m_p = M_p / M_{p-1}, p >= 1.
  double quotient(int p) const;
  double quotient_extended(int p) const;
  const WeightGenerator& generator() const { return generator_; }
  bool is_gevrey() const { return std::holds_alternative<GevreyGenerator>(generator_); }

private:
  WeightSequence(std::vector<double> logs, WeightGenerator gen);
  std::vector<double> log_m_;
  WeightGenerator generator_;
};

/// Monotone positive sequence r_1..r_P (index 0 holds r_1).
class SubordinateSequence {
public:
  explicit SubordinateSequence(std::vector<double> r, bool diverging = true);
  static SubordinateSequence identity(int length);  // r_p = p

  const std::vector<double>& values() const { return r_; }
  bool diverging() const { return diverging_; }
  std::size_t size() const { return r_.size(); }

private:
  std::vector<double> r_;
  bool diverging_;
};

struct AssocValue {
  double value = 0.0;
  int argmax = 0;
  bool saturated = false;
};

/// M(rho) = sup_p log_+ rho^p / M_p over the stored prefix.
AssocValue assoc_fn(const WeightSequence& w, double rho);
/// N_{r_p}(rho) with denominator M_p * r_1 * ... * r_p.
AssocValue assoc_fn_subordinate(const WeightSequence& w, const SubordinateSequence& r, double rho);

struct M2Fit {
  bool holds = false;
  double H = 0.0;
  double c0 = 0.0;
};

struct M3Fit {
  bool holds = false;
  double c0 = 0.0;
  double growth_exponent = 0.0;  // fitted from the stored quotients
};

struct ConditionReport {
  bool m1_ok = false;
  int m1_first_violation = -1;
  M2Fit m2;
  M3Fit m3;
  /// Constant shared by (M.2) and (M.3): max of both fitted witnesses.
  double c0() const;
};

/// H lattice used by the (M.2) fit: 1.0, 1.1, ..., kM2LatticeMax.
inline constexpr double kM2LatticeStep = 0.1;
inline constexpr double kM2LatticeMax = 16.0;

ConditionReport check_conditions(const WeightSequence& w);

/// P_l(z) = prod_{j=q}^{q+J-1} (1 + z^2 / (l_j^2 m_j^2)).
class Ultrapolynomial {
public:
  Ultrapolynomial(WeightSequence weight, double l, int q, int factors);
  /// Roumieu form with an index-dependent l_j = l[j - 1].
  Ultrapolynomial(WeightSequence weight, SubordinateSequence l_seq, int q, int factors);

  const WeightSequence& weight() const { return weight_; }
  int start() const { return q_; }
  int factors() const { return factors_; }
  double l_at(int j) const;

  /// Bound on sum_{j past truncation} |z|^2 / (l^2 m_j^2).
  double tail_bound(double abs_z) const;
  /// Smallest factor count for which tail_bound(abs_z) < tol.
  static int required_factors(const WeightSequence& w, double l, int q, double abs_z,
                              double tol = 1e-12);

private:
  WeightSequence weight_;
  double l_ = 1.0;
  std::optional<SubordinateSequence> l_seq_;
  int q_;
  int factors_;
};

inline constexpr double kUltrapolyTailTol = 1e-12;

std::complex<double> ultrapoly_eval(const Ultrapolynomial& P, std::complex<double> z);
/// ln |P_l(x)| for real x, evaluated as a log-sum to avoid overflow.
double ultrapoly_log_abs(const Ultrapolynomial& P, double x);

struct UltrapolyBoundReport {
  double c_tilde = 0.0;      // min over the grid of |P(x)| e^{-M(|x|/k)}
  double log_c_tilde = 0.0;
  bool ok = false;
  bool saturated = false;
};

/// Empirical check of |P_l(x)| >= C e^{M(|x|/k)}: ok when the ratio is positive and
/// its minimum over the outer quarter of the grid is not below the inner minimum.
UltrapolyBoundReport verify_ultrapoly_bound(const Ultrapolynomial& P, double k,
                                            std::span<const double> grid);

/// M(m m_n) <= 2 (c0 m + 2) n ln H + ln c0 for 1 <= n <= n_max with fitted constants.
bool lemma69_check(const WeightSequence& w, double m, int n_max);
bool lemma69_check(const WeightSequence& w, double m, int n_max, double c0, double H);

/// Text format: header `gevrey s=<real>` or `explicit`, then one ln M_p per line.
WeightSequence load_weight_sequence(const std::string& path);
WeightSequence parse_weight_sequence(const std::string& text);

}  // namespace uwq
