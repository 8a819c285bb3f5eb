#include "uwq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uwq {

namespace {

constexpr double kLogTol = 1e-12;

double lgamma_sum(int p) {
  // ln p! by summation of ln k; exact enough and reproducible across libms.
  double acc = 0.0;
  for (int k = 2; k <= p; ++k) acc += std::log(static_cast<double>(k));
  return acc;
}

// Growth exponent s in m_p ~ p^s, fitted between p/2 and p.
double quotient_growth(const WeightSequence& w, int p) {
  const int half = std::max(1, p / 2);
  if (half == p) return 0.0;
  const double num = std::log(w.quotient_extended(p) / w.quotient_extended(half));
  return num / std::log(static_cast<double>(p) / half);
}

}  // namespace

WeightSequence::WeightSequence(std::vector<double> logs, WeightGenerator gen)
    : log_m_(std::move(logs)), generator_(gen) {}

WeightSequence WeightSequence::gevrey(double s, int truncation) {
  if (!(s > 0.0)) throw std::invalid_argument("gevrey exponent must be positive");
  if (truncation < 1) throw std::invalid_argument("truncation must be positive");
  std::vector<double> logs(truncation + 1);
  double lf = 0.0;
  logs[0] = 0.0;
  for (int p = 1; p <= truncation; ++p) {
    lf += std::log(static_cast<double>(p));
    logs[p] = s * lf;
  }
  return WeightSequence(std::move(logs), GevreyGenerator{s});
}

WeightSequence WeightSequence::from_logs(std::vector<double> log_values) {
  if (log_values.size() < 2) throw std::invalid_argument("weight sequence needs at least M_0, M_1");
  if (log_values[0] != 0.0) throw std::invalid_argument("M_0 must equal 1");
  for (double v : log_values)
    if (!std::isfinite(v)) throw std::invalid_argument("weight values must be positive and finite");
  return WeightSequence(std::move(log_values), ExplicitGenerator{});
}

WeightSequence WeightSequence::from_values(std::span<const double> values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("weight values must be strictly positive");
    logs.push_back(std::log(v));
  }
  return from_logs(std::move(logs));
}

double WeightSequence::log_value(int p) const {
  if (p < 0 || p > truncation()) throw std::out_of_range("weight index beyond truncation");
  return log_m_[p];
}

double WeightSequence::log_value_extended(int p) const {
  if (p < 0) throw std::out_of_range("negative weight index");
  if (p <= truncation()) return log_m_[p];
  if (const auto* g = std::get_if<GevreyGenerator>(&generator_)) return g->s * lgamma_sum(p);
  throw std::out_of_range("explicit weight sequence queried beyond its truncation");
}

double WeightSequence::quotient(int p) const {
  if (p < 1 || p > truncation()) throw std::out_of_range("quotient index out of range");
  return std::exp(log_m_[p] - log_m_[p - 1]);
}

double WeightSequence::quotient_extended(int p) const {
  if (p < 1) throw std::out_of_range("quotient index must be >= 1");
  if (p <= truncation()) return quotient(p);
  if (const auto* g = std::get_if<GevreyGenerator>(&generator_))
    return std::pow(static_cast<double>(p), g->s);
  throw std::out_of_range("explicit weight sequence queried beyond its truncation");
}

SubordinateSequence::SubordinateSequence(std::vector<double> r, bool diverging)
    : r_(std::move(r)), diverging_(diverging) {
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!(r_[i] > 0.0)) throw std::invalid_argument("subordinate sequence must be positive");
    if (i > 0 && r_[i] < r_[i - 1])
      throw std::invalid_argument("subordinate sequence must be non-decreasing");
  }
}

SubordinateSequence SubordinateSequence::identity(int length) {
  std::vector<double> r(length);
  for (int p = 0; p < length; ++p) r[p] = p + 1.0;
  return SubordinateSequence(std::move(r));
}

namespace {

AssocValue scan_assoc(std::span<const double> log_denominator, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("associated function needs rho > 0");
  const double lr = std::log(rho);
  AssocValue out;
  double best = 0.0;  // p = 0 term, also the log_+ floor
  const int P = static_cast<int>(log_denominator.size()) - 1;
  for (int p = 1; p <= P; ++p) {
    const double v = p * lr - log_denominator[p];
    if (v > best) {
      best = v;
      out.argmax = p;
    }
  }
  out.value = best;
  out.saturated = (P > 0 && out.argmax == P);
  return out;
}

}  // namespace

AssocValue assoc_fn(const WeightSequence& w, double rho) {
  return scan_assoc(w.log_values(), rho);
}

AssocValue assoc_fn_subordinate(const WeightSequence& w, const SubordinateSequence& r,
                                double rho) {
  const int P = std::min<int>(w.truncation(), static_cast<int>(r.size()));
  std::vector<double> logs(P + 1);
  double acc = 0.0;
  logs[0] = 0.0;
  for (int p = 1; p <= P; ++p) {
    acc += std::log(r.values()[p - 1]);
    logs[p] = w.log_value(p) + acc;
  }
  return scan_assoc(logs, rho);
}

double ConditionReport::c0() const { return std::max({1.0, m2.c0, m3.c0}); }

ConditionReport check_conditions(const WeightSequence& w) {
  const int P = w.truncation();
  if (P < 4) throw std::invalid_argument("condition checks need truncation P >= 4");
  const auto& lm = w.log_values();
  ConditionReport rep;

  rep.m1_ok = true;
  for (int p = 1; p < P; ++p) {
    const double slack = lm[p - 1] + lm[p + 1] - 2.0 * lm[p];
    if (slack < -kLogTol * (1.0 + std::abs(lm[p]))) {
      rep.m1_ok = false;
      rep.m1_first_violation = p;
      break;
    }
  }

  // (M.2): worst split exponent g(n) = max_{p+q=n} ln M_n - ln M_p - ln M_q.
  std::vector<double> split(P + 1, 0.0);
  for (int n = 0; n <= P; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for (int q = 0; q <= n; ++q) best = std::max(best, lm[n] - lm[n - q] - lm[q]);
    split[n] = best;
  }
  const int tail_start = P - std::max(2, P / 4);
  const int steps = static_cast<int>(std::lround((kM2LatticeMax - 1.0) / kM2LatticeStep));
  for (int i = 0; i <= steps; ++i) {
    const double H = 1.0 + i * kM2LatticeStep;
    const double lh = std::log(H);
    bool settled = true;
    for (int n = tail_start + 1; n <= P; ++n) {
      if (split[n] - n * lh > split[n - 1] - (n - 1) * lh + kLogTol * (1.0 + std::abs(split[n]))) {
        settled = false;
        break;
      }
    }
    if (!settled) continue;
    double worst = 0.0;
    for (int n = 0; n <= P; ++n) worst = std::max(worst, split[n] - n * lh);
    rep.m2 = M2Fit{true, H, std::exp(worst)};
    break;
  }

  // (M.3): truncated tails plus a power-law completion past P.
  const double s_est = quotient_growth(w, P);
  rep.m3.growth_exponent = s_est;
  if (rep.m1_ok && s_est > 1.05) {
    const double mP = w.quotient(P);
    const double extra =
        std::pow(P, s_est) * std::pow(P + 0.5, 1.0 - s_est) / (mP * (s_est - 1.0));
    std::vector<double> tail(P + 2, 0.0);
    tail[P] = extra;  // sum_{p>P} 1/m_p
    for (int p = P; p >= 1; --p) tail[p - 1] = tail[p] + 1.0 / w.quotient(p);
    double c0 = 1.0;
    for (int q = 1; q <= P / 2; ++q) c0 = std::max(c0, tail[q] * w.quotient(q + 1) / q);
    rep.m3 = M3Fit{true, c0, s_est};
  }
  return rep;
}

Ultrapolynomial::Ultrapolynomial(WeightSequence weight, double l, int q, int factors)
    : weight_(std::move(weight)), l_(l), q_(q), factors_(factors) {
  if (!(l > 0.0)) throw std::invalid_argument("ultrapolynomial needs l > 0");
  if (q < 1 || factors < 1) throw std::invalid_argument("ultrapolynomial needs q >= 1, J >= 1");
  weight_.quotient_extended(q + factors - 1);
}

Ultrapolynomial::Ultrapolynomial(WeightSequence weight, SubordinateSequence l_seq, int q,
                                 int factors)
    : weight_(std::move(weight)), l_seq_(std::move(l_seq)), q_(q), factors_(factors) {
  if (q < 1 || factors < 1) throw std::invalid_argument("ultrapolynomial needs q >= 1, J >= 1");
  if (static_cast<int>(l_seq_->size()) < q + factors - 1)
    throw std::invalid_argument("l_p sequence shorter than the product");
  weight_.quotient_extended(q + factors - 1);
}

double Ultrapolynomial::l_at(int j) const { return l_seq_ ? l_seq_->values()[j - 1] : l_; }

namespace {

double tail_estimate(const WeightSequence& w, double l_last, int last, double abs_z) {
  const double s = quotient_growth(w, last);
  if (s <= 0.5) return std::numeric_limits<double>::infinity();
  const double m = w.quotient_extended(last);
  return abs_z * abs_z / (l_last * l_last) * last / (m * m * (2.0 * s - 1.0));
}

}  // namespace

double Ultrapolynomial::tail_bound(double abs_z) const {
  const int last = q_ + factors_ - 1;
  return tail_estimate(weight_, l_at(last), last, abs_z);
}

int Ultrapolynomial::required_factors(const WeightSequence& w, double l, int q, double abs_z,
                                      double tol) {
  int lo = 1, hi = 1;
  auto ok = [&](int j) { return tail_estimate(w, l, q + j - 1, abs_z) < tol; };
  while (!ok(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (1 << 26)) throw std::domain_error("ultrapolynomial truncation would exceed 2^26 factors");
    if (!w.is_gevrey() && q + hi - 1 > w.truncation())
      throw std::domain_error("explicit weight sequence too short for requested ultrapolynomial tail");
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::complex<double> ultrapoly_eval(const Ultrapolynomial& P, std::complex<double> z) {
  if (!(P.tail_bound(std::abs(z)) < kUltrapolyTailTol))
    throw std::domain_error("ultrapolynomial truncation too short for |z|");
  const std::complex<double> z2 = z * z;
  std::complex<double> acc = 1.0;
  const int last = P.start() + P.factors() - 1;
  for (int j = P.start(); j <= last; ++j) {
    const double lm = P.l_at(j) * P.weight().quotient_extended(j);
    acc *= 1.0 + z2 / (lm * lm);
  }
  return acc;
}

double ultrapoly_log_abs(const Ultrapolynomial& P, double x) {
  if (!(P.tail_bound(std::abs(x)) < kUltrapolyTailTol))
    throw std::domain_error("ultrapolynomial truncation too short for |x|");
  double acc = 0.0;
  const int last = P.start() + P.factors() - 1;
  for (int j = P.start(); j <= last; ++j) {
    const double lm = P.l_at(j) * P.weight().quotient_extended(j);
    acc += std::log1p(x * x / (lm * lm));
  }
  return acc;
}

UltrapolyBoundReport verify_ultrapoly_bound(const Ultrapolynomial& P, double k,
                                            std::span<const double> grid) {
  if (!(k > 0.0)) throw std::invalid_argument("bound check needs k > 0");
  UltrapolyBoundReport rep;
  if (grid.empty()) return rep;
  double xmax = 0.0;
  for (double x : grid) xmax = std::max(xmax, std::abs(x));
  double inner = std::numeric_limits<double>::infinity();
  double outer = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double ax = std::abs(x);
    double m = 0.0;
    if (ax > 0.0) {
      const AssocValue a = assoc_fn(P.weight(), ax / k);
      if (a.saturated) rep.saturated = true;
      m = a.value;
    }
    const double lr = ultrapoly_log_abs(P, x) - m;
    if (ax >= 0.75 * xmax && xmax > 0.0)
      outer = std::min(outer, lr);
    else
      inner = std::min(inner, lr);
  }
  rep.log_c_tilde = std::min(inner, outer);
  rep.c_tilde = std::exp(rep.log_c_tilde);
  const bool finite = std::isfinite(rep.log_c_tilde);
  const bool settled = !std::isfinite(inner) || !std::isfinite(outer) || outer >= inner - kLogTol;
  rep.ok = finite && settled && !rep.saturated;
  return rep;
}

bool lemma69_check(const WeightSequence& w, double m, int n_max, double c0, double H) {
  if (!(m > 0.0)) throw std::invalid_argument("quotient bound check needs m > 0");
  for (int n = 1; n <= n_max; ++n) {
    const AssocValue lhs = assoc_fn(w, m * w.quotient_extended(n));
    if (lhs.saturated) throw std::runtime_error("associated function saturated in quotient bound check");
    const double rhs = 2.0 * (c0 * m + 2.0) * n * std::log(H) + std::log(c0);
    if (lhs.value > rhs + kLogTol) return false;
  }
  return true;
}

bool lemma69_check(const WeightSequence& w, double m, int n_max) {
  const ConditionReport rep = check_conditions(w);
  if (!rep.m2.holds) return false;
  return lemma69_check(w, m, n_max, rep.c0(), rep.m2.H);
}

WeightSequence parse_weight_sequence(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const auto b = out.find_first_not_of(" \t\r");
      if (b == std::string::npos || out[b] == '#') continue;
      out = out.substr(b);
      while (!out.empty() && (out.back() == '\r' || out.back() == ' ')) out.pop_back();
      return true;
    }
    return false;
  };
  if (!next_line(line)) throw std::invalid_argument("weight file: missing header line");
  std::istringstream head(line);
  std::string kind;
  head >> kind;
  if (kind == "gevrey") {
    double s = 0.0;
    int P = kDefaultWeightTruncation;
    bool have_s = false;
    std::string tok;
    while (head >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("weight file line " + std::to_string(lineno) + ": bad token " + tok);
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "s") {
        s = std::stod(val);
        have_s = true;
      } else if (key == "P") {
        P = std::stoi(val);
      } else {
        throw std::invalid_argument("weight file line " + std::to_string(lineno) + ": unknown key " + key);
      }
    }
    if (!have_s) throw std::invalid_argument("weight file: gevrey header needs s=<real>");
    return WeightSequence::gevrey(s, P);
  }
  if (kind == "explicit") {
    std::vector<double> logs;
    while (next_line(line)) {
      try {
        std::size_t used = 0;
        logs.push_back(std::stod(line, &used));
        if (line.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("weight file line " + std::to_string(lineno) + ": expected ln M_p");
      }
    }
    return WeightSequence::from_logs(std::move(logs));
  }
  throw std::invalid_argument("weight file line " + std::to_string(lineno) +
                              ": header must be `gevrey s=<real>` or `explicit`");
}

WeightSequence load_weight_sequence(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open weight file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_weight_sequence(ss.str());
}

}  // namespace uwq
