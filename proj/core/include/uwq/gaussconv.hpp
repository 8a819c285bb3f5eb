#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uwq/grid.hpp"
#include "uwq/poly.hpp"

namespace uwq {

enum class DensityKind { Indicator, GaussianBump, PolyTimesBump, Custom };

/// Integrable density supported in the box [lo, hi]^d, integrated by composite
/// Gauss-Legendre rules (tensor product for d = 2).
class CompactDensity {
public:
  using Fn = std::function<cplx(std::span<const double>)>;

  static CompactDensity indicator(double lo, double hi, int d = 1);
  /// exp(1 - 1 / (1 - u^2)) per coordinate, u the box coordinate mapped to (-1, 1).
  static CompactDensity bump(double lo, double hi, int d = 1);
  /// (sum_k c_k x^k) times the bump, applied coordinatewise for d = 2.
  static CompactDensity poly_bump(double lo, double hi, std::vector<double> coeffs, int d = 1);
  static CompactDensity custom(double lo, double hi, int d, Fn f);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int d() const { return d_; }
  DensityKind kind() const { return kind_; }
  /// Zero outside the box.
  cplx operator()(std::span<const double> x) const;

  struct Node {
    double x[2];
    double w;
    cplx value;
  };
  const std::vector<Node>& nodes() const { return nodes_; }

  /// Panels per axis of the composite rule.
  static constexpr int kPanels1d = 64;
  static constexpr int kPanels2d = 12;

private:
  CompactDensity(double lo, double hi, int d, DensityKind kind, Fn f);
  double lo_, hi_;
  int d_;
  DensityKind kind_;
  Fn f_;
  std::vector<Node> nodes_;
};

/// Parses `indicator:lo:hi`, `bump:lo:hi` or `polybump:lo:hi:c0,c1,...`.
CompactDensity parse_density(const std::string& text, int d = 1);

/// L(S)(zeta) = int e^{-zeta . x} S(x) dx
cplx laplace(const CompactDensity& S, std::span<const cplx> zeta);
cplx laplace(const CompactDensity& S, cplx zeta);

/// e^{s|x|^2} L(e^{s|.|^2} S)(2 s x)
cplx conv_gauss_via_laplace(const CompactDensity& S, double s, std::span<const double> x);
/// int S(y) e^{s|x - y|^2} dy
cplx conv_gauss_direct(const CompactDensity& S, double s, std::span<const double> x);

/// Radial envelope ln g(|x|) >= ln |S(x)|; -infinity marks points outside the support.
using LogEnvelope = std::function<double(double)>;

struct BStarEntry {
  double k = 0.0;
  double log_integral = 0.0;  // ln int_{-box}^{box} cosh(k|x|) e^{s x^2} g(x) dx
  double tail_rate = 0.0;     // -d/dr ln(integrand) at r = box
  bool pass = false;
};

struct BStarReport {
  std::vector<BStarEntry> entries;
  bool all_pass() const;
};

/// Sufficient-condition check that cosh(k|x|) e^{s|x|^2} g(x) is integrable for each k:
/// the log integrand must decay at a positive, non-decreasing rate over the outer quarter
/// of [0, box] and the extrapolated tail must be negligible against the integral.
BStarReport bstar_diagnostic(const LogEnvelope& log_g, double s, std::span<const double> k_list,
                             double box);

/// (1 - l)^{-d/2} e^{l|x|^2/(1-l)} (e^{Delta_xi / 4} P)(xi)
cplx example5_symbol(double l, const PolySymbol& P, std::span<const double> x,
                     std::span<const double> xi);

/// Smooth cutoff: 1 on |t| <= plateau, 0 on |t| >= support, e^{-1/u} splice in between.
struct Cutoff {
  double plateau = 1.0;
  double support = 2.0;
  double operator()(double t) const;
};

/// b(m, xi) = sum_t f_t(m) P_t(xi) with P_t polynomial in xi, d = 1.
struct SeparableSymbol {
  struct Term {
    std::function<cplx(double)> f;
    PolySymbol P;
  };
  std::vector<Term> terms;

  static SeparableSymbol from_poly(const PolySymbol& a);
  static SeparableSymbol example5(double l, const PolySymbol& P);
  cplx operator()(double m, double xi) const;
};

struct OscKernelReport {
  std::vector<double> deltas;
  std::vector<cplx> values;
  std::vector<double> cauchy;  // |v_{k+1} - v_k|
  cplx extrapolated;
  bool cauchy_shrinking = false;
  double final_diff = 0.0;
};

inline constexpr double kOscXiStep = 0.05;
inline constexpr double kOscNoiseFloor = 1e-12;

/// <K_{b,psi,delta}, chi> = (2 pi)^{-1} int int int e^{i(x-y)xi} psi(delta xi) b((x+y)/2, xi) chi(x,y)
/// for each delta; chi is sampled on a d = 2 grid over (x, y). Differences below the
/// noise floor count as shrinking.
OscKernelReport oscillatory_kernel(const SeparableSymbol& b, const FunctionGrid& chi,
                                   std::span<const double> deltas, Cutoff psi = {},
                                   double noise_floor = kOscNoiseFloor);

}  // namespace uwq
