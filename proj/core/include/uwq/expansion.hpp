#pragma once

#include <vector>

#include "uwq/poly.hpp"
#include "uwq/quant.hpp"
#include "uwq/weights.hpp"

namespace uwq {

/// pi^{-1/2} int t^k e^{-t^2} dt = (k-1)!! / 2^{k/2} for even k, 0 for odd k.
double gaussian_moment(int k);
/// c_{alpha,beta} = pi^{-d} int eta^alpha y^beta e^{-|y|^2 - |eta|^2} dy deta.
double moment_coeff(const MultiIndex& alpha, const MultiIndex& beta);

/// Finite list of symbols; term j has expansion order j.
struct FormalExpansion {
  std::vector<PolySymbol> terms;
  int size() const { return static_cast<int>(terms.size()); }
};

/// Sum of the first N terms.
PolySymbol expansion_partial_sum(const FormalExpansion& e, int N);

/// sum_{|alpha + beta| = k} c_{alpha,beta} / (alpha! beta!) d_xi^alpha d_x^beta a
PolySymbol moment_derivative(const PolySymbol& a, int k);

/// Anti-Wick to Weyl terms p_0 = a, p_j = moment_derivative(a, 2j). With
/// `include_odd_orders` the orders 2j - 1 are added as well; their moments vanish.
FormalExpansion aw_to_weyl_terms(const PolySymbol& a, int J, bool include_odd_orders = false);

/// exp(sign Delta / 4) a, Delta the Laplacian in all 2d phase variables.
PolySymbol heat_quarter(const PolySymbol& a, int sign);

struct InverseRecursion {
  /// primed[k][j] = p'_{k,j}; entries with j > k are zero.
  std::vector<std::vector<PolySymbol>> primed;
  std::vector<PolySymbol> bj;
  PolySymbol a;
};

/// Anti-Wick symbol a with A_a = b^w for polynomial b:
/// p'_{0,0} = b, p'_{k,j} = sum_{l=1}^{k-j+1} T_l p'_{k-l,j-1}, b_j = sum_k p'_{k,j},
/// a = sum_j (-1)^j b_j.
InverseRecursion inverse_aw_recursion(const PolySymbol& b, int J);

/// b = sum_beta (tau1 - tau)^{|beta|} / beta! d_xi^beta D_x^beta a, so Op_tau(b) = Op_tau1(a).
PolySymbol tau_change_terms(const PolySymbol& a, Tau tau1, Tau tau);

/// b(x, xi) = sum_alpha (1 - 2 tau)^{|alpha|} / alpha! [(-d_xi)^alpha D_x^alpha a](x, -xi),
/// the tau-symbol of the transpose of Op_tau(a).
PolySymbol transpose_terms(const PolySymbol& a, Tau tau);

/// f = sum_alpha 1/alpha! d_xi^alpha a D_x^alpha b, so a(x,D) b(x,D) = f(x,D).
PolySymbol compose_terms(const PolySymbol& a, const PolySymbol& b);

struct ClassParams {
  double rho = 0.5;
  double h = 1.0;
  double m = 1.0;
  WeightSequence weight = WeightSequence::gevrey(2.0);
};

inline constexpr int kGammaNormSamples = 81;

/// sup over derivative orders and a sampled box [-box, box]^{2d} of
/// |D_xi^alpha D_x^beta a| <(x,xi)>^{rho(|alpha|+|beta|)} e^{-M(m|xi|) - M(m|x|)} / (h^{|alpha|+|beta|} A_alpha A_beta)
/// with A_p = M_p^rho.
double gamma_norm_estimate(const PolySymbol& a, const ClassParams& params, double box,
                           int samples = kGammaNormSamples);

}  // namespace uwq
