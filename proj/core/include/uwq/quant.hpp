#pragma once

#include <Eigen/Dense>

#include "uwq/grid.hpp"
#include "uwq/poly.hpp"

namespace uwq {

/// Quantization parameter: 0 is Kohn-Nirenberg, 1/2 is Weyl.
struct Tau {
  double value;
  explicit Tau(double v);
  static Tau kohn_nirenberg() { return Tau(0.0); }
  static Tau weyl() { return Tau(0.5); }
};

/// K(x_j, y_k); row = output x, column = input y.
struct KernelMatrix {
  AxisGrid axis;
  Eigen::MatrixXcd entries;
  bool weighted = false;  // dy^d already folded into the columns
  bool periodic = false;  // built from grid samples by trigonometric interpolation
};

/// Maps sampled u to sampled Op u.
struct OperatorMatrix {
  AxisGrid axis;
  Eigen::MatrixXcd m;

  FunctionGrid apply(const FunctionGrid& u) const;
};

/// K(x, y) = (dxi / 2 pi)^d sum_xi e^{i r xi} a(x - tau r, xi), r = x - y taken periodically.
/// The off-grid x-slot is filled by trigonometric interpolation of the samples.
KernelMatrix kernel_from_symbol(const PhaseFunctionGrid& a, Tau tau);
/// Kernel of a polynomial symbol, evaluated exactly at (1 - tau) x + tau y. The operator is
/// then a sum of products of multiplications by x and spectral derivatives.
KernelMatrix kernel_from_symbol(const PolySymbol& a, const AxisGrid& axis, Tau tau);

/// Points in the local interpolation stencil used by symbol_from_kernel; exact for
/// kernels polynomial in x along lines of fixed x - y up to this degree minus one.
inline constexpr int kKernelStencil = 12;

/// a(x, xi) = F_{t -> xi} K(x + tau t, x - (1 - tau) t). Periodic kernels are read along
/// lines of fixed t by the same trigonometric shift that built them, others by local
/// Lagrange interpolation.
PhaseFunctionGrid symbol_from_kernel(const KernelMatrix& K, Tau tau);

/// Folds dy^d into the columns.
OperatorMatrix operator_matrix(const KernelMatrix& K);

OperatorMatrix op_tau(const PhaseFunctionGrid& a, Tau tau);
OperatorMatrix op_tau(const PolySymbol& a, const AxisGrid& axis, Tau tau);
OperatorMatrix weyl(const PhaseFunctionGrid& a);
OperatorMatrix weyl(const PolySymbol& a, const AxisGrid& axis);

/// (2 pi)^{-d} V*(a Vu).
FunctionGrid anti_wick_direct(const PhaseFunctionGrid& a, const FunctionGrid& u);
/// Matrix of the Anti-Wick operator from the window products G_0(t - y) G_0(s - y).
OperatorMatrix anti_wick_matrix(const PhaseFunctionGrid& a);

/// Periodic convolution with pi^{-d} e^{-|x|^2 - |xi|^2} on the phase grid.
PhaseFunctionGrid gauss_smooth(const PhaseFunctionGrid& a);

struct Prop245Report {
  double max_err = 0.0;
};

/// max_ij |anti_wick_matrix(a) - weyl(gauss_smooth(a))|
Prop245Report verify_prop245(const PhaseFunctionGrid& a);

/// max_ij |M_ij - conj(M_ji)|
double hermitian_defect(const Eigen::MatrixXcd& m);
/// Smallest eigenvalue of (M + M^*) / 2.
double min_eigenvalue_hermitian_part(const Eigen::MatrixXcd& m);
/// Eigenvalues of (M + M^*) / 2, ascending.
Eigen::VectorXd eigenvalues_hermitian_part(const Eigen::MatrixXcd& m);
double spectral_norm(const Eigen::MatrixXcd& m);
double max_abs(const Eigen::MatrixXcd& m);

}  // namespace uwq
