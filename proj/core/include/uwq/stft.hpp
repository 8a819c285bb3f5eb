#pragma once

#include <vector>

#include "uwq/grid.hpp"

namespace uwq {

/// Per-axis window samples g[k] = pi^{-1/4} e^{-r_k^2/2} with r_k the periodic
/// representative of k dx in [-L, L).
std::vector<double> window_table(const AxisGrid& axis);

/// Vu(y, eta) = F_{t -> eta}(u(t) G_0(t - y)) for every y on the position grid.
PhaseFunctionGrid stft(const FunctionGrid& u);

/// V*F(t) = (2 pi)^d sum_y dy^d F^{-1}_{eta -> t}(F(y, .))(t) G_0(t - y).
FunctionGrid stft_adjoint(const PhaseFunctionGrid& F);

struct NormCheck {
  double lhs = 0.0;  // ||Vu||
  double rhs = 0.0;  // (2 pi)^{d/2} ||u||
};

NormCheck stft_norm_check(const FunctionGrid& u);

}  // namespace uwq
