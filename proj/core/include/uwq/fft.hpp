#pragma once

#include <complex>
#include <span>
#include <vector>

namespace uwq::fft {

/// Unnormalized DFT of a row-major array along `axes`; sign -1 is e^{-2 pi i jk/n}.
/// Plans are cached per (shape, axes, sign) behind a lock; execution is reentrant.
void dft(std::span<std::complex<double>> data, const std::vector<int>& shape,
         const std::vector<int>& axes, int sign);

/// DFT on centered grids: index j stands for j - n/2 on every transformed axis, i.e.
/// out_k = sum_j e^{sign 2 pi i (j - n/2)(k - n/2)/n} in_j.
void centered_dft(std::span<std::complex<double>> data, const std::vector<int>& shape,
                  const std::vector<int>& axes, int sign);

}  // namespace uwq::fft
