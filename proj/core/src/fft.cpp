#include "uwq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace uwq::fft {
namespace {

using Key = std::tuple<std::vector<int>, std::vector<int>, int>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(const std::vector<int>& shape, const std::vector<int>& axes, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    Key key{shape, axes, sign};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    const int rank = static_cast<int>(shape.size());
    std::vector<int> stride(rank, 1);
    for (int a = rank - 2; a >= 0; --a) stride[a] = stride[a + 1] * shape[a + 1];
    std::vector<fftw_iodim> dims, loops;
    std::vector<bool> is_axis(rank, false);
    for (int a : axes) {
      if (a < 0 || a >= rank) throw std::invalid_argument("fft: axis out of range");
      is_axis[a] = true;
    }
    for (int a = 0; a < rank; ++a) {
      fftw_iodim io{shape[a], stride[a], stride[a]};
      (is_axis[a] ? dims : loops).push_back(io);
    }
    std::size_t total = 1;
    for (int s : shape) total *= static_cast<std::size_t>(s);
    // FFTW_ESTIMATE leaves the scratch buffer untouched.
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                                     static_cast<int>(loops.size()), loops.data(), scratch,
                                     scratch, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!p) throw std::runtime_error("fft: plan creation failed");
    plans.emplace(std::move(key), p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft(std::span<std::complex<double>> data, const std::vector<int>& shape,
         const std::vector<int>& axes, int sign) {
  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  if (total != data.size()) throw std::invalid_argument("fft: shape does not match data");
  if (axes.empty()) return;
  fftw_plan p = cache().get(shape, axes, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

void centered_dft(std::span<std::complex<double>> data, const std::vector<int>& shape,
                  const std::vector<int>& axes, int sign) {
  const int rank = static_cast<int>(shape.size());
  std::vector<bool> is_axis(rank, false);
  int half_sum = 0;
  for (int a : axes) {
    is_axis[a] = true;
    half_sum += shape[a] / 2;
  }
  // (j - n/2)(k - n/2) = jk - n/2 (j + k) + n^2/4; for even n the phase of the cross
  // terms is (-1)^{j+k} and the constant is (-1)^{n/2}.
  auto parity = [&](std::size_t flat) {
    int sum = 0;
    for (int a = rank - 1; a >= 0; --a) {
      const int i = static_cast<int>(flat % shape[a]);
      flat /= shape[a];
      if (is_axis[a]) sum += i;
    }
    return sum & 1;
  };
  for (std::size_t i = 0; i < data.size(); ++i)
    if (parity(i)) data[i] = -data[i];
  dft(data, shape, axes, sign);
  const bool flip_all = half_sum & 1;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (parity(i) != static_cast<int>(flip_all)) data[i] = -data[i];
}

}  // namespace uwq::fft
