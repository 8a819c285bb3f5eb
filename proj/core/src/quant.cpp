#include "uwq/quant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "uwq/fft.hpp"
#include "uwq/stft.hpp"

namespace uwq {

Tau::Tau(double v) : value(v) {
  if (!std::isfinite(v)) throw std::invalid_argument("Tau: value must be finite");
}

FunctionGrid OperatorMatrix::apply(const FunctionGrid& u) const {
  if (!(u.axis == axis)) throw std::invalid_argument("OperatorMatrix::apply: grid mismatch");
  Eigen::Map<const Eigen::VectorXcd> v(u.values.data(), static_cast<Eigen::Index>(u.size()));
  Eigen::VectorXcd r = m * v;
  return FunctionGrid(axis, std::vector<cplx>(r.data(), r.data() + r.size()));
}

namespace {

struct PhaseLayout {
  std::vector<int> shape;
  std::vector<int> x_axes;
  std::vector<int> xi_axes;
  std::vector<int> all_axes;

  explicit PhaseLayout(const AxisGrid& g) : shape(2 * g.d(), g.n()) {
    for (int a = 0; a < g.d(); ++a) {
      x_axes.push_back(a);
      xi_axes.push_back(g.d() + a);
    }
    all_axes = x_axes;
    all_axes.insert(all_axes.end(), xi_axes.begin(), xi_axes.end());
  }
};

// Multiplier applied to interpolation mode p for a shift by s. The Nyquist mode is
// interpolated as a cosine so that real samples have a real interpolant.
cplx shift_factor(const AxisGrid& g, int p, double s) {
  if (p == 0) return std::cos(g.xi_max() * s);
  return std::polar(1.0, g.xi(p) * s);
}

// Periodic difference index: r = (m - n/2) dx with m = (j - k + n/2) mod n.
int diff_index(int j, int k, int n) { return ((j - k + n / 2) % n + n) % n; }

// Representatives of r for difference index m: r = -L stands for both ends of the box.
struct Branch {
  double r;
  double w;
};

std::vector<Branch> branches(const AxisGrid& g, int m) {
  if (m == 0) return {{-g.L(), 0.5}, {g.L(), 0.5}};
  return {{(m - g.n() / 2) * g.dx(), 1.0}};
}

}  // namespace

KernelMatrix kernel_from_symbol(const PhaseFunctionGrid& a, Tau tau) {
  const AxisGrid& g = a.xaxis;
  const int n = g.n(), d = g.d();
  const std::size_t N = g.size();
  const PhaseLayout lay(g);

  std::vector<cplx> B = a.values;
  fft::centered_dft(B, lay.shape, lay.x_axes, -1);   // x -> kappa
  fft::centered_dft(B, lay.shape, lay.xi_axes, +1);  // xi -> r

  // phi[m * n + p]: shift factor for r index m and interpolation mode p, averaged over branches.
  std::vector<cplx> phi(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p) {
      cplx s = 0.0;
      for (const auto& b : branches(g, m)) s += b.w * shift_factor(g, p, -tau.value * b.r);
      phi[static_cast<std::size_t>(m) * n + p] = s;
    }

  int kap[2], rr[2];
  for (std::size_t kf = 0; kf < N; ++kf) {
    g.unflatten(kf, kap);
    for (std::size_t rf = 0; rf < N; ++rf) {
      g.unflatten(rf, rr);
      cplx f = 1.0;
      for (int ax = 0; ax < d; ++ax) f *= phi[static_cast<std::size_t>(rr[ax]) * n + kap[ax]];
      B[rf + N * kf] *= f;
    }
  }
  fft::centered_dft(B, lay.shape, lay.x_axes, +1);  // kappa -> x

  const double scale = g.dual_cell() / std::pow(2.0 * kPi, d) / static_cast<double>(N);
  KernelMatrix K{g, Eigen::MatrixXcd(N, N), false, true};
  int jx[2], ky[2];
  for (std::size_t xf = 0; xf < N; ++xf) {
    g.unflatten(xf, jx);
    for (std::size_t yf = 0; yf < N; ++yf) {
      g.unflatten(yf, ky);
      for (int ax = 0; ax < d; ++ax) rr[ax] = diff_index(jx[ax], ky[ax], n);
      K.entries(xf, yf) = scale * B[g.flatten(rr) + N * xf];
    }
  }
  return K;
}

KernelMatrix kernel_from_symbol(const PolySymbol& a, const AxisGrid& g, Tau tau) {
  if (a.d() != g.d()) throw std::invalid_argument("kernel_from_symbol: dimension mismatch");
  const int n = g.n(), d = g.d();
  const std::size_t N = g.size();
  const int deg = std::max(0, a.degree());

  // s[m * (deg + 1) + k] = (dxi / 2 pi) sum_xi e^{i r_m xi} xi^k with the Nyquist node split
  // evenly between -xi_N and +xi_N, so s_k(-r) = (-1)^k s_k(r).
  std::vector<cplx> s(static_cast<std::size_t>(n) * (deg + 1));
  for (int m = 0; m < n; ++m) {
    const double r = (m - n / 2) * g.dx();
    for (int q = 0; q < n; ++q) {
      const int reps = q == 0 ? 2 : 1;
      const double w = g.dxi() / (2.0 * kPi) / reps;
      for (int rep = 0; rep < reps; ++rep) {
        const double xi = rep == 1 ? g.xi_max() : g.xi(q);
        const cplx e = w * std::polar(1.0, r * xi);
        double pw = 1.0;
        for (int k = 0; k <= deg; ++k) {
          s[static_cast<std::size_t>(m) * (deg + 1) + k] += e * pw;
          pw *= xi;
        }
      }
    }
  }

  struct Term {
    cplx c;
    int ka[2];
    int xa[2];
  };
  std::vector<Term> terms;
  for (const auto& [mono, c] : a.terms()) {
    Term t{c, {0, 0}, {0, 0}};
    for (int ax = 0; ax < d; ++ax) {
      t.ka[ax] = mono.kexp[ax];
      t.xa[ax] = mono.xexp[ax];
    }
    terms.push_back(t);
  }

  // The x-slot takes the grid positions themselves, (1 - tau) x_j + tau y_k; only the
  // phase e^{i (x - y) xi} is periodic.
  KernelMatrix K{g, Eigen::MatrixXcd::Zero(N, N), false};
  int jx[2], ky[2], m[2];
  double pos[2];
  for (std::size_t xf = 0; xf < N; ++xf) {
    g.unflatten(xf, jx);
    for (std::size_t yf = 0; yf < N; ++yf) {
      g.unflatten(yf, ky);
      for (int ax = 0; ax < d; ++ax) {
        m[ax] = diff_index(jx[ax], ky[ax], n);
        pos[ax] = (1.0 - tau.value) * g.x(jx[ax]) + tau.value * g.x(ky[ax]);
      }
      cplx sum = 0.0;
      for (const auto& t : terms) {
        cplx v = t.c;
        for (int ax = 0; ax < d; ++ax)
          v *= std::pow(pos[ax], t.xa[ax]) * s[static_cast<std::size_t>(m[ax]) * (deg + 1) + t.ka[ax]];
        sum += v;
      }
      K.entries(xf, yf) = sum;
    }
  }
  return K;
}

namespace {

// Lagrange weights for reading a line of kernel samples at fractional row u.
struct Stencil {
  int count = 0;
  int rows[kKernelStencil];
  double w[kKernelStencil];
};

// Rows are taken from [lo, hi] when u lies inside that segment, so that the stencil
// never straddles the wrap of the box; otherwise the line is read periodically.
Stencil make_stencil(double u, int lo, int hi, int n) {
  Stencil st;
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  const long nearest = std::lround(u);
  if (std::abs(u - static_cast<double>(nearest)) < 1e-12) {
    st.count = 1;
    st.rows[0] = wrap(static_cast<int>(nearest));
    st.w[0] = 1.0;
    return st;
  }
  int first;
  int count = kKernelStencil;
  const bool inside = u >= lo && u <= hi;
  if (inside) {
    count = std::min(kKernelStencil, hi - lo + 1);
    first = static_cast<int>(std::floor(u)) - count / 2 + 1;
    first = std::clamp(first, lo, hi - count + 1);
  } else {
    first = static_cast<int>(std::floor(u)) - count / 2 + 1;
  }
  st.count = count;
  for (int i = 0; i < count; ++i) {
    double w = 1.0;
    for (int k = 0; k < count; ++k)
      if (k != i) w *= (u - (first + k)) / static_cast<double>(i - k);
    st.rows[i] = wrap(first + i);
    st.w[i] = w;
  }
  return st;
}

}  // namespace

namespace {

PhaseFunctionGrid symbol_from_periodic_kernel(const KernelMatrix& K, Tau tau) {
  const AxisGrid& g = K.axis;
  const int n = g.n(), d = g.d();
  const std::size_t N = g.size();
  const PhaseLayout lay(g);

  const double c = g.dual_cell() / std::pow(2.0 * kPi, d);
  std::vector<cplx> B(N * N);
  int jx[2], ky[2], rr[2], kap[2];
  for (std::size_t xf = 0; xf < N; ++xf) {
    g.unflatten(xf, jx);
    for (std::size_t yf = 0; yf < N; ++yf) {
      g.unflatten(yf, ky);
      for (int ax = 0; ax < d; ++ax) rr[ax] = diff_index(jx[ax], ky[ax], n);
      B[g.flatten(rr) + N * xf] = K.entries(xf, yf) / c;
    }
  }
  fft::centered_dft(B, lay.shape, lay.x_axes, -1);

  std::vector<cplx> phi(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p) {
      cplx s = 0.0;
      for (const auto& b : branches(g, m)) s += b.w * shift_factor(g, p, -tau.value * b.r);
      phi[static_cast<std::size_t>(m) * n + p] = s;
    }
  // Modes annihilated by the forward shift carry no information and are dropped.
  for (std::size_t kf = 0; kf < N; ++kf) {
    g.unflatten(kf, kap);
    for (std::size_t rf = 0; rf < N; ++rf) {
      g.unflatten(rf, rr);
      cplx f = 1.0;
      for (int ax = 0; ax < d; ++ax) f *= phi[static_cast<std::size_t>(rr[ax]) * n + kap[ax]];
      cplx& v = B[rf + N * kf];
      v = std::abs(f) < 1e-10 ? cplx(0.0) : v / f;
    }
  }
  fft::centered_dft(B, lay.shape, lay.x_axes, +1);
  fft::centered_dft(B, lay.shape, lay.xi_axes, -1);
  const double inv = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  for (auto& v : B) v *= inv;
  return PhaseFunctionGrid(g, std::move(B));
}

}  // namespace

PhaseFunctionGrid symbol_from_kernel(const KernelMatrix& K, Tau tau) {
  if (K.weighted) throw std::invalid_argument("symbol_from_kernel: kernel carries quadrature weights");
  if (K.periodic) return symbol_from_periodic_kernel(K, tau);
  const AxisGrid& g = K.axis;
  const int n = g.n(), d = g.d();
  const std::size_t N = g.size();
  const PhaseLayout lay(g);
  auto wrap = [n](int i) { return ((i % n) + n) % n; };

  // Along a line of fixed difference t the kernel k_t(X) = K(X, X - t) is sampled at
  // the grid rows; it is read at X = x + tau t.
  std::vector<cplx> D(N * N);  // D[x * N + t]
  int tm[2], jx[2], row[2], col[2];
  for (std::size_t tf = 0; tf < N; ++tf) {
    g.unflatten(tf, tm);
    int nb[2] = {1, 1};
    for (int ax = 0; ax < d; ++ax) nb[ax] = tm[ax] == 0 ? 2 : 1;
    for (std::size_t xf = 0; xf < N; ++xf) {
      g.unflatten(xf, jx);
      cplx acc = 0.0;
      for (int b0 = 0; b0 < nb[0]; ++b0)
        for (int b1 = 0; b1 < (d > 1 ? nb[1] : 1); ++b1) {
          const int bi[2] = {b0, b1};
          double wgt = 1.0;
          Stencil st[2];
          int shift[2] = {0, 0};
          for (int ax = 0; ax < d; ++ax) {
            const auto br = branches(g, tm[ax])[bi[ax]];
            wgt *= br.w;
            shift[ax] = static_cast<int>(std::lround(br.r / g.dx()));
            const int lo = std::max(0, shift[ax]), hi = std::min(n - 1, n - 1 + shift[ax]);
            st[ax] = make_stencil(jx[ax] + tau.value * br.r / g.dx(), lo, hi, n);
          }
          cplx sum = 0.0;
          for (int i0 = 0; i0 < st[0].count; ++i0) {
            row[0] = st[0].rows[i0];
            col[0] = wrap(row[0] - shift[0]);
            const int len1 = d > 1 ? st[1].count : 1;
            for (int i1 = 0; i1 < len1; ++i1) {
              double w = st[0].w[i0];
              if (d > 1) {
                w *= st[1].w[i1];
                row[1] = st[1].rows[i1];
                col[1] = wrap(row[1] - shift[1]);
              }
              sum += w * K.entries(static_cast<Eigen::Index>(g.flatten(row)),
                                   static_cast<Eigen::Index>(g.flatten(col)));
            }
          }
          acc += wgt * sum;
        }
      D[xf * N + tf] = acc;
    }
  }
  fft::centered_dft(D, lay.shape, lay.xi_axes, -1);
  const double cell = g.cell();
  for (auto& v : D) v *= cell;
  return PhaseFunctionGrid(g, std::move(D));
}

OperatorMatrix operator_matrix(const KernelMatrix& K) {
  if (K.weighted) throw std::invalid_argument("operator_matrix: kernel is already weighted");
  return OperatorMatrix{K.axis, K.entries * K.axis.cell()};
}

OperatorMatrix op_tau(const PhaseFunctionGrid& a, Tau tau) {
  return operator_matrix(kernel_from_symbol(a, tau));
}

OperatorMatrix op_tau(const PolySymbol& a, const AxisGrid& axis, Tau tau) {
  return operator_matrix(kernel_from_symbol(a, axis, tau));
}

OperatorMatrix weyl(const PhaseFunctionGrid& a) { return op_tau(a, Tau::weyl()); }

OperatorMatrix weyl(const PolySymbol& a, const AxisGrid& axis) { return op_tau(a, axis, Tau::weyl()); }

FunctionGrid anti_wick_direct(const PhaseFunctionGrid& a, const FunctionGrid& u) {
  if (!(a.xaxis == u.axis)) throw std::invalid_argument("anti_wick_direct: grid mismatch");
  PhaseFunctionGrid V = stft(u);
  for (std::size_t i = 0; i < V.size(); ++i) {
    V.values[i] *= a.values[i];
    if (!std::isfinite(V.values[i].real()) || !std::isfinite(V.values[i].imag()))
      throw std::overflow_error("anti_wick_direct: a * Vu overflows");
  }
  FunctionGrid r = stft_adjoint(V);
  const double s = std::pow(2.0 * kPi, -a.xaxis.d());
  for (auto& v : r.values) v *= s;
  return r;
}

OperatorMatrix anti_wick_matrix(const PhaseFunctionGrid& a) {
  const AxisGrid& g = a.xaxis;
  const int n = g.n(), d = g.d();
  const std::size_t N = g.size();
  const PhaseLayout lay(g);

  // ah[r + N * y] = (dxi / 2 pi)^d sum_xi a(y, xi) e^{i r xi}
  std::vector<cplx> ah = a.values;
  fft::centered_dft(ah, lay.shape, lay.xi_axes, +1);
  const double sc = g.dual_cell() / std::pow(2.0 * kPi, d);
  for (auto& v : ah) v *= sc;

  const std::vector<double> tab = window_table(g);
  std::vector<double> W(N * N);
  int ti[2], yi[2], si[2], m[2];
  for (std::size_t t = 0; t < N; ++t) {
    g.unflatten(t, ti);
    for (std::size_t y = 0; y < N; ++y) {
      g.unflatten(y, yi);
      double w = 1.0;
      for (int ax = 0; ax < d; ++ax) w *= tab[((ti[ax] - yi[ax]) % n + n) % n];
      W[t * N + y] = w;
    }
  }
  // Terms whose window exponent exceeds 80 are below double resolution.
  const double cutoff = std::pow(kPi, -0.5 * d) * std::exp(-80.0);

  std::vector<std::size_t> rdx(N * N);
  for (std::size_t t = 0; t < N; ++t) {
    g.unflatten(t, ti);
    for (std::size_t s = 0; s < N; ++s) {
      g.unflatten(s, si);
      for (int ax = 0; ax < d; ++ax) m[ax] = diff_index(ti[ax], si[ax], n);
      rdx[t * N + s] = g.flatten(m);
    }
  }

  const double cell2 = g.cell() * g.cell();
  OperatorMatrix A{g, Eigen::MatrixXcd::Zero(N, N)};
  for (std::size_t t = 0; t < N; ++t) {
    for (std::size_t y = 0; y < N; ++y) {
      const double wt = W[t * N + y];
      if (wt < cutoff) continue;
      const cplx* arow = &ah[N * y];
      for (std::size_t s = 0; s < N; ++s) {
        const double ws = W[s * N + y];
        if (wt * ws < cutoff) continue;
        A.m(t, s) += wt * ws * arow[rdx[t * N + s]];
      }
    }
  }
  A.m *= cell2;
  return A;
}

PhaseFunctionGrid gauss_smooth(const PhaseFunctionGrid& a) {
  const AxisGrid& g = a.xaxis;
  const int n = g.n(), d = g.d();
  const std::size_t total = a.size();
  const PhaseLayout lay(g);
  const double xi_period = n * g.dxi();

  std::vector<double> ex(n), ek(n);
  for (int i = 0; i < n; ++i) {
    const double r = g.wrap(i * g.dx());
    ex[i] = std::exp(-r * r);
    double e = std::fmod(i * g.dxi() + 0.5 * xi_period, xi_period);
    if (e < 0) e += xi_period;
    e -= 0.5 * xi_period;
    ek[i] = std::exp(-e * e);
  }
  const double w = std::pow(g.dx() * g.dxi() / kPi, d);
  std::vector<cplx> kern(total);
  std::vector<int> idx(2 * d);
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int ax = 2 * d - 1; ax >= 0; --ax) {
      idx[ax] = static_cast<int>(rem % n);
      rem /= n;
    }
    double v = w;
    for (int ax = 0; ax < d; ++ax) v *= ex[idx[ax]] * ek[idx[d + ax]];
    kern[f] = v;
  }
  std::vector<cplx> b = a.values;
  fft::dft(b, lay.shape, lay.all_axes, -1);
  fft::dft(kern, lay.shape, lay.all_axes, -1);
  for (std::size_t i = 0; i < total; ++i) b[i] *= kern[i] / static_cast<double>(total);
  fft::dft(b, lay.shape, lay.all_axes, +1);
  return PhaseFunctionGrid(g, std::move(b));
}

Prop245Report verify_prop245(const PhaseFunctionGrid& a) {
  const OperatorMatrix A = anti_wick_matrix(a);
  const OperatorMatrix B = weyl(gauss_smooth(a));
  return {max_abs(Eigen::MatrixXcd(A.m - B.m))};
}

double hermitian_defect(const Eigen::MatrixXcd& m) {
  return max_abs(Eigen::MatrixXcd(m - m.adjoint()));
}

Eigen::VectorXd eigenvalues_hermitian_part(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return es.eigenvalues();
}

double min_eigenvalue_hermitian_part(const Eigen::MatrixXcd& m) {
  return eigenvalues_hermitian_part(m).minCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace uwq
