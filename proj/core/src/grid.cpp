#include "uwq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uwq/fft.hpp"

namespace uwq {

AxisGrid::AxisGrid(int n, double L, int d) : n_(n), L_(L), d_(d) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid: n must be a power of two >= 2, got " + std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid: L must be positive");
  if (d != 1 && d != 2) throw std::invalid_argument("grid: d must be 1 or 2");
  size_ = 1;
  for (int i = 0; i < d; ++i) size_ *= static_cast<std::size_t>(n);
}

double AxisGrid::cell() const { return std::pow(dx(), d_); }
double AxisGrid::dual_cell() const { return std::pow(dxi(), d_); }

double AxisGrid::wrap(double t) const {
  const double P = 2.0 * L_;
  double r = std::fmod(t + L_, P);
  if (r < 0) r += P;
  return r - L_;
}

void AxisGrid::unflatten(std::size_t flat, int* idx) const {
  for (int a = d_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
}

std::size_t AxisGrid::flatten(const int* idx) const {
  std::size_t f = 0;
  for (int a = 0; a < d_; ++a) f = f * n_ + static_cast<std::size_t>(idx[a]);
  return f;
}

FunctionGrid::FunctionGrid(AxisGrid a, std::vector<cplx> v, Domain dom)
    : axis(a), values(std::move(v)), domain(dom) {
  if (values.size() != axis.size()) throw std::invalid_argument("FunctionGrid: size mismatch");
}

PhaseFunctionGrid::PhaseFunctionGrid(AxisGrid a, std::vector<cplx> v)
    : xaxis(a), values(std::move(v)) {
  if (values.size() != a.size() * a.size())
    throw std::invalid_argument("PhaseFunctionGrid: size mismatch");
}

namespace {

std::vector<int> shape_of(const AxisGrid& g) { return std::vector<int>(g.d(), g.n()); }
std::vector<int> all_axes(const AxisGrid& g) {
  std::vector<int> a(g.d());
  for (int i = 0; i < g.d(); ++i) a[i] = i;
  return a;
}

void require_same(const FunctionGrid& a, const FunctionGrid& b) {
  if (!(a.axis == b.axis) || a.domain != b.domain)
    throw std::invalid_argument("grid: operands live on different grids");
}

}  // namespace

FunctionGrid fourier(const FunctionGrid& u) {
  if (u.domain != Domain::Position) throw std::invalid_argument("fourier: input is not in position domain");
  FunctionGrid F(u.axis, u.values, Domain::Frequency);
  fft::centered_dft(F.values, shape_of(u.axis), all_axes(u.axis), -1);
  const double s = u.axis.cell();
  for (auto& v : F.values) v *= s;
  return F;
}

FunctionGrid inverse_fourier(const FunctionGrid& F) {
  if (F.domain != Domain::Frequency)
    throw std::invalid_argument("inverse_fourier: input is not in frequency domain");
  FunctionGrid u(F.axis, F.values, Domain::Position);
  fft::centered_dft(u.values, shape_of(F.axis), all_axes(F.axis), +1);
  const double s = F.axis.dual_cell() / std::pow(2.0 * kPi, F.axis.d());
  for (auto& v : u.values) v *= s;
  return u;
}

FunctionGrid gaussian_window(const AxisGrid& axis, std::span<const double> y,
                             std::span<const double> eta, std::vector<std::string>* warnings) {
  const int d = axis.d();
  if (static_cast<int>(y.size()) != d || static_cast<int>(eta.size()) != d)
    throw std::invalid_argument("gaussian_window: center dimension mismatch");
  for (int a = 0; a < d; ++a)
    if (warnings && std::abs(y[a]) > axis.L() / 2)
      warnings->push_back("gaussian_window: center " + std::to_string(y[a]) +
                          " lies outside [-L/2, L/2]; periodic images overlap");
  FunctionGrid g(axis);
  const double norm = std::pow(kPi, -0.25 * d);
  int idx[2];
  for (std::size_t f = 0; f < g.size(); ++f) {
    axis.unflatten(f, idx);
    double e = 0.0, phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = axis.x(idx[a]);
      const double r = axis.wrap(x - y[a]);
      e += r * r;
      phase += x * eta[a];
    }
    g[f] = norm * std::exp(-0.5 * e) * std::polar(1.0, phase);
  }
  return g;
}

cplx quadrature(const FunctionGrid& u) {
  cplx s = 0.0;
  for (const auto& v : u.values) s += v;
  return s * (u.domain == Domain::Position ? u.axis.cell() : u.axis.dual_cell());
}

cplx inner(const FunctionGrid& u, const FunctionGrid& v) {
  require_same(u, v);
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s * (u.domain == Domain::Position ? u.axis.cell() : u.axis.dual_cell());
}

double l2_norm(const FunctionGrid& u) { return std::sqrt(std::max(0.0, inner(u, u).real())); }

cplx inner(const PhaseFunctionGrid& a, const PhaseFunctionGrid& b) {
  if (!(a.xaxis == b.xaxis)) throw std::invalid_argument("inner: phase grids differ");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
  return s * a.xaxis.cell() * a.xaxis.dual_cell();
}

double l2_norm(const PhaseFunctionGrid& a) { return std::sqrt(std::max(0.0, inner(a, a).real())); }

FunctionGrid operator+(const FunctionGrid& a, const FunctionGrid& b) {
  require_same(a, b);
  FunctionGrid r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

FunctionGrid operator-(const FunctionGrid& a, const FunctionGrid& b) {
  require_same(a, b);
  FunctionGrid r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

FunctionGrid operator*(cplx s, const FunctionGrid& a) {
  FunctionGrid r = a;
  for (auto& v : r.values) v *= s;
  return r;
}

double max_abs_diff(const FunctionGrid& a, const FunctionGrid& b) {
  require_same(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const FunctionGrid& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

// ---- CSV ----

namespace {

void write_rows(std::ostream& os, const std::vector<cplx>& v) {
  char buf[96];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, v[i].real(), v[i].imag());
    os << buf;
  }
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  if (line.empty() || line[0] != '#') throw std::runtime_error("csv: line 1: missing '# n=.. L=.. d=..' header");
  std::map<std::string, std::string> kv;
  std::istringstream ss(line.substr(1));
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("csv: line 1: malformed header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* k : {"n", "L", "d"})
    if (!kv.count(k)) throw std::runtime_error(std::string("csv: line 1: header lacks '") + k + "'");
  return kv;
}

std::vector<cplx> read_rows(std::istream& is, std::size_t expected) {
  std::vector<cplx> v(expected);
  std::vector<bool> seen(expected, false);
  std::string line;
  int lineno = 1;
  std::size_t count = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    long long idx;
    double re, im;
    if (!(ss >> idx >> re >> im))
      throw std::runtime_error("csv: line " + std::to_string(lineno) + ": expected index,re,im");
    if (idx < 0 || static_cast<std::size_t>(idx) >= expected)
      throw std::runtime_error("csv: line " + std::to_string(lineno) + ": index out of range");
    v[idx] = {re, im};
    if (!seen[idx]) ++count;
    seen[idx] = true;
  }
  if (count != expected)
    throw std::runtime_error("csv: expected " + std::to_string(expected) + " rows, got " +
                             std::to_string(count));
  return v;
}

AxisGrid axis_from(const std::map<std::string, std::string>& kv) {
  return AxisGrid(std::stoi(kv.at("n")), std::stod(kv.at("L")), std::stoi(kv.at("d")));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const FunctionGrid& u) {
  os << "# n=" << u.axis.n() << " L=" << fmt(u.axis.L()) << " d=" << u.axis.d();
  if (u.domain == Domain::Frequency) os << " domain=frequency";
  os << "\n";
  write_rows(os, u.values);
}

void write_csv(std::ostream& os, const PhaseFunctionGrid& a) {
  os << "# n=" << a.xaxis.n() << " L=" << fmt(a.xaxis.L()) << " d=" << a.xaxis.d()
     << " xi_n=" << a.xaxis.n() << " dxi=" << fmt(a.xaxis.dxi()) << "\n";
  write_rows(os, a.values);
}

FunctionGrid read_function_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
  auto kv = parse_header(line);
  if (kv.count("xi_n")) throw std::runtime_error("csv: line 1: phase-space grid where a function grid was expected");
  AxisGrid g = axis_from(kv);
  Domain dom = Domain::Position;
  if (auto it = kv.find("domain"); it != kv.end() && it->second == "frequency") dom = Domain::Frequency;
  return FunctionGrid(g, read_rows(is, g.size()), dom);
}

PhaseFunctionGrid read_phase_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
  auto kv = parse_header(line);
  AxisGrid g = axis_from(kv);
  if (auto it = kv.find("xi_n"); it != kv.end() && std::stoi(it->second) != g.n())
    throw std::runtime_error("csv: line 1: xi_n must equal n");
  return PhaseFunctionGrid(g, read_rows(is, g.size() * g.size()));
}

}  // namespace uwq
