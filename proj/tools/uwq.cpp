// uwq: command line front end for the quantization toolkit.
#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "uwq/defaults.hpp"
#include "uwq/expansion.hpp"
#include "uwq/gaussconv.hpp"
#include "uwq/quant.hpp"
#include "uwq/spec_io.hpp"
#include "uwq/stft.hpp"
#include "uwq/verify.hpp"
#include "uwq/weights.hpp"

namespace {

using uwq::cplx;

struct Globals {
  std::optional<int> n;
  std::optional<double> L;
  std::optional<int> d;
  bool json = false;
  std::string out;
};

// Rows of numbers or strings, emitted as CSV or as a JSON array of objects.
struct Table {
  using Cell = std::variant<double, long long, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string render(bool json) const {
    if (json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < columns.size(); ++i)
          std::visit([&](const auto& v) { obj[columns[i]] = v; }, r[i]);
        arr.push_back(obj);
      }
      return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ",";
        std::visit([&](const auto& v) { os << v; }, r[i]);
      }
      os << "\n";
    }
    return os.str();
  }
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    v.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  }
  return v;
}

// "a:b" -> two numbers
std::pair<double, double> parse_pair(const std::string& s, const char* what) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw std::invalid_argument(std::string(what) + " must look like a:b");
  return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
}

uwq::SymbolSpec load_with_overrides(const std::string& path, const Globals& g) {
  uwq::SymbolSpec s = uwq::load_symbol(path);
  if (g.n) s.grid.n = *g.n;
  if (g.L) s.grid.L = *g.L;
  if (g.d && *g.d != s.grid.d) throw std::invalid_argument("--d conflicts with the dimension of " + path);
  return s;
}

std::string base_dir(const std::string& path) {
  const auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

uwq::OperatorMatrix build_op(const uwq::SymbolSpec& s, const std::string& dir, uwq::Tau tau) {
  if (s.kind == uwq::SymbolKind::Poly) return uwq::op_tau(*s.poly, s.grid.axis(), tau);
  return uwq::op_tau(uwq::sample_symbol(s, dir), tau);
}

std::string operator_csv(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  os << std::setprecision(17) << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << i << "," << j << "," << m(i, j).real() << "," << m(i, j).imag() << "\n";
  return os.str();
}

std::string monomial_name(const uwq::Monomial& m) {
  std::string s;
  auto part = [&](const char* var, const uwq::MultiIndex& e) {
    for (int i = 0; i < e.d(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += var;
      if (e.d() > 1) s += std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
  };
  part("xi", m.kexp);
  part("x", m.xexp);
  return s.empty() ? "1" : s;
}

void add_poly_rows(Table& t, long long order, const uwq::PolySymbol& p) {
  for (const auto& [m, c] : p.terms()) t.rows.push_back({order, monomial_name(m), c.real(), c.imag()});
}

uwq::PolySymbol require_poly(const uwq::SymbolSpec& s, const char* cmd) {
  if (s.kind != uwq::SymbolKind::Poly) throw std::invalid_argument(std::string(cmd) + " needs a poly symbol config");
  return *s.poly;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uwq: Weyl, Kohn-Nirenberg and Anti-Wick quantization on periodic grids"};
  app.set_version_flag("--version", std::string(uwq::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--n", g.n, "grid points per axis (power of two)");
  app.add_option("--L", g.L, "half box length");
  app.add_option("--d", g.d, "dimension, 1 or 2")->check(CLI::IsMember({1, 2}));
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--out", g.out, "write output to this file instead of stdout");

  // weights
  auto* weights = app.add_subcommand("weights", "associated function of a weight sequence");
  double gevrey_s = 0.0;
  std::string weight_file, rho_list = "0.5,1,2,4";
  bool check = false;
  auto* gev_opt = weights->add_option("--gevrey", gevrey_s, "Gevrey exponent s, M_p = (p!)^s");
  weights->add_option("--file", weight_file, "weight sequence file")->excludes(gev_opt);
  weights->add_flag("--check", check, "also report (M.1)-(M.3)");
  weights->add_option("--rho", rho_list, "comma separated rho values");

  // stft
  auto* stft = app.add_subcommand("stft", "short-time Fourier transform of a sampled function");
  std::string in_path;
  bool inverse = false;
  stft->add_option("--in", in_path, "input CSV")->required();
  stft->add_flag("--inverse", inverse, "apply (2 pi)^{-d} V* to a phase-space CSV");

  // quantize / antiwick
  auto* quantize = app.add_subcommand("quantize", "operator matrix Op_tau(a)");
  std::string symbol_path;
  double tau_value = 0.5;
  quantize->add_option("--symbol", symbol_path, "symbol config file")->required();
  quantize->add_option("--tau", tau_value, "quantization parameter in [0, 1]");

  auto* antiwick = app.add_subcommand("antiwick", "Anti-Wick operator matrix");
  bool verify245 = false;
  antiwick->add_option("--symbol", symbol_path, "symbol config file")->required();
  antiwick->add_flag("--verify-245", verify245, "print max |A_a - weyl(gauss_smooth a)| only");

  // expand
  auto* expand = app.add_subcommand("expand", "finite symbol expansions");
  std::string theorem = "aw260";
  int max_order = 8;
  expand->add_option("--symbol", symbol_path, "poly symbol config file")->required();
  expand->add_option("--theorem", theorem, "aw260 | inverse | tau:T1:T | transpose:T | compose:OTHER");
  expand->add_option("--max-order", max_order, "highest expansion order J");

  // gaussconv / laplace
  auto* gconv = app.add_subcommand("gaussconv", "Gaussian convolution of a compact density");
  std::string density = "indicator:-1:1", xrange = "-5:5:0.5";
  double s_value = -1.0;
  bool compare = false;
  gconv->add_option("--density", density, "indicator:lo:hi | bump:lo:hi | polybump:lo:hi:c0,c1,...");
  gconv->add_option("--s", s_value, "Gaussian exponent s");
  gconv->add_option("--x", xrange, "lo:hi:step");
  gconv->add_flag("--compare", compare, "add direct quadrature and relative error columns");

  auto* laplace = app.add_subcommand("laplace", "Laplace transform of a compact density at one point");
  std::string zeta = "0:0";
  laplace->add_option("--density", density, "density description")->required();
  laplace->add_option("--zeta", zeta, "re:im");

  // osc-kernel
  auto* osc = app.add_subcommand("osc-kernel", "regularized oscillatory kernel paired with chi");
  std::string chi_path, delta_list = "0.4,0.2,0.1,0.05,0.025";
  osc->add_option("--symbol", symbol_path, "poly or example5 symbol config, d = 1")->required();
  osc->add_option("--chi", chi_path, "chi(x, y) as a d = 2 grid CSV")->required();
  osc->add_option("--deltas", delta_list, "strictly decreasing delta ladder");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  std::string suite = "all";
  bool parallel = false;
  verify->add_option("--suite", suite, "all | stft | quant245 | expansion | tau | compose | gaussconv | weights");
  verify->add_flag("--parallel", parallel, "run checks concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    if (weights->parsed()) {
      uwq::WeightSequence w = weight_file.empty()
                                  ? uwq::WeightSequence::gevrey(gevrey_s > 0.0 ? gevrey_s : 2.0)
                                  : uwq::load_weight_sequence(weight_file);
      std::string text;
      if (check && !g.json) {
        const auto rep = uwq::check_conditions(w);
        std::ostringstream os;
        os << "# m1=" << rep.m1_ok << " m2=" << rep.m2.holds << " H=" << rep.m2.H << " m3=" << rep.m3.holds
           << " c0=" << rep.c0() << "\n";
        text += os.str();
      }
      Table t{{"rho", "M", "saturated"}, {}};
      for (double rho : parse_list(rho_list)) {
        const auto v = uwq::assoc_fn(w, rho);
        t.rows.push_back({rho, v.value, static_cast<long long>(v.saturated)});
      }
      if (g.json) {
        nlohmann::json j;
        j["table"] = nlohmann::json::parse(t.render(true));
        if (check) {
          const auto rep = uwq::check_conditions(w);
          j["conditions"] = {{"m1", rep.m1_ok}, {"m2", rep.m2.holds}, {"H", rep.m2.H}, {"m3", rep.m3.holds}, {"c0", rep.c0()}};
        }
        text = j.dump(2) + "\n";
      } else {
        text += t.render(false);
      }
      emit(g, text);
    } else if (stft->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw std::runtime_error("cannot open " + in_path);
      std::ostringstream os;
      os << std::setprecision(17);
      if (inverse) {
        const auto F = uwq::read_phase_csv(in);
        uwq::write_csv(os, std::pow(2.0 * uwq::kPi, -F.xaxis.d()) * uwq::stft_adjoint(F));
      } else {
        uwq::write_csv(os, uwq::stft(uwq::read_function_csv(in)));
      }
      emit(g, os.str());
    } else if (quantize->parsed()) {
      const auto s = load_with_overrides(symbol_path, g);
      emit(g, operator_csv(build_op(s, base_dir(symbol_path), uwq::Tau(tau_value)).m));
    } else if (antiwick->parsed()) {
      const auto s = load_with_overrides(symbol_path, g);
      const auto a = uwq::sample_symbol(s, base_dir(symbol_path));
      if (verify245) {
        const double e = uwq::verify_prop245(a).max_err;
        std::ostringstream os;
        os << std::setprecision(6) << std::scientific;
        if (g.json) os << nlohmann::json{{"max_err", e}}.dump() << "\n";
        else os << "max_err," << e << "\n";
        emit(g, os.str());
      } else {
        emit(g, operator_csv(uwq::anti_wick_matrix(a).m));
      }
    } else if (expand->parsed()) {
      const auto s = load_with_overrides(symbol_path, g);
      const uwq::PolySymbol a = require_poly(s, "expand");
      Table t{{"order", "monomial", "re", "im"}, {}};
      if (theorem == "aw260") {
        const auto e = uwq::aw_to_weyl_terms(a, max_order);
        for (int j = 0; j < e.size(); ++j) add_poly_rows(t, j, e.terms[j]);
      } else if (theorem == "inverse") {
        const auto r = uwq::inverse_aw_recursion(a, max_order);
        for (std::size_t j = 0; j < r.bj.size(); ++j) add_poly_rows(t, static_cast<long long>(j), r.bj[j]);
        add_poly_rows(t, -1, r.a);
      } else if (theorem.rfind("tau:", 0) == 0) {
        const auto [t1, t0] = parse_pair(theorem.substr(4), "tau");
        add_poly_rows(t, 0, uwq::tau_change_terms(a, uwq::Tau(t1), uwq::Tau(t0)));
      } else if (theorem.rfind("transpose:", 0) == 0) {
        add_poly_rows(t, 0, uwq::transpose_terms(a, uwq::Tau(std::stod(theorem.substr(10)))));
      } else if (theorem.rfind("compose:", 0) == 0) {
        std::filesystem::path other(theorem.substr(8));
        if (other.is_relative() && !std::filesystem::exists(other))
          other = std::filesystem::path(base_dir(symbol_path)) / other;
        const auto b = require_poly(uwq::load_symbol(other.string()), "compose");
        add_poly_rows(t, 0, uwq::compose_terms(a, b));
      } else {
        throw std::invalid_argument("unknown --theorem '" + theorem + "'");
      }
      emit(g, t.render(g.json));
    } else if (gconv->parsed()) {
      const auto S = uwq::parse_density(density, 1);
      const auto first = xrange.find(':'), last = xrange.rfind(':');
      if (first == std::string::npos || first == last) throw std::invalid_argument("--x must look like lo:hi:step");
      const double lo = std::stod(xrange.substr(0, first));
      const double hi = std::stod(xrange.substr(first + 1, last - first - 1));
      const double step = std::stod(xrange.substr(last + 1));
      if (!(step > 0.0) || hi < lo) throw std::invalid_argument("--x needs lo <= hi and step > 0");
      Table t;
      t.columns = compare ? std::vector<std::string>{"x", "via_laplace", "direct", "relerr"}
                          : std::vector<std::string>{"x", "re", "im"};
      const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (int i = 0; i < count; ++i) {
        const double x[1] = {lo + i * step};
        const cplx via = uwq::conv_gauss_via_laplace(S, s_value, x);
        if (compare) {
          const cplx direct = uwq::conv_gauss_direct(S, s_value, x);
          t.rows.push_back({x[0], via.real(), direct.real(), std::abs(via - direct) / (1.0 + std::abs(direct))});
        } else {
          t.rows.push_back({x[0], via.real(), via.imag()});
        }
      }
      emit(g, t.render(g.json));
    } else if (laplace->parsed()) {
      const auto S = uwq::parse_density(density, 1);
      const auto [re, im] = parse_pair(zeta, "--zeta");
      const cplx v = uwq::laplace(S, cplx(re, im));
      std::ostringstream os;
      os << std::setprecision(17);
      if (g.json) os << nlohmann::json{{"re", v.real()}, {"im", v.imag()}}.dump() << "\n";
      else os << v.real() << "," << v.imag() << "\n";
      emit(g, os.str());
    } else if (osc->parsed()) {
      const auto s = uwq::load_symbol(symbol_path);
      if (s.grid.d != 1) throw std::invalid_argument("osc-kernel needs a d = 1 symbol");
      uwq::SeparableSymbol b;
      if (s.kind == uwq::SymbolKind::Poly) b = uwq::SeparableSymbol::from_poly(*s.poly);
      else if (s.kind == uwq::SymbolKind::Example5) b = uwq::SeparableSymbol::example5(*s.l, *s.P);
      else throw std::invalid_argument("osc-kernel needs a poly or example5 symbol");
      std::ifstream in(chi_path);
      if (!in) throw std::runtime_error("cannot open " + chi_path);
      const auto chi = uwq::read_function_csv(in);
      const auto deltas = parse_list(delta_list);
      const auto rep = uwq::oscillatory_kernel(b, chi, deltas);
      Table t{{"delta", "re", "im", "cauchy"}, {}};
      for (std::size_t i = 0; i < rep.values.size(); ++i)
        t.rows.push_back({rep.deltas[i], rep.values[i].real(), rep.values[i].imag(),
                          i ? rep.cauchy[i - 1] : std::nan("")});
      std::string text = t.render(g.json);
      if (!g.json) {
        std::ostringstream os;
        os << std::setprecision(17) << "# extrapolated," << rep.extrapolated.real() << ","
           << rep.extrapolated.imag() << " shrinking," << rep.cauchy_shrinking << "\n";
        text += os.str();
      }
      emit(g, text);
    } else if (verify->parsed()) {
      uwq::VerifyOptions opts;
      if (g.n) opts.grid.n = *g.n;
      if (g.L) opts.grid.L = *g.L;
      if (g.d) opts.grid.d = *g.d;
      opts.parallel = parallel;
      const auto reports = uwq::run_verify(uwq::parse_suite(suite), opts);
      emit(g, uwq::emit_report(reports, g.json ? uwq::ReportFormat::Json : uwq::ReportFormat::Table, opts.grid));
      return uwq::all_pass(reports) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "uwq: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
