#include "uwq/spec_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "uwq/gaussconv.hpp"

namespace uwq {

SpecError::SpecError(const std::string& msg, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

std::string defaults_banner() {
  std::ostringstream os;
  os << "uwq " << kVersion << " defaults n=" << kDefaultN << " L=" << kDefaultL << " d=" << kDefaultD;
  return os.str();
}

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Poly: return "poly";
    case SymbolKind::Grid: return "grid";
    case SymbolKind::Example5: return "example5";
  }
  return "?";
}

bool SymbolSpec::operator==(const SymbolSpec& o) const {
  auto same_poly = [](const std::optional<PolySymbol>& a, const std::optional<PolySymbol>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->d() == b->d() && a->terms() == b->terms());
  };
  return kind == o.kind && grid.n == o.grid.n && grid.L == o.grid.L && grid.d == o.grid.d &&
         same_poly(poly, o.poly) && path == o.path && l == o.l && same_poly(P, o.P);
}

namespace {

struct Value {
  enum class Tag { Str, Num, List } tag = Tag::Num;
  std::string str;
  double num = 0.0;
  std::vector<Value> list;
  int line = 0;
};

struct Entry {
  Value value;
  int line = 0;
};

using Table = std::map<std::string, Entry>;

class KvParser {
public:
  explicit KvParser(const std::string& text) : s_(text) {}

  Table parse() {
    Table t;
    for (;;) {
      skip_blank(true);
      if (eof()) break;
      const int line = line_;
      const std::string key = read_key();
      skip_blank(false);
      if (!take('=')) fail("expected '=' after key '" + key + "'");
      skip_blank(false);
      Value v = read_value();
      if (t.count(key)) fail("duplicate key '" + key + "'", line);
      t[key] = Entry{std::move(v), line};
      skip_blank(false);
      if (eof()) break;
      if (peek() == ';' || peek() == '\n') {
        advance();
        continue;
      }
      fail(std::string("unexpected character '") + peek() + "' after value");
    }
    return t;
  }

private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') ++line_;
    ++pos_;
  }
  bool take(char c) {
    if (!eof() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg, int line = -1) const {
    throw SpecError(msg, line < 0 ? line_ : line);
  }

  // Skips spaces and comments; with `newlines` also line breaks and ';'.
  void skip_blank(bool newlines) {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') advance();
      else if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (newlines && (c == '\n' || c == ';')) advance();
      else break;
    }
  }

  std::string read_key() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
    if (pos_ == start) fail(std::string("expected a key, found '") + peek() + "'");
    return s_.substr(start, pos_ - start);
  }

  Value read_value() {
    if (eof()) fail("missing value");
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      advance();
      v.tag = Value::Tag::Str;
      for (;;) {
        if (eof() || peek() == '\n') fail("unterminated string");
        char ch = peek();
        advance();
        if (ch == '"') break;
        if (ch == '\\') {
          if (eof()) fail("unterminated string");
          ch = peek();
          advance();
          if (ch != '"' && ch != '\\') fail(std::string("unknown escape '\\") + ch + "'");
        }
        v.str += ch;
      }
    } else if (c == '[') {
      advance();
      v.tag = Value::Tag::List;
      skip_blank(true);
      if (take(']')) return v;
      for (;;) {
        skip_blank(true);
        v.list.push_back(read_value());
        skip_blank(true);
        if (take(']')) break;
        if (!take(',')) fail("expected ',' or ']' in array");
      }
    } else {
      const std::size_t start = pos_;
      while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || std::string_view("+-.eE").find(peek()) != std::string_view::npos))
        advance();
      const std::string tok = s_.substr(start, pos_ - start);
      if (tok.empty()) fail(std::string("unexpected character '") + c + "'");
      const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
      auto [p, ec] = std::from_chars(first, tok.data() + tok.size(), v.num);
      if (ec != std::errc() || p != tok.data() + tok.size()) fail("bad number '" + tok + "'");
    }
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

Value from_json(const nlohmann::json& j) {
  Value v;
  if (j.is_string()) {
    v.tag = Value::Tag::Str;
    v.str = j.get<std::string>();
  } else if (j.is_number()) {
    v.num = j.get<double>();
  } else if (j.is_array()) {
    v.tag = Value::Tag::List;
    for (const auto& e : j) v.list.push_back(from_json(e));
  } else {
    throw SpecError("unsupported JSON value " + j.dump(), 0);
  }
  return v;
}

Table parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("JSON: ") + e.what(), 0);
  }
  if (!j.is_object()) throw SpecError("JSON spec must be an object", 0);
  Table t;
  for (const auto& [k, v] : j.items()) t[k] = Entry{from_json(v), 0};
  return t;
}

const Value& need(const Table& t, const std::string& key, Value::Tag tag) {
  auto it = t.find(key);
  if (it == t.end()) throw SpecError("missing field '" + key + "'", 0);
  if (it->second.value.tag != tag) {
    const char* want = tag == Value::Tag::Str ? "a string" : tag == Value::Tag::Num ? "a number" : "an array";
    throw SpecError("field '" + key + "' must be " + want, it->second.line);
  }
  return it->second.value;
}

int as_int(const Value& v, const std::string& what, int line) {
  if (v.tag != Value::Tag::Num || v.num != std::floor(v.num) || std::abs(v.num) > 1e9)
    throw SpecError(what + " must be an integer", line);
  return static_cast<int>(v.num);
}

PolySymbol parse_terms(const Value& v, int d, const std::string& key, int line) {
  if (v.tag != Value::Tag::List) throw SpecError("field '" + key + "' must be an array", line);
  PolySymbol p(d);
  const std::size_t width = 2 * d + 2;
  for (const auto& term : v.list) {
    const int tl = term.line ? term.line : line;
    if (term.tag != Value::Tag::List || term.list.size() != width)
      throw SpecError("each entry of '" + key + "' needs " + std::to_string(width) +
                          " numbers [xi exponents, x exponents, re, im]", tl);
    std::vector<int> k(d), x(d);
    for (int i = 0; i < d; ++i) {
      k[i] = as_int(term.list[i], "exponent", tl);
      x[i] = as_int(term.list[d + i], "exponent", tl);
      if (k[i] < 0 || x[i] < 0) throw SpecError("exponents must be non-negative", tl);
    }
    const Value& re = term.list[2 * d];
    const Value& im = term.list[2 * d + 1];
    if (re.tag != Value::Tag::Num || im.tag != Value::Tag::Num) throw SpecError("coefficients must be numbers", tl);
    p.add_term(MultiIndex(k), MultiIndex(x), cplx(re.num, im.num));
  }
  return p;
}

SymbolSpec build(const Table& t) {
  static const char* known[] = {"kind", "n", "L", "d", "terms", "coeff", "path", "l", "P"};
  for (const auto& [k, e] : t) {
    bool ok = false;
    for (const char* kn : known) ok = ok || k == kn;
    if (!ok) throw SpecError("unknown field '" + k + "'", e.line);
  }
  auto line_of = [&](const std::string& k) {
    auto it = t.find(k);
    return it == t.end() ? 0 : it->second.line;
  };

  SymbolSpec s;
  const std::string kind = need(t, "kind", Value::Tag::Str).str;
  if (kind == "poly") s.kind = SymbolKind::Poly;
  else if (kind == "grid") s.kind = SymbolKind::Grid;
  else if (kind == "example5") s.kind = SymbolKind::Example5;
  else throw SpecError("field 'kind' must be \"poly\", \"grid\" or \"example5\", got \"" + kind + "\"", line_of("kind"));

  if (t.count("n")) s.grid.n = as_int(need(t, "n", Value::Tag::Num), "field 'n'", line_of("n"));
  if (t.count("L")) s.grid.L = need(t, "L", Value::Tag::Num).num;
  if (t.count("d")) s.grid.d = as_int(need(t, "d", Value::Tag::Num), "field 'd'", line_of("d"));
  if (s.grid.d != 1 && s.grid.d != 2) throw SpecError("field 'd' must be 1 or 2", line_of("d"));
  try {
    (void)s.grid.axis();
  } catch (const std::exception& e) {
    throw SpecError(std::string("grid parameters: ") + e.what(), line_of("n"));
  }

  if (t.count("terms") && t.count("coeff")) throw SpecError("'terms' and 'coeff' are aliases; give one", line_of("coeff"));
  const std::string terms_key = t.count("coeff") ? "coeff" : "terms";
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (t.count(k)) throw SpecError(std::string("field '") + k + "' is not allowed for kind \"" + kind + "\"", line_of(k));
  };

  switch (s.kind) {
    case SymbolKind::Poly:
      forbid({"path", "l", "P"});
      s.poly = parse_terms(need(t, terms_key, Value::Tag::List), s.grid.d, terms_key, line_of(terms_key));
      break;
    case SymbolKind::Grid:
      forbid({"terms", "coeff", "l", "P"});
      s.path = need(t, "path", Value::Tag::Str).str;
      if (s.path->empty()) throw SpecError("field 'path' is empty", line_of("path"));
      break;
    case SymbolKind::Example5: {
      forbid({"terms", "coeff", "path"});
      s.l = need(t, "l", Value::Tag::Num).num;
      if (!(*s.l > 0.0 && *s.l < 1.0)) throw SpecError("field 'l' must lie in (0, 1)", line_of("l"));
      s.P = parse_terms(need(t, "P", Value::Tag::List), s.grid.d, "P", line_of("P"));
      break;
    }
  }
  return s;
}

std::string fmt_num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string fmt_terms(const PolySymbol& p) {
  std::string out = "[";
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) out += ", ";
    first = false;
    out += "[";
    for (int i = 0; i < p.d(); ++i) out += std::to_string(m.kexp[i]) + ", ";
    for (int i = 0; i < p.d(); ++i) out += std::to_string(m.xexp[i]) + ", ";
    out += fmt_num(c.real()) + ", " + fmt_num(c.imag()) + "]";
  }
  return out + "]";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SymbolSpec parse_symbol_spec(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return build(parse_json(text));
  return build(KvParser(text).parse());
}

SymbolSpec load_symbol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_symbol_spec(ss.str());
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what(), e.line());
  }
}

std::string emit_symbol_spec(const SymbolSpec& s) {
  std::string out;
  out += "kind = " + quote(to_string(s.kind)) + "\n";
  out += "n = " + std::to_string(s.grid.n) + "\n";
  out += "L = " + fmt_num(s.grid.L) + "\n";
  out += "d = " + std::to_string(s.grid.d) + "\n";
  switch (s.kind) {
    case SymbolKind::Poly: out += "terms = " + fmt_terms(*s.poly) + "\n"; break;
    case SymbolKind::Grid: out += "path = " + quote(*s.path) + "\n"; break;
    case SymbolKind::Example5:
      out += "l = " + fmt_num(*s.l) + "\n";
      out += "P = " + fmt_terms(*s.P) + "\n";
      break;
  }
  return out;
}

PhaseFunctionGrid sample_symbol(const SymbolSpec& s, const std::string& base_dir) {
  const AxisGrid g = s.grid.axis();
  switch (s.kind) {
    case SymbolKind::Poly: return s.poly->sample(g);
    case SymbolKind::Grid: {
      std::filesystem::path p(*s.path);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      std::ifstream in(p);
      if (!in) throw SpecError("cannot open grid symbol " + p.string(), 0);
      PhaseFunctionGrid a = read_phase_csv(in);
      if (!(a.xaxis == g))
        throw SpecError("grid symbol " + p.string() + " does not match n, L, d of the spec", 0);
      return a;
    }
    case SymbolKind::Example5: {
      PhaseFunctionGrid a(g);
      const std::size_t N = g.size();
      int jx[2], kx[2];
      double x[2], xi[2];
      for (std::size_t xf = 0; xf < N; ++xf) {
        g.unflatten(xf, jx);
        for (int i = 0; i < g.d(); ++i) x[i] = g.x(jx[i]);
        for (std::size_t kf = 0; kf < N; ++kf) {
          g.unflatten(kf, kx);
          for (int i = 0; i < g.d(); ++i) xi[i] = g.xi(kx[i]);
          a.at(xf, kf) = example5_symbol(*s.l, *s.P, std::span<const double>(x, g.d()),
                                         std::span<const double>(xi, g.d()));
        }
      }
      return a;
    }
  }
  throw std::logic_error("sample_symbol: bad kind");
}

}  // namespace uwq
