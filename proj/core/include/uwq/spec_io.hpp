#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "uwq/defaults.hpp"
#include "uwq/grid.hpp"
#include "uwq/poly.hpp"

namespace uwq {

/// Raised for malformed spec files; `line` is 1-based, 0 when not tied to a line.
class SpecError : public std::runtime_error {
public:
  SpecError(const std::string& msg, int line);
  int line() const { return line_; }

private:
  int line_;
};

enum class SymbolKind { Poly, Grid, Example5 };

struct GridParams {
  int n = kDefaultN;
  double L = kDefaultL;
  int d = kDefaultD;
  AxisGrid axis() const { return AxisGrid(n, L, d); }
};

/// A symbol description as read from a config file. Exactly one payload is set.
struct SymbolSpec {
  SymbolKind kind = SymbolKind::Poly;
  GridParams grid;
  std::optional<PolySymbol> poly;       // kind = "poly"
  std::optional<std::string> path;      // kind = "grid", CSV of a PhaseFunctionGrid
  std::optional<double> l;              // kind = "example5"
  std::optional<PolySymbol> P;          // kind = "example5"

  bool operator==(const SymbolSpec& o) const;
};

/// Parses the key-value format or, when the text starts with '{', JSON.
///
/// Key-value grammar:
///   file   := (entry (';' | newline))*
///   entry  := key '=' value
///   value  := string | number | '[' [value (',' value)*] ']'
/// `#` starts a comment; arrays may span lines. Keys: kind, n, L, d, terms (alias
/// coeff), path, l, P. Each term is [xi exponents..., x exponents..., re, im].
SymbolSpec parse_symbol_spec(const std::string& text);
SymbolSpec load_symbol(const std::string& path);

/// Canonical key-value text; parse_symbol_spec(emit_symbol_spec(s)) == s.
std::string emit_symbol_spec(const SymbolSpec& s);

/// Samples the symbol on its phase grid. Relative grid paths resolve against `base_dir`.
PhaseFunctionGrid sample_symbol(const SymbolSpec& s, const std::string& base_dir = ".");

const char* to_string(SymbolKind k);

}  // namespace uwq
