#include <gtest/gtest.h>

#include <fstream>

#include "uwq/spec_io.hpp"

using namespace uwq;

TEST(SpecIo, MinimalPoly) {
  const auto s = parse_symbol_spec("kind=\"poly\"; d=1; terms=[[2,0,1.0,0.0]]");
  EXPECT_EQ(s.kind, SymbolKind::Poly);
  ASSERT_TRUE(s.poly);
  EXPECT_EQ(s.poly->coeff(MultiIndex({2}), MultiIndex({0})), cplx(1.0));
  EXPECT_EQ(s.grid.n, kDefaultN);
  EXPECT_EQ(s.grid.L, kDefaultL);
}

TEST(SpecIo, CoeffAliasAndComments) {
  const auto s = parse_symbol_spec("# harmonic oscillator\nkind = \"poly\"\ncoeff = [\n  [2, 0, 1, 0],  # xi^2\n  [0, 2, 1, 0]\n]\n");
  EXPECT_EQ(s.poly->terms().size(), 2u);
}

TEST(SpecIo, MissingKindNamesField) {
  try {
    parse_symbol_spec("d = 1\nterms = [[2, 0, 1, 0]]\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("'kind'"), std::string::npos) << e.what();
  }
}

TEST(SpecIo, ErrorsCarryLineNumbers) {
  try {
    parse_symbol_spec("kind = \"poly\"\nd = 1\nterms = [[2, 0, 1]]\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 3) << e.what();
  }
  try {
    parse_symbol_spec("kind = \"poly\"\n\ncolour = 3\nterms = []\n");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 3) << e.what();
  }
  EXPECT_THROW(parse_symbol_spec("kind = \"poly\"\nkind = \"grid\"\n"), SpecError);
  EXPECT_THROW(parse_symbol_spec("kind = \"poly\" terms = []\n"), SpecError);
  EXPECT_THROW(parse_symbol_spec("kind = \"poly\"\nterms = [[-1, 0, 1, 0]]\n"), SpecError);
  EXPECT_THROW(parse_symbol_spec("kind = \"poly\"\nn = 100\nterms = []\n"), SpecError);
  EXPECT_THROW(parse_symbol_spec("kind = \"grid\"\nterms = []\npath = \"a.csv\"\n"), SpecError);
  EXPECT_THROW(parse_symbol_spec("kind = \"example5\"\nl = 1.5\nP = [[0, 0, 1, 0]]\n"), SpecError);
}

TEST(SpecIo, CanonicalEmitIsByteIdentical) {
  const std::string canonical =
      "kind = \"poly\"\nn = 64\nL = 8\nd = 2\nterms = [[1, 0, 0, 1, 0.5, -0.25], [0, 0, 0, 0, 1, 0]]\n";
  EXPECT_EQ(emit_symbol_spec(parse_symbol_spec(canonical)), canonical);
  const std::string grid = "kind = \"grid\"\nn = 128\nL = 10\nd = 1\npath = \"sym \\\"a\\\".csv\"\n";
  EXPECT_EQ(emit_symbol_spec(parse_symbol_spec(grid)), grid);
  const std::string ex5 = "kind = \"example5\"\nn = 128\nL = 10\nd = 1\nl = 0.5\nP = [[2, 0, 1, 0]]\n";
  EXPECT_EQ(emit_symbol_spec(parse_symbol_spec(ex5)), ex5);
}

TEST(SpecIo, RoundTripPreservesSpec) {
  const auto s = parse_symbol_spec("kind=\"poly\"; L=7.25; terms=[[1,1,0.1,0.2],[0,3,1e-20,0]]");
  EXPECT_TRUE(parse_symbol_spec(emit_symbol_spec(s)) == s);
}

TEST(SpecIo, JsonInput) {
  const auto j = parse_symbol_spec(R"({"kind": "poly", "d": 1, "terms": [[2, 0, 1.0, 0.0]]})");
  const auto t = parse_symbol_spec("kind=\"poly\"; d=1; terms=[[2,0,1.0,0.0]]");
  EXPECT_TRUE(j == t);
  EXPECT_THROW(parse_symbol_spec(R"({"kind": "poly", "terms": [[2, 0, 1.0, 0.0]], "extra": 1})"), SpecError);
  EXPECT_THROW(parse_symbol_spec("{not json"), SpecError);
}

TEST(SpecIo, SampleGridSymbolFromFile) {
  const AxisGrid g(8, 2.0);
  PhaseFunctionGrid a(g);
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] = cplx(i, 0.5);
  const std::string dir = ::testing::TempDir();
  {
    std::ofstream f(dir + "/spec_io_sym.csv");
    write_csv(f, a);
  }
  const auto s = parse_symbol_spec("kind = \"grid\"\nn = 8\nL = 2\npath = \"spec_io_sym.csv\"\n");
  EXPECT_EQ(sample_symbol(s, dir).values, a.values);
  const auto wrong = parse_symbol_spec("kind = \"grid\"\nn = 16\nL = 2\npath = \"spec_io_sym.csv\"\n");
  EXPECT_THROW(sample_symbol(wrong, dir), SpecError);
}

TEST(SpecIo, SamplePolyAndExample5) {
  const auto p = parse_symbol_spec("kind=\"poly\"; n=16; L=2; terms=[[1,1,1,0]]");
  const auto a = sample_symbol(p);
  const AxisGrid g(16, 2.0);
  EXPECT_EQ(a.at(3, 5), cplx(g.x(3) * g.xi(5)));
  const auto e = parse_symbol_spec("kind=\"example5\"; n=16; L=2; l=0.5; P=[[0,0,1,0]]");
  EXPECT_NEAR(sample_symbol(e).at(8, 0).real(), std::sqrt(2.0), 1e-14);
}

TEST(SpecIo, LoadFromFile) {
  const std::string path = ::testing::TempDir() + "/spec_io_load.toml";
  {
    std::ofstream f(path);
    f << "kind = \"poly\"\nterms = [[0, 2, 1, 0]]\n";
  }
  EXPECT_EQ(load_symbol(path).kind, SymbolKind::Poly);
  EXPECT_THROW(load_symbol(path + ".missing"), SpecError);
}
