#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace akform;
using akform::testing::torus8;

namespace {

DiffPoly coef(const std::string& text) { return torus8().parse_form(text).coefficient(BasisForm()); }

/// Differentiates each factor occurrence separately, with no multiplicity bookkeeping.
DiffPoly termwise_derive(const DiffPoly& p, const Derivation& d) {
  DiffPoly out;
  for (const auto& [mono, c] : p.terms())
    for (std::size_t k = 0; k < mono.size(); ++k) {
      SymbolMonomial m = mono;
      m[k] = m[k].derived(d);
      out.add_term(m, c);
    }
  return out;
}

const Derivation V4{4, false}, V4b{4, true}, V1{1, false};

}  // namespace

TEST(GaussRat, UnitArithmetic) {
  EXPECT_EQ(GaussRat::i() * -GaussRat::i(), GaussRat(1));
  EXPECT_EQ(GaussRat::i() * GaussRat::i(), GaussRat(-1));
  EXPECT_EQ(GaussRat::i().conj(), -GaussRat::i());
  GaussRat a(make_rational(3, 4), make_rational(-1, 2));
  EXPECT_EQ(a / a, GaussRat(1));
  EXPECT_EQ(a * a.conj(), GaussRat(make_rational(13, 16)));
  EXPECT_THROW(a / GaussRat(), Error);
}

TEST(GaussRat, CanonicalText) {
  EXPECT_EQ(GaussRat(make_rational(-1, 4), 0).str(), "-1/4");
  EXPECT_EQ((GaussRat::i() * GaussRat(make_rational(-1, 4))).str(), "-1/4*i");
}

TEST(DiffPoly, Cancellation) {
  EXPECT_TRUE((coef("V4(g)") - coef("V4(g)")).is_zero());
  EXPECT_EQ(coef("V4(g) + V4(g)"), coef("2*V4(g)"));
}

TEST(DiffPoly, UndeclaredDerivationVanishes) {
  EXPECT_TRUE(coef("V1(g)").is_zero());
  EXPECT_TRUE(coef("g").derive(V1).is_zero());
}

TEST(DiffPoly, Derivatives) {
  EXPECT_TRUE(DiffPoly(1).derive(V4).is_zero());
  EXPECT_EQ(coef("g").derive(V4), coef("V4(g)"));
  DiffPoly sq = coef("V4(g)*V4(g)");
  EXPECT_EQ(sq.derive(V4b), coef("2*V4bV4(g)*V4(g)"));
  EXPECT_EQ(sq.derive(V4b), termwise_derive(sq, V4b));
}

TEST(DiffPoly, DerivationsCommute) {
  EXPECT_EQ(coef("g").derive(V4).derive(V4b), coef("g").derive(V4b).derive(V4));
  EXPECT_EQ(coef("V4V4b(g)"), coef("V4bV4(g)"));
}

TEST(DiffPoly, LeibnizAgainstTermwiseOracle) {
  const char* samples[] = {"g*g*V4(g)", "3*V4(g)*V4b(g) - i*g", "(1+i)*g*g*g + V4V4(g)*V4b(g)*V4b(g)", "1/2*g"};
  for (const char* s : samples)
    for (const Derivation& d : {V4, V4b}) EXPECT_EQ(coef(s).derive(d), termwise_derive(coef(s), d)) << s;
}

TEST(DiffPoly, ProductRule) {
  DiffPoly a = coef("g + i*V4(g)"), b = coef("V4b(g)*g - 2");
  for (const Derivation& d : {V4, V4b}) EXPECT_EQ((a * b).derive(d), a.derive(d) * b + a * b.derive(d));
}

TEST(DiffPoly, Conjugation) {
  EXPECT_EQ(DiffPoly(GaussRat::i()).conj(), DiffPoly(-GaussRat::i()));
  EXPECT_EQ(coef("V4(g)").conj(), coef("V4b(g)"));
  EXPECT_EQ(coef("g").conj(), coef("g"));
  DiffPoly p = coef("(2-i)*V4(g)*V4bV4(g) + i/3*g - 5");
  EXPECT_EQ(p.conj().conj(), p);
  EXPECT_EQ(p.derive(V4).conj(), p.conj().derive(V4b));
}

TEST(DiffPoly, ComplexFunctionConjugateIsDistinct) {
  Model m = parse_model("dim 2\nfunction h depends V1\n", "cplx");
  DiffPoly h = m.parse_form("h").coefficient(BasisForm());
  EXPECT_NE(h.conj(), h);
  EXPECT_EQ(h.conj().conj(), h);
  EXPECT_FALSE(h.conj().derive(V1).is_zero() && h.derive(V1).is_zero());
  EXPECT_TRUE(h.derive(Derivation{1, true}).is_zero());
  EXPECT_FALSE(h.conj().derive(Derivation{1, true}).is_zero());
}

TEST(DiffPoly, PrintParseRoundTrip) {
  for (const char* s : {"-1/4*i", "V4(g)*V4b(g) - 3", "(1/2 + i)*V4V4(g) + g*g"}) {
    DiffPoly p = coef(s);
    EXPECT_EQ(coef(p.str()), p) << s;
  }
}
