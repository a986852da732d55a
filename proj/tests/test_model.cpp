#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace akform;
using namespace akform::testing;

TEST(Model, Torus8StructureEquations) {
  const Model& t = torus8();
  EXPECT_EQ(t.name(), "torus8");
  EXPECT_EQ(t.n(), 4);
  EXPECT_FALSE(t.invariant());
  EXPECT_EQ(t.d_phi(1), t.parse_form("V4(g)*phi[4,~1] - V4b(g)*phi[~1,~4]"));
  for (int i = 2; i <= 4; ++i) EXPECT_TRUE(t.d_phi(i).is_zero());
  EXPECT_EQ(t.d_phi_bar(1), conjugate_form(t.d_phi(1)));
}

TEST(Model, H12xT3StructureEquations) {
  const Model& h = h12xT3();
  EXPECT_TRUE(h.invariant());
  EXPECT_EQ(h.d_phi(1), h.parse_form("-i/4*phi[2,3] - i/4*phi[2,~3] + i/4*phi[3,~2] - i/4*phi[~2,~3]"));
  EXPECT_EQ(h.d_phi(2), h.parse_form("-i/4*(phi[1,3] + phi[1,~3] - phi[3,~1] + phi[~1,~3])"));
  EXPECT_TRUE(h.d_phi(3).is_zero());
  EXPECT_TRUE(h.d_phi(4).is_zero());
}

TEST(Model, OmegaAndVolume) {
  for (const Model* m : {&torus8(), &h12xT3()}) {
    EXPECT_EQ(m->omega(), m->parse_form("i*(phi[1,~1] + phi[2,~2] + phi[3,~3] + phi[4,~4])"));
    // omega^4 / 4! expanded independently with the permutation-parity wedge.
    Form top = m->omega();
    for (int k = 1; k < 4; ++k) top = oracle_wedge(top, m->omega(), 4);
    EXPECT_EQ(m->vol(), top * GaussRat(make_rational(1, 24)));
    EXPECT_EQ(m->vol(), m->parse_form("phi[1,~1,2,~2,3,~3,4,~4]"));
    EXPECT_EQ(m->vol(), m->parse_form("phi[1,2,3,4,~1,~2,~3,~4]"));
    EXPECT_EQ(m->vol_unit(), GaussRat(1));
  }
}

TEST(Model, VolumeUnitInOtherDimensions) {
  for (int n = 1; n <= 5; ++n) {
    Model m = parse_model("dim " + std::to_string(n) + "\n", "flat");
    Form top = m.omega();
    for (int k = 1; k < n; ++k) top = oracle_wedge(top, m.omega(), n);
    Rational fact = 1;
    for (int j = 2; j <= n; ++j) fact *= j;
    EXPECT_EQ(m.vol(), top * GaussRat(Rational(1) / fact));
    EXPECT_EQ(m.vol(), Form(m.top_monomial(), DiffPoly(m.vol_unit())));
  }
}

TEST(Model, ParseErrors) {
  EXPECT_THROW(parse_model("dim 4\ndphi 1 = phi[5]\n"), SemanticError);
  EXPECT_THROW(parse_model("dim 4\ndphi 1 = 0\ndphi 1 = phi[2,3]\n"), SemanticError);
  EXPECT_THROW(parse_model("dim 4\nfunction g depends W4\n"), SemanticError);
  EXPECT_THROW(parse_model("dim 4\nfunction g depends V9\n"), SemanticError);
  EXPECT_THROW(parse_model("dim 4\ndphi 1 = phi[2]\n"), SemanticError);
  EXPECT_THROW(parse_model("dphi 1 = 0\n"), SemanticError);
  EXPECT_THROW(parse_model("dim 4\nbogus 1\n"), ParseError);
  try {
    parse_model("dim 4\n\ndphi 2 = phi[1,3] + *\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_GT(e.column, 0);
  }
}

TEST(Model, CommentsAndDefaults) {
  Model m = parse_model("# comment\nname demo\ndim 3  # trailing\ndphi 3 = phi[1,2]\n");
  EXPECT_EQ(m.name(), "demo");
  EXPECT_TRUE(m.d_phi(1).is_zero());
  EXPECT_EQ(m.d_phi(3), m.parse_form("phi[1,2]"));
}

TEST(Model, PrintParseRoundTrip) {
  for (const Model* m : {&torus8(), &h12xT3()}) {
    Model again = parse_model(print_model(*m));
    EXPECT_TRUE(again == *m);
    EXPECT_EQ(print_model(again), print_model(*m));
  }
}

TEST(Model, DMatchesLeibnizOracle) {
  std::mt19937_64 rng(17);
  for (const Model* m : {&torus8(), &h12xT3()}) {
    for (int k = 0; k <= 7; ++k)
      for (const auto& b : all_monomials(4, k)) ASSERT_EQ(apply_d(*m, Form(b)), oracle_d(*m, Form(b)));
    const char* symbolic[] = {"g*phi[1,~2]", "V4(g)*V4b(g)*phi[4,~4] + i*g*phi[1]", "V4V4(g)*phi[2,3,~1]"};
    if (!m->invariant())
      for (const char* s : symbolic) EXPECT_EQ(apply_d(*m, m->parse_form(s)), oracle_d(*m, m->parse_form(s))) << s;
  }
}

TEST(Validate, BundledModels) {
  for (const Model* m : {&torus8(), &h12xT3()}) {
    ValidationReport r = validate_model(*m);
    EXPECT_TRUE(r.d_squared_all());
    EXPECT_EQ(r.d_squared_ok.size(), 4u);
    EXPECT_TRUE(r.almost_kahler);
    EXPECT_FALSE(r.integrable);
    EXPECT_TRUE(apply_d(*m, m->omega()).is_zero());
  }
  EXPECT_EQ(format_report(validate_model(h12xT3())).substr(0, 16), "d^2 phi^1: ok\nd^");
}

TEST(Validate, PerturbedModelBreaksDSquared) {
  // The literal perturbation dphi^1 = phi^{23}, dphi^2 = phi^{13} still satisfies d^2 = 0.
  Model quiet = parse_model("dim 4\ndphi 1 = phi[2,3]\ndphi 2 = phi[1,3]\n");
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(oracle_d(quiet, oracle_d(quiet, Form::monomial({i}, {}))).is_zero());
  EXPECT_TRUE(validate_model(quiet).d_squared_all());

  Model broken = parse_model("dim 4\ndphi 1 = phi[2,3]\ndphi 3 = phi[4,~4]\n");
  ValidationReport r = validate_model(broken);
  for (int i = 1; i <= 4; ++i) {
    bool oracle_ok = oracle_d(broken, oracle_d(broken, Form::monomial({i}, {}))).is_zero();
    EXPECT_EQ(r.d_squared_ok[i - 1], oracle_ok) << i;
  }
  EXPECT_FALSE(r.d_squared_ok[0]);
  EXPECT_TRUE(r.d_squared_ok[1] && r.d_squared_ok[2] && r.d_squared_ok[3]);
  EXPECT_EQ(apply_d(broken, broken.d_phi(1)), broken.parse_form("-phi[2,4,~4]"));
}

TEST(Validate, IntegrableFlatTorus) {
  Model flat = parse_model("dim 3\n");
  ValidationReport r = validate_model(flat);
  EXPECT_TRUE(r.integrable);
  EXPECT_TRUE(r.almost_kahler);
}

TEST(Model, DOmegaPowersVanish) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(apply_d(*m, wedge_power(m->omega(), k)).is_zero());
}
