#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace akform;
using namespace akform::testing;

namespace {

Form T(const std::string& s) { return torus8().parse_form(s); }

/// Lambda as the adjoint of L: the alpha-coefficient of Lambda beta is <beta, L alpha>.
Form oracle_lambda(const Model& m, const BasisForm& beta) {
  Form out;
  for (const auto& a : all_monomials(m.n(), beta.degree() - 2)) out += Form(a, inner_product(Form(beta), lefschetz(m, Form(a))));
  return out;
}

}  // namespace

TEST(Lambda, MatchesAdjointOracle) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (int k = 0; k <= 8; ++k)
      for (const auto& b : all_monomials(4, k)) ASSERT_EQ(lambda_op(*m, Form(b)), oracle_lambda(*m, b));
}

TEST(Primitive, Predicates) {
  const Model& t = torus8();
  EXPECT_FALSE(is_primitive(t, t.omega()));
  EXPECT_TRUE(is_primitive(t, T("phi[2,~1,4,~4] - phi[2,~1,3,~3]")));
  EXPECT_FALSE(is_primitive(t, T("phi[2,~1,4,~4] + phi[2,~1,3,~3]")));
  EXPECT_TRUE(is_primitive(t, T("phi[1,~2]")));
  EXPECT_TRUE(is_primitive(t, T("phi[1,2]")));
  EXPECT_TRUE(is_primitive(t, Form()));
  EXPECT_THROW(is_primitive(t, T("phi[1,2,3,~1,~2]")), SemanticError);
  EXPECT_THROW(is_primitive(t, T("phi[1] + phi[1,2]")), SemanticError);
}

TEST(Primitive, DecompositionExample) {
  const Model& t = torus8();
  auto pc = primitive_decompose(t, T("2*phi[2,~1,4,~4]"));
  EXPECT_EQ(pc.source, (Bidegree{2, 2}));
  EXPECT_EQ(pc.components.size(), 3u);
  EXPECT_EQ(pc.component(1), T("-i*phi[2,~1]"));
  EXPECT_EQ(pc.component(0), T("phi[2,~1,4,~4] - phi[2,~1,3,~3]"));
  EXPECT_TRUE(pc.component(2).is_zero());
  EXPECT_EQ(reassemble(t, pc), T("2*phi[2,~1,4,~4]"));
}

TEST(Primitive, OmegaPowers) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (int k = 0; k <= 4; ++k) {
      auto pc = primitive_decompose(*m, wedge_power(m->omega(), k), Bidegree{k, k});
      for (const auto& [r, x] : pc.components) EXPECT_EQ(x, r == k ? Form(DiffPoly(1)) : Form()) << k << " " << r;
    }
}

TEST(Primitive, RangeOfR) {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      auto pc = primitive_decompose(h12xT3(), Form(), Bidegree{p, q});
      ASSERT_FALSE(pc.components.empty());
      EXPECT_EQ(pc.components.begin()->first, std::max(p + q - 4, 0));
      EXPECT_EQ(pc.components.rbegin()->first, std::min(p, q));
    }
}

TEST(Primitive, RoundTripWithSymbolicCoefficients) {
  const Model& t = torus8();
  FormSampler s(t, 99);
  for (int c = 0; c < 150; ++c) {
    Bidegree b = cycle_bidegree(4, c);
    Form f = s.homogeneous(b.p, b.q, true, 6);
    auto pc = primitive_decompose(t, f, b);
    for (const auto& [r, x] : pc.components) {
      ASSERT_TRUE(is_primitive(t, x));
      for (const auto& bb : x.bidegrees()) ASSERT_EQ(bb, (Bidegree{b.p - r, b.q - r}));
    }
    ASSERT_EQ(reassemble(t, pc), f);
  }
}

TEST(Primitive, Errors) {
  const Model& t = torus8();
  EXPECT_THROW(primitive_decompose(t, T("phi[1] + phi[~1]")), SemanticError);
  EXPECT_THROW(primitive_decompose(t, Form()), SemanticError);
  EXPECT_THROW(primitive_decompose(t, T("phi[1,~1]"), Bidegree{2, 0}), SemanticError);
}

TEST(Weil, Examples) {
  const Model& t = torus8();
  Form one(DiffPoly(1));
  EXPECT_EQ(weil_star(t, one, 0), t.vol());
  EXPECT_EQ(weil_star(t, one, 4), Form(DiffPoly(24)));
  EXPECT_EQ(weil_star(t, one, 4), hodge_star(t, wedge_power(t.omega(), 4)));
  Form beta = T("phi[2,~1,4,~4] - phi[2,~1,3,~3]");
  EXPECT_EQ(weil_star(t, beta, 0), beta);
  EXPECT_EQ(weil_star(t, beta, 0), hodge_star(t, beta));
  EXPECT_THROW(weil_star(t, t.omega(), 0), SemanticError);
  EXPECT_THROW(weil_star(t, beta, 1), SemanticError);
}

TEST(Weil, AllPrimitiveBasesAgainstStar) {
  const Model& m = h12xT3();
  FormSampler s(m, 5);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q)
      for (int t = 0; t < 4; ++t) {
        Form beta = s.primitive(p, q);
        for (int r = 0; r <= 4 - p - q; ++r) ASSERT_EQ(weil_star(m, beta, r), hodge_star(m, lefschetz(m, beta, r)));
      }
}

TEST(Lefschetz, RankPattern) {
  const Model& m = h12xT3();
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      for (int h = 0; h <= 4; ++h) {
        auto dom = bidegree_basis(4, p, q), cod = bidegree_basis(4, p + h, q + h);
        if (dom.empty() || cod.empty()) continue;
        std::vector<Vector> cols;
        for (const auto& b : dom) cols.push_back(constant_coordinates(lefschetz(m, Form(b), h), cod));
        Matrix mat(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        for (std::size_t c = 0; c < dom.size(); ++c)
          for (std::size_t r = 0; r < cod.size(); ++r) mat(static_cast<int>(r), static_cast<int>(c)) = cols[c][r];
        int rk = rank(mat);
        if (h + p + q <= 4) EXPECT_EQ(rk, static_cast<int>(dom.size())) << p << q << h;
        if (h + p + q >= 4) EXPECT_EQ(rk, static_cast<int>(cod.size())) << p << q << h;
      }
  for (const auto& r : lefschetz_rank_suite(torus8())) EXPECT_TRUE(r.pass()) << r.name << ": " << r.first_failure;
}
