#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace akform;
using namespace akform::testing;

namespace {

Form T(const std::string& s) { return torus8().parse_form(s); }
Form H(const std::string& s) { return h12xT3().parse_form(s); }

/// Kernel of a set of operator expressions, assembled from symbolic application to each basis
/// monomial; one row per (expression, coefficient monomial, form monomial).
Subspace oracle_kernel(const Model& m, const std::vector<OperatorExpr>& exprs, int p, int q) {
  auto basis = bidegree_basis(m.n(), p, q);
  std::map<std::tuple<std::size_t, SymbolMonomial, BasisForm>, Vector> rows;
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t e = 0; e < exprs.size(); ++e) {
      const Form image = apply(m, exprs[e], Form(basis[c]));
      for (const auto& [mono, coef] : image.coeffs())
        for (const auto& [sym, g] : coef.terms()) {
          auto& row = rows.try_emplace({e, sym, mono}, Vector(basis.size())).first->second;
          row[c] += g;
        }
    }
  std::vector<Vector> rr;
  for (auto& [k, v] : rows) rr.push_back(v);
  return Subspace::null_space(Matrix::from_rows(rr, static_cast<int>(basis.size())));
}

std::vector<OperatorExpr> exprs_of(HarmonicOp op) {
  std::vector<OperatorExpr> out;
  for (const auto& c : condition_set(op).conditions) out.push_back(c.expr);
  return out;
}

}  // namespace

TEST(Harmonic, ConditionTables) {
  auto labels = [](const ConditionSet& s) {
    std::vector<std::string> out;
    for (const auto& c : s.conditions) out.push_back(c.label);
    return out;
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(labels(condition_set(HarmonicOp::D)), (V{"d", "d star"}));
  EXPECT_EQ(labels(condition_set(HarmonicOp::Del)), (V{"del", "delbar star"}));
  EXPECT_EQ(labels(condition_set(HarmonicOp::Delbar)), (V{"delbar", "del star"}));
  EXPECT_EQ(labels(condition_set(HarmonicOp::BC)), (V{"del", "delbar", "del delbar star"}));
  EXPECT_EQ(labels(condition_set(HarmonicOp::A)), (V{"del star", "delbar star", "del delbar"}));
  EXPECT_EQ(parse_harmonic_op("bc"), HarmonicOp::BC);
  EXPECT_THROW(parse_harmonic_op("BC"), SemanticError);
}

TEST(Harmonic, NilmanifoldSixteen) {
  const Model& m = h12xT3();
  HarmonicSpace hs = harmonic_space(m, HarmonicOp::Delbar, 2, 2);
  EXPECT_EQ(hs.dim(), 16);
  std::vector<Form> listed;
  for (const auto& s : sixteen_delbar_harmonic_forms()) listed.push_back(H(s));
  EXPECT_EQ(form_span(listed, hs.ambient).dim(), 16);
  EXPECT_EQ(form_span(listed, hs.ambient), hs.space);
  for (HarmonicOp op : {HarmonicOp::Del, HarmonicOp::BC, HarmonicOp::A})
    EXPECT_EQ(harmonic_space(m, op, 2, 2).space, hs.space) << harmonic_op_name(op);
}

TEST(Harmonic, AgreesWithOracleKernelAndLaplacian) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (HarmonicOp op : kAllHarmonicOps)
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
          HarmonicSpace hs = harmonic_space(*m, op, p, q);
          ASSERT_EQ(hs.space, oracle_kernel(*m, exprs_of(op), p, q)) << m->name() << " " << harmonic_op_name(op) << p << q;
          ASSERT_TRUE(hs.adjoint_agrees);
          if (m->invariant()) ASSERT_TRUE(hs.laplacian_agrees.value_or(false));
          else ASSERT_FALSE(hs.laplacian_agrees.has_value());
          for (const auto& f : hs.basis()) ASSERT_TRUE(is_harmonic(*m, f, op).harmonic);
        }
}

TEST(Harmonic, Torus8Dimensions) {
  const Model& t = torus8();
  EXPECT_EQ(harmonic_space(t, HarmonicOp::D, 2, 2).dim(), 18);
  EXPECT_EQ(harmonic_space(t, HarmonicOp::Del, 2, 2).dim(), 24);
  EXPECT_EQ(harmonic_space(t, HarmonicOp::Delbar, 2, 2).dim(), 24);
  EXPECT_EQ(harmonic_space(t, HarmonicOp::BC, 2, 2).dim(), 22);
  EXPECT_EQ(harmonic_space(t, HarmonicOp::A, 2, 2).dim(), 22);
}

TEST(Harmonic, ConstantsAndDegenerateBidegrees) {
  for (const Model* m : {&torus8(), &h12xT3()}) {
    HarmonicSpace h0 = harmonic_space(*m, HarmonicOp::D, 0, 0);
    EXPECT_EQ(h0.dim(), 1);
    EXPECT_TRUE(h0.contains(Form(DiffPoly(7))));
    for (auto [p, q] : {std::pair{5, 0}, std::pair{0, 5}, std::pair{-1, 2}}) {
      HarmonicSpace z = harmonic_space(*m, HarmonicOp::BC, p, q);
      EXPECT_EQ(z.dim(), 0);
      EXPECT_TRUE(z.basis().empty());
    }
  }
}

TEST(Harmonic, BasisIsReducedEchelon) {
  HarmonicSpace hs = harmonic_space(torus8(), HarmonicOp::BC, 2, 2);
  int last_pivot = -1;
  for (const auto& v : hs.space.basis()) {
    int pivot = 0;
    while (v[pivot].is_zero()) ++pivot;
    EXPECT_GT(pivot, last_pivot);
    EXPECT_EQ(v[pivot], GaussRat(1));
    for (const auto& w : hs.space.basis())
      if (&w != &v) EXPECT_TRUE(w[pivot].is_zero());
    last_pivot = pivot;
  }
}

TEST(IsHarmonic, Torus8Witnesses) {
  const Model& t = torus8();
  auto c = is_harmonic(t, T("phi[1,2,~2,~3]"), HarmonicOp::BC);
  EXPECT_FALSE(c.harmonic);
  EXPECT_EQ(c.condition, "delbar");
  EXPECT_EQ(c.value, T("V4(g)*phi[4,~1,2,~2,~3]"));
  EXPECT_EQ(to_literal(c.value), "V4(g)*phi[2,4,~1,~2,~3]");
  EXPECT_TRUE(is_harmonic(t, T("phi[1,2,~2,~3]"), HarmonicOp::Del).harmonic);

  Form psi = T("2*phi[2,~1,4,~4]");
  EXPECT_TRUE(is_harmonic(t, psi, HarmonicOp::BC).harmonic);
  EXPECT_TRUE(is_harmonic(t, psi, HarmonicOp::Del).harmonic);
  auto a = is_harmonic(t, T("-i*phi[2,~1]"), HarmonicOp::Del);
  EXPECT_FALSE(a.harmonic);
  EXPECT_EQ(a.condition, "del");
  EXPECT_EQ(a.value, T("-i*V4b(g)*phi[2,1,~4]"));
  EXPECT_FALSE(is_harmonic(t, T("-i*phi[2,~1]"), HarmonicOp::BC).harmonic);
  EXPECT_FALSE(is_harmonic(t, T("phi[2,~1,4,~4] - phi[2,~1,3,~3]"), HarmonicOp::BC).harmonic);
}

TEST(IsHarmonic, OmegaPowers) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (HarmonicOp op : kAllHarmonicOps)
      for (int k = 0; k <= 4; ++k) EXPECT_TRUE(is_harmonic(*m, wedge_power(m->omega(), k), op).harmonic);
}

TEST(Harmonic, DualitiesAndCrossChecks) {
  for (const Model* m : {&torus8(), &h12xT3()})
    for (const auto& r : harmonic_suite(*m)) EXPECT_TRUE(r.pass()) << r.name << ": " << r.first_failure;
}

TEST(Harmonic, StarOfKernelConditions) {
  // *H_BC^{p,q} = H_A^{n-q,n-p}, checked directly on bases.
  for (const Model* m : {&torus8(), &h12xT3()})
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; q <= 4; ++q) {
        HarmonicSpace bc = harmonic_space(*m, HarmonicOp::BC, p, q);
        HarmonicSpace a = harmonic_space(*m, HarmonicOp::A, 4 - q, 4 - p);
        ASSERT_EQ(bc.dim(), a.dim());
        for (const auto& f : bc.basis()) ASSERT_TRUE(a.contains(hodge_star(*m, f)));
      }
}
