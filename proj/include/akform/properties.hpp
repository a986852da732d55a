#pragma once

// Random form generators and the randomized identity suites shared by `akform selftest`
// and the acceptance tests.

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "akform/harmonic.hpp"
#include "akform/primitive.hpp"
#include "akform/validate.hpp"

namespace akform {

class FormSampler {
 public:
  FormSampler(const Model& m, std::uint64_t seed) : m_(m), rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  GaussRat gauss() {
    auto part = [&] { return make_rational(uniform(-4, 4), uniform(1, 3)); };
    GaussRat g(part(), uniform(0, 1) ? part() : Rational(0));
    return g.is_zero() ? GaussRat(1) : g;
  }

  /// A constant, or with symbolic=true and a model that declares functions, possibly a
  /// short polynomial in derivative symbols.
  DiffPoly coefficient(bool symbolic) {
    DiffPoly c(gauss());
    if (!symbolic || m_.functions().empty() || uniform(0, 2) == 0) return c;
    for (int t = uniform(1, 2); t > 0; --t) {
      auto it = m_.functions().begin();
      std::advance(it, uniform(0, static_cast<int>(m_.functions().size()) - 1));
      const auto& fn = it->second;
      std::vector<Derivation> pool(fn->depends.begin(), fn->depends.end());
      std::vector<Derivation> word;
      for (int w = pool.empty() ? 0 : uniform(0, 2); w > 0; --w) word.push_back(pool[uniform(0, static_cast<int>(pool.size()) - 1)]);
      bool conjugated = !fn->real && uniform(0, 1);
      DiffPoly sym(DerivSymbol(fn, conjugated, word));
      c += sym * gauss();
    }
    return c;
  }

  Form homogeneous(int p, int q, bool symbolic, int max_terms = 6) {
    auto basis = bidegree_basis(m_.n(), p, q);
    Form f;
    if (basis.empty()) return f;
    for (int t = uniform(1, max_terms); t > 0; --t)
      f.add_term(basis[uniform(0, static_cast<int>(basis.size()) - 1)], coefficient(symbolic));
    return f;
  }

  Form mixed(bool symbolic) {
    Form f;
    for (int t = uniform(1, 3); t > 0; --t) {
      int p = uniform(0, m_.n()), q = uniform(0, m_.n());
      f += homogeneous(p, q, symbolic, 3);
    }
    return f;
  }

  /// Random primitive form of bidegree (p,q), p+q <= n.
  Form primitive(int p, int q, bool symbolic = false) {
    for (;;) {
      Form f = homogeneous(p, q, symbolic);
      Form x = primitive_decompose(m_, f, Bidegree{p, q}).component(0);
      if (!x.is_zero() || bidegree_basis(m_.n(), p, q).empty()) return x;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  const Model& m_;
  std::mt19937_64 rng_;
};

struct PropertyResult {
  std::string name;
  std::string model;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool pass() const { return failures == 0 && cases > 0; }
};

/// Runs `body` for `cases` iterations; body returns an empty string on success, a description otherwise.
inline PropertyResult run_property(const std::string& name, const Model& m, int cases,
                                   const std::function<std::string(int)>& body) {
  PropertyResult r;
  r.name = name;
  r.model = m.name();
  auto t0 = std::chrono::steady_clock::now();
  for (int c = 0; c < cases; ++c) {
    std::string err = body(c);
    ++r.cases;
    if (!err.empty()) {
      if (r.failures++ == 0) r.first_failure = err;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string expect_zero(const Form& f, const Form& input) {
  if (f.is_zero()) return {};
  return "input " + to_literal(input) + " gives " + to_literal(f);
}

inline std::string expect_equal(const Form& a, const Form& b, const Form& input) {
  if (a == b) return {};
  return "input " + to_literal(input) + ": " + to_literal(a) + " != " + to_literal(b);
}

/// Cycles through all bidegrees so every (p,q) window is hit.
inline Bidegree cycle_bidegree(int n, int c) {
  int side = n + 1;
  return {c % side, (c / side) % side};
}

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  int cases = 200;
};

/// d^2 = 0, the seven bigraded relations, d^c, star involution, L/Lambda adjointness,
/// [Lambda, delbar] = -i del^* and *lapBC = lapA * on random forms.
inline std::vector<PropertyResult> operator_identity_suite(const Model& m, const SuiteOptions& opt) {
  std::vector<PropertyResult> out;
  const int n = m.n();
  const bool symbolic = !m.functions().empty();
  FormSampler s(m, opt.seed);
  auto hom = [&](int c) {
    Bidegree b = cycle_bidegree(n, c);
    return s.homogeneous(b.p, b.q, symbolic);
  };

  out.push_back(run_property("d^2 = 0", m, opt.cases, [&](int) {
    Form f = s.mixed(symbolic);
    return expect_zero(apply_d(m, apply_d(m, f)), f);
  }));

  struct Rel {
    const char* name;
    std::function<Form(const Form&)> lhs;
  };
  auto mu = [&](const Form& f) { return apply_mu(m, f); };
  auto del = [&](const Form& f) { return apply_del(m, f); };
  auto dbar = [&](const Form& f) { return apply_delbar(m, f); };
  auto mub = [&](const Form& f) { return apply_mubar(m, f); };
  std::vector<Rel> rels = {
      {"mu mu = 0", [&](const Form& f) { return mu(mu(f)); }},
      {"mu del + del mu = 0", [&](const Form& f) { return mu(del(f)) + del(mu(f)); }},
      {"del del + mu delbar + delbar mu = 0", [&](const Form& f) { return del(del(f)) + mu(dbar(f)) + dbar(mu(f)); }},
      {"del delbar + delbar del + mu mubar + mubar mu = 0",
       [&](const Form& f) { return del(dbar(f)) + dbar(del(f)) + mu(mub(f)) + mub(mu(f)); }},
      {"delbar delbar + mubar del + del mubar = 0",
       [&](const Form& f) { return dbar(dbar(f)) + mub(del(f)) + del(mub(f)); }},
      {"mubar delbar + delbar mubar = 0", [&](const Form& f) { return mub(dbar(f)) + dbar(mub(f)); }},
      {"mubar mubar = 0", [&](const Form& f) { return mub(mub(f)); }},
  };
  for (const auto& rel : rels)
    out.push_back(run_property(rel.name, m, opt.cases, [&](int c) {
      Form f = hom(c);
      return expect_zero(rel.lhs(f), f);
    }));

  out.push_back(run_property("dc = i(mu - del + delbar - mubar)", m, opt.cases, [&](int c) {
    Form f = hom(c);
    Form rhs = (mu(f) - del(f) + dbar(f) - mub(f)) * GaussRat::i();
    return expect_equal(dc_op(m, f), rhs, f);
  }));

  out.push_back(run_property("star star = (-1)^k", m, opt.cases, [&](int c) {
    Form f = hom(c);
    int k = cycle_bidegree(n, c).degree();
    Form ss = hodge_star(m, hodge_star(m, f));
    return expect_equal(ss, k % 2 == 0 ? f : -f, f);
  }));

  out.push_back(run_property("<L a, b> = <a, Lambda b>", m, opt.cases, [&](int c) {
    Bidegree b = cycle_bidegree(n, c);
    Form a = s.homogeneous(b.p, b.q, false);
    Form beta = s.homogeneous(b.p + 1, b.q + 1, false);
    DiffPoly lhs = inner_product(lefschetz(m, a), beta), rhs = inner_product(a, lambda_op(m, beta));
    if (lhs == rhs) return std::string();
    return "a = " + to_literal(a) + ", b = " + to_literal(beta) + ": " + lhs.str() + " != " + rhs.str();
  }));

  if (validate_model(m).almost_kahler)
    out.push_back(run_property("[Lambda, delbar] = -i delstar", m, opt.cases, [&](int c) {
      Form f = hom(c);
      Form lhs = lambda_op(m, dbar(f)) - dbar(lambda_op(m, f));
      Form rhs = codifferential(m, f, Codiff::Del) * (-GaussRat::i());
      return expect_equal(lhs, rhs, f);
    }));

  out.push_back(run_property("star lapBC = lapA star", m, opt.cases, [&](int c) {
    Form f = hom(c);
    return expect_equal(hodge_star(m, apply_op(m, Op::LapBC, f)), apply_op(m, Op::LapA, hodge_star(m, f)), f);
  }));
  return out;
}

/// Operator identities as exact matrices on every bidegree (coframe-constant span).
inline std::vector<PropertyResult> operator_matrix_suite(const Model& m) {
  std::vector<PropertyResult> out;
  const int n = m.n();
  auto zero_on_all = [&](const std::string& name, const OperatorExpr& e) {
    return run_property(name + " (matrix, all bidegrees)", m, (n + 1) * (n + 1), [&](int c) {
      Bidegree b = cycle_bidegree(n, c);
      auto om = operator_matrix(m, e, b.p, b.q);
      for (const auto& row : om.entries)
        for (const auto& v : row)
          if (!v.is_zero())
            return "bidegree (" + std::to_string(b.p) + "," + std::to_string(b.q) + ") entry " + v.str();
      return std::string();
    });
  };
  using E = OperatorExpr;
  E mu = Op::Mu, del = Op::Del, dbar = Op::Delbar, mub = Op::Mubar;
  out.push_back(zero_on_all("d^2 = 0", E(Op::D) * E(Op::D)));
  out.push_back(zero_on_all("mu mu = 0", mu * mu));
  out.push_back(zero_on_all("mu del + del mu = 0", mu * del + del * mu));
  out.push_back(zero_on_all("del del + mu delbar + delbar mu = 0", del * del + mu * dbar + dbar * mu));
  out.push_back(zero_on_all("del delbar + delbar del + mu mubar + mubar mu = 0",
                            del * dbar + dbar * del + mu * mub + mub * mu));
  out.push_back(zero_on_all("delbar delbar + mubar del + del mubar = 0", dbar * dbar + mub * del + del * mub));
  out.push_back(zero_on_all("mubar delbar + delbar mubar = 0", mub * dbar + dbar * mub));
  out.push_back(zero_on_all("mubar mubar = 0", mub * mub));
  out.push_back(zero_on_all("dc = i(mu - del + delbar - mubar)",
                            E(Op::Dc) - GaussRat::i() * (mu - del + dbar - mub)));
  if (validate_model(m).almost_kahler)
    out.push_back(zero_on_all("[Lambda, delbar] = -i delstar",
                              E(Op::Lam) * dbar - dbar * E(Op::Lam) + GaussRat::i() * E(Op::DelStar)));
  out.push_back(zero_on_all("star lapBC = lapA star", E(Op::Star) * E(Op::LapBC) - E(Op::LapA) * E(Op::Star)));
  out.push_back(zero_on_all("lapBC star = star lapA", E(Op::LapBC) * E(Op::Star) - E(Op::Star) * E(Op::LapA)));
  return out;
}

/// Weil formula against star(L^r beta), and the termwise star of a (2,2)-form through its decomposition.
inline std::vector<PropertyResult> weil_suite(const Model& m, const SuiteOptions& opt) {
  std::vector<PropertyResult> out;
  const int n = m.n();
  FormSampler s(m, opt.seed + 1);
  std::vector<Bidegree> windows;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; p + q <= n; ++q) windows.push_back({p, q});
  out.push_back(run_property("weil_star = star L^r", m, std::max(opt.cases / 2, 100), [&](int c) {
    Bidegree b = windows[c % windows.size()];
    Form beta = s.primitive(b.p, b.q);
    int k = b.p + b.q;
    std::string err;
    for (int r = 0; r <= n - k && err.empty(); ++r)
      err = expect_equal(weil_star(m, beta, r), hodge_star(m, lefschetz(m, beta, r)), beta);
    return err;
  }));
  if (n >= 2)
    out.push_back(run_property("star psi termwise for (k,k) psi", m, std::max(opt.cases / 2, 100), [&](int) {
      const int k = std::min(2, n / 2);
      Form psi = s.homogeneous(k, k, false, 12);
      auto pc = primitive_decompose(m, psi, Bidegree{k, k});
      Form expansion;
      for (const auto& [r, a] : pc.components) {
        int mm = k - r;
        Rational coef = factorial(k - mm) / factorial(n - k - mm);
        if (mm % 2 == 1) coef = -coef;
        expansion += lefschetz(m, a, n - k - mm) * GaussRat(coef);
      }
      return expect_equal(hodge_star(m, psi), expansion, psi);
    }));
  return out;
}

/// L^h on Lambda^{p,q}: injective iff h + p + q <= n, surjective iff h + p + q >= n.
inline std::vector<PropertyResult> lefschetz_rank_suite(const Model& m) {
  const int n = m.n();
  std::vector<PropertyResult> out;
  out.push_back(run_property("L^h injective for h+k<=n, surjective for h+k>=n", m, (n + 1) * (n + 1), [&](int c) {
    Bidegree b = cycle_bidegree(n, c);
    std::string err;
    for (int h = 0; h <= n + 1; ++h) {
      auto om = operator_matrix(m, OperatorExpr::word(std::vector<Op>(h, Op::L)), b.p, b.q);
      int rk = om.rows() == 0 ? 0 : rank(om.constant());
      int k = b.degree();
      bool injective = rk == om.cols(), surjective = rk == om.rows();
      if (h + k <= n && !injective) err += "L^" + std::to_string(h) + " not injective; ";
      if (h + k >= n && !surjective) err += "L^" + std::to_string(h) + " not surjective; ";
    }
    if (!err.empty()) err = "bidegree (" + std::to_string(b.p) + "," + std::to_string(b.q) + "): " + err;
    return err;
  }));
  return out;
}

/// decompose then reassemble is the identity, per bidegree window.
inline std::vector<PropertyResult> decomposition_suite(const Model& m, const SuiteOptions& opt, int per_window) {
  const int n = m.n();
  std::vector<PropertyResult> out;
  FormSampler s(m, opt.seed + 2);
  const bool symbolic = !m.functions().empty();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      std::string name = "round trip (" + std::to_string(p) + "," + std::to_string(q) + ")";
      out.push_back(run_property(name, m, per_window, [&](int c) {
        Form f = s.homogeneous(p, q, symbolic && c % 2 == 1, 10);
        auto pc = primitive_decompose(m, f, Bidegree{p, q});
        for (const auto& [r, x] : pc.components)
          if (!x.is_zero() && (x.homogeneous_bidegree() != Bidegree{p - r, q - r} || !lambda_op(m, x).is_zero()))
            return "component r=" + std::to_string(r) + " of " + to_literal(f) + " is not primitive of bidegree (p-r,q-r)";
        return expect_equal(reassemble(m, pc), f, f);
      }));
    }
  return out;
}

/// Dimensions of the coframe-constant harmonic spaces agree across the two formulations and,
/// on invariant models, with the Laplacian kernel; plus the star dualities.
inline std::vector<PropertyResult> harmonic_suite(const Model& m) {
  const int n = m.n();
  std::vector<PropertyResult> out;
  out.push_back(run_property("condition sets agree (all bidegrees, all D)", m, (n + 1) * (n + 1), [&](int c) {
    Bidegree b = cycle_bidegree(n, c);
    std::string err;
    for (HarmonicOp op : kAllHarmonicOps) {
      auto hs = harmonic_space(m, op, b.p, b.q);
      if (!hs.adjoint_agrees) err += harmonic_op_name(op) + ": adjoint form differs; ";
      if (hs.laplacian_agrees && !*hs.laplacian_agrees) err += harmonic_op_name(op) + ": Laplacian kernel differs; ";
    }
    return err;
  }));
  out.push_back(run_property("star maps H_bc^{p,q} onto H_a^{n-q,n-p}", m, (n + 1) * (n + 1), [&](int c) {
    Bidegree b = cycle_bidegree(n, c);
    auto bc = harmonic_space(m, HarmonicOp::BC, b.p, b.q);
    auto a = harmonic_space(m, HarmonicOp::A, n - b.q, n - b.p);
    std::vector<Form> images;
    for (const auto& f : bc.basis()) images.push_back(hodge_star(m, f));
    if (bc.dim() != a.dim()) return std::string("dimension mismatch");
    for (const auto& f : images)
      if (!a.contains(f)) return "star of " + to_literal(f) + " not Aeppli harmonic";
    return std::string();
  }));
  if (m.invariant())
    out.push_back(run_property("star conj maps H_delbar^{p,q} onto H_delbar^{n-q,n-p}", m, (n + 1) * (n + 1), [&](int c) {
      Bidegree b = cycle_bidegree(n, c);
      auto src = harmonic_space(m, HarmonicOp::Delbar, b.p, b.q);
      auto dst = harmonic_space(m, HarmonicOp::Delbar, n - b.p, n - b.q);
      // star(conj psi) has bidegree (n-p, n-q).
      if (src.dim() != dst.dim()) return std::string("dimension mismatch");
      for (const auto& f : src.basis())
        if (!dst.contains(hodge_star(m, conjugate_form(f)))) return "image of " + to_literal(f) + " not harmonic";
      return std::string();
    }));
  return out;
}

}  // namespace akform
