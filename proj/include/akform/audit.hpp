#pragma once

// Mechanical checks of the (k,k) harmonic structure results on a concrete model.

#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "akform/harmonic.hpp"
#include "akform/primitive.hpp"
#include "akform/validate.hpp"

namespace akform {

struct AuditClause {
  std::string label;
  bool pass = true;
  std::string detail;
};

struct AuditReport {
  std::string name;
  std::string model;
  std::vector<AuditClause> clauses;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string label, bool ok, std::string detail = {}) {
    clauses.push_back({std::move(label), ok, std::move(detail)});
  }

  std::string str() const {
    std::ostringstream out;
    out << "audit " << name << " on " << model << ": " << (pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : clauses) {
      out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.label;
      if (!c.detail.empty()) out << " -- " << c.detail;
      out << "\n";
    }
    for (const auto& n : notes) out << "  note: " << n << "\n";
    return out.str();
  }
};

inline const char* kCoframeConstantNote =
    "spaces are coframe-constant kernels of the pointwise conditions; agreement with L2 harmonicity is assumed";

inline void require_almost_kahler(const Model& m) {
  if (!validate_model(m).almost_kahler) throw SemanticError("audit needs an almost Kaehler model (d omega = 0)");
}

inline Subspace form_span(const std::vector<Form>& forms, const std::vector<BasisForm>& ambient) {
  std::vector<Vector> rows;
  for (const auto& f : forms) rows.push_back(constant_coordinates(f, ambient));
  return Subspace::span(static_cast<int>(ambient.size()), rows);
}

/// alpha^{0,0} constant and the primitivity conclusions for d alpha^{1,1}, d alpha^{2,2}.
inline AuditReport audit_kk_structure(const Model& m, HarmonicOp op, int k) {
  if (op == HarmonicOp::D) throw SemanticError("thm-kk-structure covers del, delbar, bc and a");
  if (k < 0 || k > m.n()) throw SemanticError("k must lie in 0..n");
  require_almost_kahler(m);
  AuditReport rep;
  rep.name = "thm-kk-structure(" + harmonic_op_name(op) + "," + std::to_string(k) + ")";
  rep.model = m.name();
  const int n = m.n();
  const bool full = op == HarmonicOp::BC || op == HarmonicOp::A;
  auto hs = harmonic_space(m, op, k, k);
  auto basis = hs.basis();
  int index = 0;
  for (const auto& psi : basis) {
    ++index;
    auto pc = primitive_decompose(m, psi);
    std::string tag = "basis element " + std::to_string(index);
    Form a00 = pc.component(k);
    rep.add(tag + ": alpha^{0,0} constant", a00.is_constant());
    if (pc.components.count(k - 1)) {
      Form a11 = pc.component(k - 1);
      Form da = apply_del(m, a11), dba = apply_delbar(m, a11);
      rep.add(tag + ": omega^{n-2} del alpha^{1,1} = 0", lefschetz(m, da, n - 2).is_zero());
      rep.add(tag + ": omega^{n-2} delbar alpha^{1,1} = 0", lefschetz(m, dba, n - 2).is_zero());
      if (full && n >= 3)
        rep.add(tag + ": omega^{n-3} del delbar alpha^{1,1} = 0", lefschetz(m, apply_del(m, dba), n - 3).is_zero());
    }
    if (full && n >= 4 && pc.components.count(k - 2)) {
      Form a22 = pc.component(k - 2);
      rep.add(tag + ": omega^{n-4} del delbar alpha^{2,2} = 0",
              lefschetz(m, apply_del(m, apply_delbar(m, a22)), n - 4).is_zero());
    }
  }
  rep.notes.push_back("dim H^{" + std::to_string(k) + "," + std::to_string(k) + "}_" + harmonic_op_name(op) + " = " +
                      std::to_string(hs.dim()));
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

/// H = C omega^k (+) (H cap ker L^{n-k}).
inline AuditReport audit_decomp_kk(const Model& m, HarmonicOp op, int k) {
  if (k < 0 || k > m.n()) throw SemanticError("k must lie in 0..n");
  require_almost_kahler(m);
  AuditReport rep;
  rep.name = "decomp-kk(" + harmonic_op_name(op) + "," + std::to_string(k) + ")";
  rep.model = m.name();
  auto hs = harmonic_space(m, op, k, k);
  Form wk = lefschetz(m, Form(1), k);
  rep.add("omega^k is harmonic", hs.contains(wk));
  Matrix lk = operator_matrix(m, OperatorExpr::word(std::vector<Op>(m.n() - k, Op::L)), k, k).stacked();
  Subspace kernel_l = Subspace::null_space(lk);
  Subspace part = intersect(hs.space, kernel_l);
  Subspace line = form_span({wk}, hs.ambient);
  rep.add("omega^k not in ker L^{n-k}", !kernel_l.contains(line));
  Subspace sum = line + part;
  rep.add("H = C omega^k + (H cap ker L^{n-k})", sum == hs.space,
          "dim H = " + std::to_string(hs.dim()) + ", dim(H cap ker L^{n-k}) = " + std::to_string(part.dim()));
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

/// Set of c omega^2 + omega alpha + beta with alpha in P^{1,1}, beta in P^{2,2} satisfying the
/// dimension-eight conditions, computed as its own kernel.
inline Subspace dim8_characterized_space(const Model& m, HarmonicOp op) {
  const int n = m.n();
  auto b00 = bidegree_basis(n, 0, 0), b11 = bidegree_basis(n, 1, 1), b22 = bidegree_basis(n, 2, 2);
  const int cols = static_cast<int>(b00.size() + b11.size() + b22.size());
  // Each unknown is a coordinate; every condition is linear in the unknown vector.
  struct Unknown {
    int block;
    BasisForm mono;
  };
  std::vector<Unknown> unknowns;
  for (const auto& x : b00) unknowns.push_back({0, x});
  for (const auto& x : b11) unknowns.push_back({1, x});
  for (const auto& x : b22) unknowns.push_back({2, x});

  // Conditions as functions of (c, alpha, beta), each returning a form that must vanish.
  using Cond = std::function<Form(const Form&, const Form&)>;
  auto L = [&](const Form& f) { return lefschetz(m, f); };
  std::vector<Cond> conds;
  conds.push_back([&](const Form& a, const Form&) { return lambda_op(m, a); });
  conds.push_back([&](const Form&, const Form& b) { return lambda_op(m, b); });
  auto del = [&](const Form& f) { return apply_del(m, f); };
  auto delbar = [&](const Form& f) { return apply_delbar(m, f); };
  switch (op) {
    case HarmonicOp::BC:
      conds.push_back([&](const Form& a, const Form& b) { return L(del(a)) + del(b); });
      conds.push_back([&](const Form& a, const Form&) { return delbar(a); });
      conds.push_back([&](const Form&, const Form& b) { return delbar(b); });
      break;
    case HarmonicOp::A:
      conds.push_back([&](const Form& a, const Form& b) { return L(del(a)) - del(b); });
      conds.push_back([&](const Form& a, const Form&) { return delbar(a); });
      conds.push_back([&](const Form&, const Form& b) { return delbar(b); });
      break;
    case HarmonicOp::Delbar:
      conds.push_back([&](const Form& a, const Form& b) { return L(delbar(a)) + delbar(b); });
      conds.push_back([&](const Form& a, const Form& b) { return L(del(a)) - del(b); });
      break;
    case HarmonicOp::Del:
      conds.push_back([&](const Form& a, const Form& b) { return L(del(a)) + del(b); });
      conds.push_back([&](const Form& a, const Form& b) { return L(delbar(a)) - delbar(b); });
      break;
    default: throw SemanticError("dim8-characterization covers del, delbar, bc and a");
  }
  // Assemble: one column per unknown, rows = coordinates of every condition image, split by coefficient monomial.
  using RowKey = std::tuple<std::size_t, SymbolMonomial, BasisForm>;  // condition, symbol, monomial
  std::vector<std::map<RowKey, GaussRat>> columns(cols);
  for (int c = 0; c < cols; ++c) {
    Form a, b;
    if (unknowns[c].block == 1) a = Form(unknowns[c].mono);
    if (unknowns[c].block == 2) b = Form(unknowns[c].mono);
    for (std::size_t j = 0; j < conds.size(); ++j) {
      Form v = conds[j](a, b);
      for (const auto& [mono, coeff] : v.coeffs())
        for (const auto& [sym, val] : coeff.terms()) columns[c][RowKey{j, sym, mono}] += val;
    }
  }
  std::map<RowKey, int> row_index;
  for (const auto& col : columns)
    for (const auto& [key, v] : col) row_index.emplace(key, 0);
  int r = 0;
  for (auto& [key, idx] : row_index) idx = r++;
  Matrix sys(r, cols);
  for (int c = 0; c < cols; ++c)
    for (const auto& [key, v] : columns[c]) sys(row_index[key], c) = v;
  // Map kernel vectors (c, alpha, beta) to psi = c omega^2 + omega alpha + beta.
  std::vector<Vector> images;
  for (const auto& sol : kernel(sys)) {
    Form psi;
    for (int c = 0; c < cols; ++c) {
      if (sol[c].is_zero()) continue;
      Form x(unknowns[c].mono, DiffPoly(sol[c]));
      psi += lefschetz(m, x, 2 - unknowns[c].block);
    }
    images.push_back(constant_coordinates(psi, b22));
  }
  return Subspace::span(static_cast<int>(b22.size()), images);
}

inline AuditReport audit_dim8(const Model& m, HarmonicOp op) {
  if (m.n() != 4) throw SemanticError("dim8-characterization needs complex dimension 4");
  require_almost_kahler(m);
  AuditReport rep;
  rep.name = "dim8-characterization(" + harmonic_op_name(op) + ")";
  rep.model = m.name();
  auto hs = harmonic_space(m, op, 2, 2);
  Subspace rhs = dim8_characterized_space(m, op);
  rep.add("H^{2,2} contained in characterized set", rhs.contains(hs.space));
  rep.add("characterized set contained in H^{2,2}", hs.space.contains(rhs),
          "dim H = " + std::to_string(hs.dim()) + ", dim characterized = " + std::to_string(rhs.dim()));
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

/// Elements of `big` outside `small`, drawn from the basis of `big`.
inline std::vector<Form> outside(const HarmonicSpace& big, const HarmonicSpace& small) {
  std::vector<Form> out;
  for (const auto& f : big.basis())
    if (!small.contains(f)) out.push_back(f);
  return out;
}

inline AuditReport audit_inclusion_2_2(const Model& m) {
  if (m.n() != 4) throw SemanticError("inclusion-2-2 needs complex dimension 4");
  require_almost_kahler(m);
  AuditReport rep;
  rep.name = "inclusion-2-2";
  rep.model = m.name();
  auto bc = harmonic_space(m, HarmonicOp::BC, 2, 2), del = harmonic_space(m, HarmonicOp::Del, 2, 2);
  auto a = harmonic_space(m, HarmonicOp::A, 2, 2), delbar = harmonic_space(m, HarmonicOp::Delbar, 2, 2);
  rep.add("H_bc subset of H_del", del.space.contains(bc.space));
  rep.add("H_a subset of H_delbar", delbar.space.contains(a.space));
  auto relation = [&](const HarmonicSpace& big, const HarmonicSpace& small, const std::string& what) {
    auto extra = outside(big, small);
    if (extra.empty()) {
      rep.notes.push_back(what + ": equal (dim " + std::to_string(big.dim()) + ")");
    } else {
      rep.notes.push_back(what + ": strict (dim " + std::to_string(small.dim()) + " < " + std::to_string(big.dim()) +
                          "), witness " + to_literal(extra.front()));
    }
  };
  relation(del, bc, "H_bc in H_del");
  relation(delbar, a, "H_a in H_delbar");
  for (const char* lit : {"phi[1,2,~2,~3]", "phi[1,3,~2,~3]"}) {
    Form f = m.parse_form(lit);
    if (del.contains(f) && !bc.contains(f)) rep.notes.push_back(std::string("witness in H_del minus H_bc: ") + lit);
    Form s = hodge_star(m, f);
    if (delbar.contains(s) && !a.contains(s))
      rep.notes.push_back("witness in H_delbar minus H_a: " + to_literal(s));
  }
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

/// 0 when H_bc = H_del and H_a = H_delbar, 1 when either inclusion is strict.
inline bool inclusion_2_2_strict(const Model& m) {
  auto bc = harmonic_space(m, HarmonicOp::BC, 2, 2), del = harmonic_space(m, HarmonicOp::Del, 2, 2);
  auto a = harmonic_space(m, HarmonicOp::A, 2, 2), delbar = harmonic_space(m, HarmonicOp::Delbar, 2, 2);
  return !(bc.space == del.space) || !(a.space == delbar.space);
}

struct DescentCheck {
  bool descends = true;
  std::string detail;
};

/// Whether every primitive piece L^r alpha_r of psi, and alpha_r itself, is D-harmonic.
inline DescentCheck check_descent(const Model& m, const Form& psi, HarmonicOp op) {
  auto pc = primitive_decompose(m, psi);
  DescentCheck out;
  for (const auto& [r, x] : pc.components) {
    if (x.is_zero()) continue;
    auto lifted = is_harmonic(m, lefschetz(m, x, r), op);
    auto bare = is_harmonic(m, x, op);
    if (!lifted.harmonic || !bare.harmonic) {
      out.descends = false;
      const auto& w = !bare.harmonic ? bare : lifted;
      out.detail += "r=" + std::to_string(r) + " component " + to_literal(x) + " fails " + w.condition +
                    " (value " + to_literal(w.value) + "); ";
    }
  }
  return out;
}

inline AuditReport audit_primitive_descent(const Model& m, HarmonicOp op) {
  require_almost_kahler(m);
  if (op == HarmonicOp::D) throw SemanticError("primitive-descent covers del, delbar, bc and a");
  AuditReport rep;
  rep.name = "primitive-descent(" + harmonic_op_name(op) + ")";
  rep.model = m.name();
  auto hs = harmonic_space(m, op, 2, 2);
  int index = 0;
  for (const auto& psi : hs.basis()) {
    ++index;
    auto dc = check_descent(m, psi, op);
    rep.add("basis element " + std::to_string(index) + " descends", dc.descends, dc.detail);
  }
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

/// Looks for psi in H^{2,2}_D whose primitive components are not D-harmonic.
inline AuditReport audit_primitive_non_descent(const Model& m, HarmonicOp op) {
  require_almost_kahler(m);
  if (op == HarmonicOp::D) throw SemanticError("primitive-non-descent covers del, delbar, bc and a");
  AuditReport rep;
  rep.name = "primitive-non-descent(" + harmonic_op_name(op) + ")";
  rep.model = m.name();
  auto hs = harmonic_space(m, op, 2, 2);
  std::vector<Form> candidates = hs.basis();
  for (const auto& mono : hs.ambient) {
    Form f(mono);
    if (hs.contains(f)) candidates.push_back(f);
  }
  std::optional<std::pair<Form, std::string>> found;
  for (const auto& psi : candidates) {
    auto dc = check_descent(m, psi, op);
    if (!dc.descends) {
      found = {psi, dc.detail};
      break;
    }
  }
  rep.add("some psi in H^{2,2} has non-harmonic primitive components", found.has_value(),
          found ? "psi = " + to_literal(found->first) + ": " + found->second : "every candidate descends");
  rep.notes.push_back(kCoframeConstantNote);
  return rep;
}

inline std::vector<std::string> audit_names() {
  return {"thm-kk-structure(D,k)", "decomp-kk(D,k)", "dim8-characterization(D)", "inclusion-2-2",
          "primitive-descent(D)", "primitive-non-descent(D)"};
}

/// Dispatch by textual id such as `decomp-kk(bc,2)` or `inclusion-2-2`.
inline AuditReport audit_theorem(const Model& m, const std::string& which) {
  std::string name = which, args;
  if (auto open = which.find('('); open != std::string::npos) {
    if (which.back() != ')') throw SemanticError("malformed audit id '" + which + "'");
    name = which.substr(0, open);
    args = which.substr(open + 1, which.size() - open - 2);
  }
  std::vector<std::string> parts;
  if (!args.empty()) {
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
  }
  auto arity = [&](std::size_t want) {
    if (parts.size() != want)
      throw SemanticError("audit '" + name + "' takes " + std::to_string(want) + " argument(s)");
  };
  auto as_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw SemanticError("expected an integer, got '" + s + "'");
    }
  };
  if (name == "thm-kk-structure") {
    arity(2);
    return audit_kk_structure(m, parse_harmonic_op(parts[0]), as_int(parts[1]));
  }
  if (name == "decomp-kk") {
    arity(2);
    return audit_decomp_kk(m, parse_harmonic_op(parts[0]), as_int(parts[1]));
  }
  if (name == "dim8-characterization") {
    arity(1);
    return audit_dim8(m, parse_harmonic_op(parts[0]));
  }
  if (name == "inclusion-2-2") {
    arity(0);
    return audit_inclusion_2_2(m);
  }
  if (name == "primitive-descent") {
    arity(1);
    return audit_primitive_descent(m, parse_harmonic_op(parts[0]));
  }
  if (name == "primitive-non-descent") {
    arity(1);
    return audit_primitive_non_descent(m, parse_harmonic_op(parts[0]));
  }
  throw SemanticError("unknown audit '" + which + "'");
}

}  // namespace akform
