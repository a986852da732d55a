#pragma once

// Coframe-constant harmonic spaces for d, del, delbar, Bott-Chern and Aeppli,
// and symbolic harmonicity checks of single forms.

#include <optional>
#include <string>
#include <vector>

#include "akform/operators.hpp"

namespace akform {

enum class HarmonicOp { D, Del, Delbar, BC, A };

inline constexpr HarmonicOp kAllHarmonicOps[] = {HarmonicOp::D, HarmonicOp::Del, HarmonicOp::Delbar, HarmonicOp::BC,
                                                 HarmonicOp::A};

inline std::string harmonic_op_name(HarmonicOp op) {
  switch (op) {
    case HarmonicOp::D: return "d";
    case HarmonicOp::Del: return "del";
    case HarmonicOp::Delbar: return "delbar";
    case HarmonicOp::BC: return "bc";
    default: return "a";
  }
}

inline HarmonicOp parse_harmonic_op(const std::string& s) {
  for (HarmonicOp op : kAllHarmonicOps)
    if (harmonic_op_name(op) == s) return op;
  throw SemanticError("unknown harmonic operator '" + s + "' (expected d, del, delbar, bc or a)");
}

struct Condition {
  std::string label;
  OperatorExpr expr;
};

struct ConditionSet {
  HarmonicOp op;
  std::vector<Condition> conditions;
};

/// Kernel conditions with the star applied to the argument, e.g. BC: del, delbar, del delbar star.
inline ConditionSet condition_set(HarmonicOp op) {
  using W = OperatorExpr::Word;
  auto c = [](std::string label, W w) { return Condition{std::move(label), OperatorExpr::word(std::move(w))}; };
  switch (op) {
    case HarmonicOp::D: return {op, {c("d", {Op::D}), c("d star", {Op::D, Op::Star})}};
    case HarmonicOp::Del: return {op, {c("del", {Op::Del}), c("delbar star", {Op::Delbar, Op::Star})}};
    case HarmonicOp::Delbar: return {op, {c("delbar", {Op::Delbar}), c("del star", {Op::Del, Op::Star})}};
    case HarmonicOp::BC:
      return {op, {c("del", {Op::Del}), c("delbar", {Op::Delbar}), c("del delbar star", {Op::Del, Op::Delbar, Op::Star})}};
    default:
      return {op, {c("del star", {Op::Del, Op::Star}), c("delbar star", {Op::Delbar, Op::Star}),
                   c("del delbar", {Op::Del, Op::Delbar})}};
  }
}

/// The same kernels phrased with codifferentials.
inline ConditionSet adjoint_condition_set(HarmonicOp op) {
  using W = OperatorExpr::Word;
  auto c = [](std::string label, W w) { return Condition{std::move(label), OperatorExpr::word(std::move(w))}; };
  switch (op) {
    case HarmonicOp::D: return {op, {c("d", {Op::D}), c("dstar", {Op::DStar})}};
    case HarmonicOp::Del: return {op, {c("del", {Op::Del}), c("delstar", {Op::DelStar})}};
    case HarmonicOp::Delbar: return {op, {c("delbar", {Op::Delbar}), c("delbarstar", {Op::DelbarStar})}};
    case HarmonicOp::BC:
      return {op, {c("del", {Op::Del}), c("delbar", {Op::Delbar}),
                   c("delbarstar delstar", {Op::DelbarStar, Op::DelStar})}};
    default:
      return {op, {c("delstar", {Op::DelStar}), c("delbarstar", {Op::DelbarStar}), c("del delbar", {Op::Del, Op::Delbar})}};
  }
}

inline Op laplacian_of(HarmonicOp op) {
  switch (op) {
    case HarmonicOp::D: return Op::LapD;
    case HarmonicOp::Del: return Op::LapDel;
    case HarmonicOp::Delbar: return Op::LapDelbar;
    case HarmonicOp::BC: return Op::LapBC;
    default: return Op::LapA;
  }
}

struct HarmonicSpace {
  std::string model;
  HarmonicOp op = HarmonicOp::D;
  Bidegree bidegree;
  std::vector<BasisForm> ambient;  // monomial basis of the bidegree
  Subspace space;                  // coordinates w.r.t. `ambient`
  bool adjoint_agrees = true;
  std::optional<bool> laplacian_agrees;  // only computed on invariant models

  int dim() const { return space.dim(); }

  std::vector<Form> basis() const {
    std::vector<Form> out;
    for (const auto& v : space.basis()) out.push_back(form_from_coordinates(v, ambient));
    return out;
  }

  /// Membership of a coframe-constant form of this bidegree.
  bool contains(const Form& f) const {
    if (f.is_zero()) return true;
    if (!f.is_constant() || f.homogeneous_bidegree() != bidegree) return false;
    return space.contains(constant_coordinates(f, ambient));
  }

  Vector coordinates_of(const Form& f) const { return constant_coordinates(f, ambient); }
};

/// Stacked Gaussian-rational matrix whose kernel is the common kernel of the expressions.
inline Matrix condition_matrix(const Model& m, const std::vector<Condition>& conds, int p, int q) {
  Matrix stacked(0, static_cast<int>(bidegree_basis(m.n(), p, q).size()));
  for (const auto& c : conds) stacked.stack(operator_matrix(m, c.expr, p, q).stacked());
  return stacked;
}

inline HarmonicSpace harmonic_space(const Model& m, HarmonicOp op, int p, int q) {
  HarmonicSpace hs;
  hs.model = m.name();
  hs.op = op;
  hs.bidegree = {p, q};
  if (p < 0 || q < 0 || p > m.n() || q > m.n()) {
    hs.space = Subspace(0);
    return hs;
  }
  hs.ambient = bidegree_basis(m.n(), p, q);
  hs.space = Subspace::null_space(condition_matrix(m, condition_set(op).conditions, p, q));
  Subspace adj = Subspace::null_space(condition_matrix(m, adjoint_condition_set(op).conditions, p, q));
  hs.adjoint_agrees = adj == hs.space;
  if (m.invariant()) {
    Matrix lap = operator_matrix(m, OperatorExpr(laplacian_of(op)), p, q).constant();
    hs.laplacian_agrees = Subspace::null_space(lap) == hs.space;
  }
  return hs;
}

struct HarmonicCheck {
  bool harmonic = true;
  std::string condition;  // label of the first nonvanishing condition
  Form value;
};

inline HarmonicCheck is_harmonic(const Model& m, const Form& f, HarmonicOp op) {
  for (const auto& c : condition_set(op).conditions) {
    Form v = apply(m, c.expr, f);
    if (!v.is_zero()) return {false, c.label, v};
  }
  return {};
}

}  // namespace akform
