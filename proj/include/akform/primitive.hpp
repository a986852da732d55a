#pragma once

// Primitivity, the Lefschetz decomposition f = sum_r L^r x_r with Lambda x_r = 0,
// and the closed-form star of L^r beta for primitive beta.

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "akform/operators.hpp"

namespace akform {

inline bool is_primitive(const Model& m, const Form& f) {
  if (f.is_zero()) return true;
  int k = f.coeffs().begin()->first.degree();
  for (const auto& [mono, c] : f.coeffs())
    if (mono.degree() != k) throw SemanticError("primitivity needs a form of a single degree");
  if (k > m.n()) throw SemanticError("primitivity is defined for degree <= n, got degree " + std::to_string(k));
  bool by_lambda = lambda_op(m, f).is_zero();
  bool by_power = lefschetz(m, f, m.n() - k + 1).is_zero();
  if (by_lambda != by_power) throw std::logic_error("Lambda and L^{n-k+1} primitivity tests disagree");
  return by_lambda;
}

struct PrimitiveComponents {
  Bidegree source;
  /// r -> primitive component of bidegree (p-r, q-r), every admissible r present.
  std::map<int, Form> components;

  Form component(int r) const {
    auto it = components.find(r);
    return it == components.end() ? Form() : it->second;
  }
};

inline int primitive_r_min(int n, int p, int q) { return std::max(p + q - n, 0); }
inline int primitive_r_max(int p, int q) { return std::min(p, q); }

namespace detail {

/// Linear map f -> (x_rmin, ..., x_rmax) on coframe-constant (p,q)-forms. Depends only on n.
struct DecompositionSolver {
  std::vector<BasisForm> source_basis;
  std::vector<int> rs;
  std::vector<std::vector<BasisForm>> target_bases;
  Matrix solve;  // rows: concatenated target coordinates, cols: source coordinates
};

inline DecompositionSolver build_solver(const Model& m, int p, int q) {
  const int n = m.n();
  DecompositionSolver s;
  s.source_basis = bidegree_basis(n, p, q);
  int unknowns = 0;
  for (int r = primitive_r_min(n, p, q); r <= primitive_r_max(p, q); ++r) {
    s.rs.push_back(r);
    s.target_bases.push_back(bidegree_basis(n, p - r, q - r));
    unknowns += static_cast<int>(s.target_bases.back().size());
  }
  const int nf = static_cast<int>(s.source_basis.size());
  // Rows: f-equations, then Lambda x_r = 0 for every r. Columns: unknowns | identity on f rows.
  std::vector<Vector> rows;
  std::vector<std::vector<BasisForm>> lambda_bases;
  for (std::size_t t = 0; t < s.rs.size(); ++t) {
    int r = s.rs[t];
    lambda_bases.push_back(bidegree_basis(n, p - r - 1, q - r - 1));
  }
  int lambda_rows = 0;
  for (const auto& b : lambda_bases) lambda_rows += static_cast<int>(b.size());
  Matrix aug(nf + lambda_rows, unknowns + nf);
  int col = 0;
  int lrow = nf;
  std::vector<int> lambda_offset;
  for (std::size_t t = 0; t < s.rs.size(); ++t) {
    lambda_offset.push_back(lrow);
    lrow += static_cast<int>(lambda_bases[t].size());
  }
  for (std::size_t t = 0; t < s.rs.size(); ++t) {
    for (const auto& mono : s.target_bases[t]) {
      Form x(mono);
      Vector up = constant_coordinates(lefschetz(m, x, s.rs[t]), s.source_basis);
      for (int r = 0; r < nf; ++r) aug(r, col) = up[r];
      if (!lambda_bases[t].empty()) {
        Vector down = constant_coordinates(lambda_op(m, x), lambda_bases[t]);
        for (std::size_t r = 0; r < down.size(); ++r) aug(lambda_offset[t] + static_cast<int>(r), col) = down[r];
      }
      ++col;
    }
  }
  for (int r = 0; r < nf; ++r) aug(r, unknowns + r) = GaussRat(1);
  std::vector<int> pivots = rref_in_place(aug);
  for (int k = 0; k < unknowns; ++k)
    if (k >= static_cast<int>(pivots.size()) || pivots[k] != k)
      throw std::logic_error("primitive decomposition system is singular");
  if (static_cast<int>(pivots.size()) != unknowns)
    throw std::logic_error("primitive decomposition system is inconsistent");
  s.solve = Matrix(unknowns, nf);
  for (int k = 0; k < unknowns; ++k)
    for (int c = 0; c < nf; ++c) s.solve(k, c) = aug(k, unknowns + c);
  return s;
}

inline const DecompositionSolver& solver_for(const Model& m, int p, int q) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, DecompositionSolver> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(m.n(), p, q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_solver(m, p, q)).first;
  return it->second;
}

}  // namespace detail

inline PrimitiveComponents primitive_decompose(const Model& m, const Form& f, std::optional<Bidegree> bidegree = {}) {
  if (!f.is_zero() && !f.homogeneous_bidegree())
    throw SemanticError("primitive decomposition needs a form of a single bidegree");
  if (f.is_zero() && !bidegree) throw SemanticError("bidegree of the zero form must be given");
  Bidegree b = f.is_zero() ? *bidegree : *f.homogeneous_bidegree();
  if (bidegree && *bidegree != b) throw SemanticError("form does not have the requested bidegree");
  const auto& s = detail::solver_for(m, b.p, b.q);
  PrimitiveComponents out;
  out.source = b;
  for (int r : s.rs) out.components[r] = Form();
  for (const auto& [sym, part] : split_by_coefficient_monomial(f)) {
    Vector x = s.solve.apply(constant_coordinates(part, s.source_basis));
    std::size_t offset = 0;
    for (std::size_t t = 0; t < s.rs.size(); ++t) {
      Vector piece(x.begin() + offset, x.begin() + offset + s.target_bases[t].size());
      offset += s.target_bases[t].size();
      out.components[s.rs[t]] += multiply_by_symbols(form_from_coordinates(piece, s.target_bases[t]), sym);
    }
  }
  Form rebuilt;
  for (const auto& [r, x] : out.components) {
    if (!lambda_op(m, x).is_zero()) throw std::logic_error("primitive decomposition produced a non-primitive component");
    rebuilt += lefschetz(m, x, r);
  }
  if (rebuilt != f) throw std::logic_error("primitive decomposition does not reassemble the input");
  return out;
}

inline Form reassemble(const Model& m, const PrimitiveComponents& pc) {
  Form f;
  for (const auto& [r, x] : pc.components) f += lefschetz(m, x, r);
  return f;
}

inline Rational factorial(int k) {
  Rational r = 1;
  for (int j = 2; j <= k; ++j) r *= j;
  return r;
}

/// *L^r beta = (-1)^{k(k+1)/2} r!/(n-k-r)! L^{n-k-r} J beta for primitive beta of degree k.
inline Form weil_star(const Model& m, const Form& beta, int r) {
  if (!is_primitive(m, beta)) throw SemanticError("weil_star needs a primitive form");
  int k = beta.is_zero() ? 0 : beta.coeffs().begin()->first.degree();
  if (r < 0 || r > m.n() - k)
    throw SemanticError("Lefschetz power r=" + std::to_string(r) + " out of range 0.." + std::to_string(m.n() - k));
  Rational c = factorial(r) / factorial(m.n() - k - r);
  if ((k * (k + 1) / 2) % 2 == 1) c = -c;
  return lefschetz(m, j_act(beta), m.n() - k - r) * GaussRat(c);
}

}  // namespace akform
