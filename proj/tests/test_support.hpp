#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "akform/audit.hpp"
#include "akform/properties.hpp"
#include "akform/reproduce.hpp"

namespace akform::testing {

inline const Model& torus8() {
  static const Model m = load_model_file(std::string(AKFORM_MODELS_DIR) + "/torus8.ak");
  return m;
}

inline const Model& h12xT3() {
  static const Model m = load_model_file(std::string(AKFORM_MODELS_DIR) + "/h12xT3.ak");
  return m;
}

/// Factor ids: holomorphic j -> j, antiholomorphic j -> n + j. Canonical order is ascending id.
inline std::vector<int> factor_ids(const BasisForm& b, int n) {
  std::vector<int> ids = b.holo();
  for (int j : b.anti()) ids.push_back(n + j);
  return ids;
}

/// Sign of sorting a factor sequence by adjacent swaps, 0 on a repeated factor.
inline int bubble_sign(std::vector<int> ids) {
  int sign = 1;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j + 1 < ids.size() - i; ++j) {
      if (ids[j] == ids[j + 1]) return 0;
      if (ids[j] > ids[j + 1]) {
        std::swap(ids[j], ids[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < ids.size(); ++j)
    if (ids[j] == ids[j + 1]) return 0;
  return sign;
}

inline BasisForm from_ids(const std::vector<int>& ids, int n) {
  std::vector<int> h, a;
  for (int id : ids) (id <= n ? h : a).push_back(id <= n ? id : id - n);
  return BasisForm::from_indices(h, a);
}

/// Wedge by concatenating factor sequences and counting transpositions.
inline Form oracle_wedge(const Form& f, const Form& g, int n) {
  Form out;
  for (const auto& [a, ca] : f.coeffs())
    for (const auto& [b, cb] : g.coeffs()) {
      std::vector<int> ids = factor_ids(a, n), rest = factor_ids(b, n);
      ids.insert(ids.end(), rest.begin(), rest.end());
      int s = bubble_sign(ids);
      if (s == 0) continue;
      std::sort(ids.begin(), ids.end());
      DiffPoly c = ca * cb;
      out.add_term(from_ids(ids, n), s > 0 ? c : -c);
    }
  return out;
}

/// d by the Leibniz rule over factor sequences: the coefficient differential from the frame
/// pairing plus the signed sum over factors replaced by their structure 2-forms.
inline Form oracle_d(const Model& m, const Form& f) {
  const int n = m.n();
  Form out;
  for (const auto& [mono, c] : f.coeffs()) {
    Form body(mono);
    for (int j = 1; j <= n; ++j) {
      out += oracle_wedge(Form::monomial({j}, {}, c.derive(Derivation{j, false})), body, n);
      out += oracle_wedge(Form::monomial({}, {j}, c.derive(Derivation{j, true})), body, n);
    }
    std::vector<int> ids = factor_ids(mono, n);
    for (std::size_t s = 0; s < ids.size(); ++s) {
      Form left(DiffPoly(1)), right(DiffPoly(1));
      for (std::size_t t = 0; t < s; ++t) left = oracle_wedge(left, Form(from_ids({ids[t]}, n)), n);
      for (std::size_t t = s + 1; t < ids.size(); ++t) right = oracle_wedge(right, Form(from_ids({ids[t]}, n)), n);
      Form mid = ids[s] <= n ? m.d_phi(ids[s]) : m.d_phi_bar(ids[s] - n);
      Form term = c * oracle_wedge(oracle_wedge(left, mid, n), right, n);
      out += s % 2 ? -term : term;
    }
  }
  return out;
}

inline std::vector<BasisForm> all_monomials(int n, int degree) {
  std::vector<BasisForm> out;
  for (int p = 0; p <= degree; ++p)
    for (const auto& b : bidegree_basis(n, p, degree - p)) out.push_back(b);
  return out;
}

inline GaussRat random_gauss(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return GaussRat(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
}

/// Random constant-coefficient form of bidegree (p,q) with up to `terms` monomials.
inline Form random_form(std::mt19937_64& rng, int n, int p, int q, int terms = 4) {
  auto basis = bidegree_basis(n, p, q);
  Form f;
  if (basis.empty()) return f;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int t = 0; t < terms; ++t) f += Form(basis[pick(rng)], DiffPoly(random_gauss(rng)));
  return f;
}

}  // namespace akform::testing
