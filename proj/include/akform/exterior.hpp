#pragma once

// Bigraded exterior algebra over a unitary coframe phi^1..phi^n.
//
// A basis monomial phi^I ^ conj(phi)^J is stored as two index bitmasks and is
// always kept in canonical order: holomorphic factors first, each block ascending.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "akform/scalars.hpp"

namespace akform {

using IndexMask = std::uint32_t;

inline constexpr int kMaxDim = 16;

inline std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  for (int j = 0; m != 0; ++j, m >>= 1)
    if (m & 1u) out.push_back(j + 1);
  return out;
}

inline IndexMask index_bit(int j) { return IndexMask{1} << (j - 1); }

/// Number of pairs (x in a, y in b) with x > y.
inline int inversions(IndexMask a, IndexMask b) {
  int count = 0;
  for (IndexMask rest = b; rest != 0; rest &= rest - 1) {
    int y = std::countr_zero(rest);
    count += std::popcount(y + 1 >= 32 ? IndexMask{0} : a >> (y + 1));
  }
  return count;
}

struct Bidegree {
  int p = 0;
  int q = 0;
  int degree() const { return p + q; }
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class BasisForm {
 public:
  BasisForm() = default;
  BasisForm(IndexMask holo, IndexMask anti) : holo_(holo), anti_(anti) {}

  static BasisForm from_indices(const std::vector<int>& holo, const std::vector<int>& anti) {
    IndexMask h = 0, a = 0;
    for (int j : holo) h |= index_bit(j);
    for (int j : anti) a |= index_bit(j);
    return {h, a};
  }

  IndexMask holo_mask() const { return holo_; }
  IndexMask anti_mask() const { return anti_; }
  std::vector<int> holo() const { return mask_indices(holo_); }
  std::vector<int> anti() const { return mask_indices(anti_); }
  int p() const { return std::popcount(holo_); }
  int q() const { return std::popcount(anti_); }
  int degree() const { return p() + q(); }
  Bidegree bidegree() const { return {p(), q()}; }

  /// Canonical monomial order: bidegree, then holomorphic indices lexicographically, then antiholomorphic.
  friend bool operator<(const BasisForm& a, const BasisForm& b) {
    if (a.p() != b.p()) return a.p() < b.p();
    if (a.q() != b.q()) return a.q() < b.q();
    if (a.holo_ != b.holo_) return a.holo() < b.holo();
    return a.anti() < b.anti();
  }
  friend bool operator==(const BasisForm&, const BasisForm&) = default;

 private:
  IndexMask holo_ = 0;
  IndexMask anti_ = 0;
};

/// Signed product of two canonical monomials, or nullopt when they share a factor.
inline std::optional<std::pair<int, BasisForm>> wedge_monomials(const BasisForm& a, const BasisForm& b) {
  if ((a.holo_mask() & b.holo_mask()) != 0 || (a.anti_mask() & b.anti_mask()) != 0) return std::nullopt;
  int parity = a.q() * b.p() + inversions(a.holo_mask(), b.holo_mask()) + inversions(a.anti_mask(), b.anti_mask());
  return std::pair{parity % 2 == 0 ? 1 : -1, BasisForm(a.holo_mask() | b.holo_mask(), a.anti_mask() | b.anti_mask())};
}

/// conj(phi^I ^ conj(phi)^J) = (-1)^{|I||J|} phi^J ^ conj(phi)^I.
inline std::pair<int, BasisForm> conjugate_monomial(const BasisForm& m) {
  return {(m.p() * m.q()) % 2 == 0 ? 1 : -1, BasisForm(m.anti_mask(), m.holo_mask())};
}

inline std::vector<IndexMask> subsets_of_size(int n, int k) {
  std::vector<IndexMask> out;
  if (k < 0 || k > n) return out;
  for (IndexMask m = 0; m < (IndexMask{1} << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  std::sort(out.begin(), out.end(), [](IndexMask x, IndexMask y) { return mask_indices(x) < mask_indices(y); });
  return out;
}

/// Monomial basis of Lambda^{p,q} in canonical order; empty outside 0 <= p,q <= n.
inline std::vector<BasisForm> bidegree_basis(int n, int p, int q) {
  std::vector<BasisForm> out;
  for (IndexMask h : subsets_of_size(n, p))
    for (IndexMask a : subsets_of_size(n, q)) out.emplace_back(h, a);
  return out;
}

class Form {
 public:
  using Coeffs = std::map<BasisForm, DiffPoly>;

  Form() = default;
  Form(const DiffPoly& scalar) { add_term(BasisForm(), scalar); }  // NOLINT: scalars are 0-forms
  Form(const GaussRat& scalar) : Form(DiffPoly(scalar)) {}         // NOLINT
  Form(long scalar) : Form(DiffPoly(scalar)) {}                    // NOLINT
  Form(const BasisForm& m, const DiffPoly& c = DiffPoly(1)) { add_term(m, c); }

  static Form monomial(const std::vector<int>& holo, const std::vector<int>& anti, const DiffPoly& c = DiffPoly(1)) {
    return Form(BasisForm::from_indices(holo, anti), c);
  }

  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  DiffPoly coefficient(const BasisForm& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? DiffPoly() : it->second;
  }

  void add_term(const BasisForm& m, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  /// True when every coefficient is a Gaussian rational constant.
  bool is_constant() const {
    for (const auto& [m, c] : coeffs_)
      if (!c.is_constant()) return false;
    return true;
  }

  std::vector<Bidegree> bidegrees() const {
    std::vector<Bidegree> out;
    for (const auto& [m, c] : coeffs_) {
      Bidegree b = m.bidegree();
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Bidegree> homogeneous_bidegree() const {
    auto b = bidegrees();
    if (b.size() == 1) return b.front();
    return std::nullopt;
  }

  Form& operator+=(const Form& o) {
    for (const auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
  }
  Form& operator*=(const GaussRat& c) {
    if (c.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, v] : coeffs_) v *= c;
    return *this;
  }
  Form& operator*=(const DiffPoly& c) {
    Form r;
    for (const auto& [m, v] : coeffs_) r.add_term(m, v * c);
    return *this = std::move(r);
  }
  Form operator-() const {
    Form r = *this;
    for (auto& [m, v] : r.coeffs_) v = -v;
    return r;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const GaussRat& c) { return a *= c; }
  friend Form operator*(const GaussRat& c, Form a) { return a *= c; }
  friend Form operator*(const DiffPoly& c, Form a) { return a *= c; }
  friend bool operator==(const Form& a, const Form& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

 private:
  Coeffs coeffs_;
};

inline Form wedge(const Form& f, const Form& g) {
  Form r;
  for (const auto& [mf, cf] : f.coeffs())
    for (const auto& [mg, cg] : g.coeffs()) {
      auto prod = wedge_monomials(mf, mg);
      if (!prod) continue;
      DiffPoly c = cf * cg;
      if (prod->first < 0) c = -c;
      r.add_term(prod->second, c);
    }
  return r;
}

inline Form wedge_power(const Form& f, int k) {
  Form r(1);
  for (int j = 0; j < k; ++j) r = wedge(r, f);
  return r;
}

inline Form bidegree_project(const Form& f, int p, int q) {
  Form r;
  for (const auto& [m, c] : f.coeffs())
    if (m.p() == p && m.q() == q) r.add_term(m, c);
  return r;
}

inline Form degree_project(const Form& f, int k) {
  Form r;
  for (const auto& [m, c] : f.coeffs())
    if (m.degree() == k) r.add_term(m, c);
  return r;
}

inline std::map<Bidegree, Form> bidegree_components(const Form& f) {
  std::map<Bidegree, Form> out;
  for (const auto& [m, c] : f.coeffs()) out[m.bidegree()].add_term(m, c);
  return out;
}

/// J acts on the (p,q)-component as multiplication by i^{p-q}.
inline Form j_act(const Form& f) {
  Form r;
  for (const auto& [m, c] : f.coeffs()) r.add_term(m, c * gauss_power_of_i(m.p() - m.q()));
  return r;
}

inline Form j_act_inverse(const Form& f) {
  Form r;
  for (const auto& [m, c] : f.coeffs()) r.add_term(m, c * gauss_power_of_i(m.q() - m.p()));
  return r;
}

inline Form conjugate_form(const Form& f) {
  Form r;
  for (const auto& [m, c] : f.coeffs()) {
    auto [sign, cm] = conjugate_monomial(m);
    DiffPoly cc = c.conj();
    r.add_term(cm, sign < 0 ? -cc : cc);
  }
  return r;
}

/// Splits f = sum_s s * f_s over coefficient monomials s, with each f_s coframe-constant.
inline std::map<SymbolMonomial, Form> split_by_coefficient_monomial(const Form& f) {
  std::map<SymbolMonomial, Form> out;
  for (const auto& [m, c] : f.coeffs())
    for (const auto& [sym, v] : c.terms()) out[sym].add_term(m, DiffPoly(v));
  return out;
}

inline Form multiply_by_symbols(const Form& f, const SymbolMonomial& sym) {
  DiffPoly s = DiffPoly::from_terms({{sym, GaussRat(1)}});
  return s * f;
}

}  // namespace akform
