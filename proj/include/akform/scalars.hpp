#pragma once

// Exact coefficients: Gaussian rationals and polynomials in formal frame
// derivatives of declared functions.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "akform/error.hpp"

namespace akform {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long re) : re_(re) {}  // NOLINT: implicit from integers is convenient
  GaussRat(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat i() { return GaussRat(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw Error("division by zero in Gaussian rationals");
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    Rational r = (re_ * o.re_ + im_ * o.im_) / norm;
    Rational m = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  /// Coefficient grammar: `3/2`, `-i`, `2/3*i`, `(1+2*i)`.
  std::string str() const {
    if (is_real()) return to_string(re_);
    std::string imag;
    if (im_ == 1)
      imag = "i";
    else if (im_ == -1)
      imag = "-i";
    else
      imag = to_string(im_) + "*i";
    if (sgn(re_) == 0) return imag;
    return "(" + to_string(re_) + (sgn(im_) > 0 ? "+" : "") + imag + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussRat& c) { return os << c.str(); }

inline GaussRat gauss_power_of_i(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return GaussRat(1);
    case 1: return GaussRat::i();
    case 2: return GaussRat(-1);
    default: return -GaussRat::i();
  }
}

/// A frame derivation V_j, or its conjugate when `bar` is set.
struct Derivation {
  int index = 0;
  bool bar = false;

  Derivation conj() const { return {index, !bar}; }
  std::string name() const { return "V" + std::to_string(index) + (bar ? "b" : ""); }

  friend bool operator==(const Derivation&, const Derivation&) = default;
  friend auto operator<=>(const Derivation& a, const Derivation& b) {
    if (a.index != b.index) return a.index <=> b.index;
    return a.bar <=> b.bar;
  }

  /// Parses `V<j>` or `V<j>b`; `n` bounds the frame index when positive.
  static Derivation parse(const std::string& text, int n = 0) {
    if (text.size() < 2 || text[0] != 'V') throw SemanticError("not a derivation name: '" + text + "'");
    std::size_t pos = 1;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == 1) throw SemanticError("not a derivation name: '" + text + "'");
    bool bar = false;
    if (pos < text.size()) {
      if (text.substr(pos) != "b") throw SemanticError("not a derivation name: '" + text + "'");
      bar = true;
    }
    int index = std::stoi(text.substr(1, pos - 1));
    if (index < 1 || (n > 0 && index > n))
      throw SemanticError("unknown derivation '" + text + "' (frame has " + std::to_string(n) + " vector fields)");
    return {index, bar};
  }
};

struct FunctionDecl {
  std::string name;
  bool real = false;
  /// Derivations that may act nontrivially; every other frame derivation annihilates the function.
  std::set<Derivation> depends;
};

using FunctionPtr = std::shared_ptr<const FunctionDecl>;

/// W(f): the derivation word W applied to f (or to its conjugate).
class DerivSymbol {
 public:
  DerivSymbol(FunctionPtr fn, bool conjugated = false, std::vector<Derivation> word = {})
      : fn_(std::move(fn)), conjugated_(conjugated && !fn_->real), word_(std::move(word)) {
    std::sort(word_.begin(), word_.end());
  }

  const FunctionDecl& function() const { return *fn_; }
  const FunctionPtr& function_ptr() const { return fn_; }
  bool conjugated() const { return conjugated_; }
  const std::vector<Derivation>& word() const { return word_; }

  /// False when some derivation in the word annihilates the function.
  bool nonzero() const {
    return std::all_of(word_.begin(), word_.end(), [&](const Derivation& d) { return acts(d); });
  }

  bool acts(const Derivation& d) const { return fn_->depends.count(conjugated_ ? d.conj() : d) > 0; }

  DerivSymbol derived(const Derivation& d) const {
    auto word = word_;
    word.push_back(d);
    return DerivSymbol(fn_, conjugated_, std::move(word));
  }

  DerivSymbol conj() const {
    std::vector<Derivation> word;
    word.reserve(word_.size());
    for (const auto& d : word_) word.push_back(d.conj());
    return DerivSymbol(fn_, !conjugated_, std::move(word));
  }

  std::string str() const {
    std::string f = (conjugated_ ? "~" : "") + fn_->name;
    if (word_.empty()) return f;
    std::string w;
    // Printed outermost-first; the word is a commuting multiset so any order reparses equal.
    for (const auto& d : word_) w += d.name();
    return w + "(" + f + ")";
  }

  friend bool operator==(const DerivSymbol& a, const DerivSymbol& b) {
    return a.fn_->name == b.fn_->name && a.conjugated_ == b.conjugated_ && a.word_ == b.word_;
  }
  friend bool operator<(const DerivSymbol& a, const DerivSymbol& b) {
    if (a.fn_->name != b.fn_->name) return a.fn_->name < b.fn_->name;
    if (a.conjugated_ != b.conjugated_) return a.conjugated_ < b.conjugated_;
    return a.word_ < b.word_;
  }

 private:
  FunctionPtr fn_;
  bool conjugated_ = false;
  std::vector<Derivation> word_;
};

/// Sorted multiset of symbols; the empty monomial is 1.
using SymbolMonomial = std::vector<DerivSymbol>;

inline SymbolMonomial multiply_monomials(const SymbolMonomial& a, const SymbolMonomial& b) {
  SymbolMonomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class DiffPoly {
 public:
  using Terms = std::map<SymbolMonomial, GaussRat>;

  DiffPoly() = default;
  DiffPoly(long c) : DiffPoly(GaussRat(c)) {}  // NOLINT
  DiffPoly(const GaussRat& c) {                  // NOLINT
    if (!c.is_zero()) terms_.emplace(SymbolMonomial{}, c);
  }
  explicit DiffPoly(const DerivSymbol& s) {
    if (s.nonzero()) terms_.emplace(SymbolMonomial{s}, GaussRat(1));
  }

  static DiffPoly from_terms(const Terms& raw) {
    DiffPoly p;
    for (const auto& [mono, c] : raw) p.add_term(mono, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  GaussRat constant_term() const {
    auto it = terms_.find(SymbolMonomial{});
    return it == terms_.end() ? GaussRat() : it->second;
  }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * mono, dropping the monomial if it contains an annihilated symbol.
  void add_term(SymbolMonomial mono, const GaussRat& c) {
    if (c.is_zero()) return;
    for (const auto& s : mono)
      if (!s.nonzero()) return;
    std::sort(mono.begin(), mono.end());
    auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  DiffPoly& operator*=(const GaussRat& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  DiffPoly operator-() const {
    DiffPoly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
  }

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    if (a.is_constant() && b.is_constant()) return DiffPoly(a.constant_term() * b.constant_term());
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(multiply_monomials(ma, mb), ca * cb);
    return r;
  }
  friend DiffPoly operator*(DiffPoly a, const GaussRat& c) { return a *= c; }
  friend DiffPoly operator*(const GaussRat& c, DiffPoly a) { return a *= c; }
  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

  /// Conjugates coefficients and sends W(f) to conj(W)(conj f).
  DiffPoly conj() const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      SymbolMonomial cm;
      cm.reserve(m.size());
      for (const auto& s : m) cm.push_back(s.conj());
      r.add_term(std::move(cm), c.conj());
    }
    return r;
  }

  /// Leibniz action of a frame derivation.
  DiffPoly derive(const Derivation& d) const {
    if (d.index < 1) throw SemanticError("unknown derivation '" + d.name() + "'");
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (k > 0 && m[k] == m[k - 1]) continue;  // repeated factors: count multiplicity once
        std::size_t mult = 1;
        while (k + mult < m.size() && m[k + mult] == m[k]) ++mult;
        DerivSymbol ds = m[k].derived(d);
        if (!ds.nonzero()) continue;
        SymbolMonomial nm;
        nm.reserve(m.size());
        for (std::size_t j = 0; j < m.size(); ++j)
          if (j != k) nm.push_back(m[j]);
        nm.push_back(std::move(ds));
        r.add_term(std::move(nm), c * GaussRat(static_cast<long>(mult)));
      }
    }
    return r;
  }

  /// Coefficient grammar, terms in canonical monomial order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      auto [negative, body] = term_body(m, c);
      if (first)
        out += negative ? "-" + body : body;
      else
        out += negative ? " - " + body : " + " + body;
      first = false;
    }
    return out;
  }

  /// Renders c*m as a sign and a body that never starts with '-'.
  static std::pair<bool, std::string> term_body(const SymbolMonomial& m, const GaussRat& c) {
    bool negative = false;
    std::string coeff;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      Rational a = abs(c.re());
      if (a != 1 || m.empty()) coeff = to_string(a);
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      Rational a = abs(c.im());
      coeff = a == 1 ? "i" : to_string(a) + "*i";
    } else {
      coeff = c.str();
    }
    std::string body = coeff;
    for (const auto& s : m) body += (body.empty() ? "" : "*") + s.str();
    return {negative, body};
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const DiffPoly& p) { return os << p.str(); }

}  // namespace akform
