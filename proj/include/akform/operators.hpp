#pragma once

// Operator calculus on a model: d and its bigraded pieces mu, del, delbar, mubar,
// the Hodge star, codifferentials, Lefschetz L / Lambda, J, d^c and the Laplacians.

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "akform/linalg.hpp"
#include "akform/model.hpp"

namespace akform {

/// Frame differential of a coefficient: sum_j V_j(c) phi^j + conj(V_j)(c) conj(phi)^j.
inline Form coefficient_differential(const Model& m, const DiffPoly& c) {
  Form r;
  if (c.is_constant()) return r;
  for (int j = 1; j <= m.n(); ++j) {
    r.add_term(BasisForm::from_indices({j}, {}), c.derive({j, false}));
    r.add_term(BasisForm::from_indices({}, {j}), c.derive({j, true}));
  }
  return r;
}

inline Form apply_d(const Model& m, const Form& f) {
  Form r;
  for (const auto& [mono, c] : f.coeffs()) {
    if (!c.is_constant()) r += wedge(coefficient_differential(m, c), Form(mono));
    const Form& dm = m.d_monomial(mono);
    if (!dm.is_zero()) r += c * dm;
  }
  return r;
}

enum class DPart { Mu, Del, Delbar, Mubar };

inline Bidegree shift(DPart part, Bidegree b) {
  switch (part) {
    case DPart::Mu: return {b.p + 2, b.q - 1};
    case DPart::Del: return {b.p + 1, b.q};
    case DPart::Delbar: return {b.p, b.q + 1};
    default: return {b.p - 1, b.q + 2};
  }
}

/// One bigraded component of d, applied to each bidegree component of f.
inline Form apply_d_part(const Model& m, const Form& f, DPart part) {
  Form r;
  for (const auto& [b, comp] : bidegree_components(f)) {
    Bidegree t = shift(part, b);
    if (t.p < 0 || t.q < 0 || t.p > m.n() || t.q > m.n()) continue;
    r += bidegree_project(apply_d(m, comp), t.p, t.q);
  }
  return r;
}

inline Form apply_mu(const Model& m, const Form& f) { return apply_d_part(m, f, DPart::Mu); }
inline Form apply_del(const Model& m, const Form& f) { return apply_d_part(m, f, DPart::Del); }
inline Form apply_delbar(const Model& m, const Form& f) { return apply_d_part(m, f, DPart::Delbar); }
inline Form apply_mubar(const Model& m, const Form& f) { return apply_d_part(m, f, DPart::Mubar); }

struct DSplit {
  Form mu, del, delbar, mubar;
};

/// The four components of d on a form of pure bidegree.
inline DSplit split_d(const Model& m, const Form& f) {
  if (!f.is_zero() && !f.homogeneous_bidegree())
    throw SemanticError("split_d needs a form of a single bidegree; project it first");
  DSplit s;
  if (f.is_zero()) return s;
  Bidegree b = *f.homogeneous_bidegree();
  Form df = apply_d(m, f);
  auto pick = [&](DPart part) {
    Bidegree t = shift(part, b);
    return bidegree_project(df, t.p, t.q);
  };
  s.mu = pick(DPart::Mu);
  s.del = pick(DPart::Del);
  s.delbar = pick(DPart::Delbar);
  s.mubar = pick(DPart::Mubar);
  return s;
}

/// Hodge star of one basis monomial, solved from  mono' ^ *conj(mono') = vol  with unit-norm monomials.
inline std::pair<GaussRat, BasisForm> star_monomial(const Model& m, const BasisForm& mono) {
  const IndexMask full = (IndexMask{1} << m.n()) - 1;
  auto [sigma, conj_mono] = conjugate_monomial(mono);  // mono = sigma * conj(conj_mono)
  BasisForm complement(full & ~conj_mono.holo_mask(), full & ~conj_mono.anti_mask());
  auto prod = wedge_monomials(conj_mono, complement);
  // conj_mono ^ complement = s * top; need conj_mono ^ (x * complement) = vol_unit * top.
  GaussRat x = m.vol_unit() * GaussRat(prod->first);
  if (sigma < 0) x = -x;
  return {x, complement};
}

inline Form hodge_star(const Model& m, const Form& f) {
  Form r;
  for (const auto& [mono, c] : f.coeffs()) {
    auto [x, target] = star_monomial(m, mono);
    r.add_term(target, c * x);
  }
  return r;
}

/// Inverse star: (-1)^k * on k-forms.
inline Form hodge_star_inverse(const Model& m, const Form& f) {
  Form r;
  for (const auto& [mono, c] : f.coeffs()) {
    auto [x, target] = star_monomial(m, mono);
    r.add_term(target, mono.degree() % 2 == 0 ? c * x : -(c * x));
  }
  return r;
}

enum class Codiff { D, Mu, Del, Delbar, Mubar };

/// Pointwise formal adjoints: d* = -*d*, mu* = -*mubar*, del* = -*delbar*, delbar* = -*del*, mubar* = -*mu*.
inline Form codifferential(const Model& m, const Form& f, Codiff which) {
  Form s = hodge_star(m, f);
  Form inner;
  switch (which) {
    case Codiff::D: inner = apply_d(m, s); break;
    case Codiff::Mu: inner = apply_mubar(m, s); break;
    case Codiff::Del: inner = apply_delbar(m, s); break;
    case Codiff::Delbar: inner = apply_del(m, s); break;
    case Codiff::Mubar: inner = apply_mu(m, s); break;
  }
  return -hodge_star(m, inner);
}

inline Form lefschetz(const Model& m, const Form& f, int r = 1) {
  if (r < 0) throw SemanticError("Lefschetz power must be non-negative");
  Form out = f;
  for (int k = 0; k < r && !out.is_zero(); ++k) out = wedge(m.omega(), out);
  return out;
}

inline Form lambda_op(const Model& m, const Form& f) {
  return hodge_star_inverse(m, lefschetz(m, hodge_star(m, f)));
}

inline Form dc_op(const Model& m, const Form& f) { return j_act_inverse(apply_d(m, j_act(f))); }

/// Pointwise Hermitian product with orthonormal coframe monomials.
inline DiffPoly inner_product(const Form& a, const Form& b) {
  DiffPoly r;
  for (const auto& [mono, c] : a.coeffs()) {
    auto it = b.coeffs().find(mono);
    if (it != b.coeffs().end()) r += c * it->second.conj();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Operator expressions

enum class Op {
  Id, D, Mu, Del, Delbar, Mubar, Dc, Star, StarInv,
  DStar, MuStar, DelStar, DelbarStar, MubarStar,
  L, Lam, J, JInv, Conj,
  LapD, LapDel, LapDelbar, LapBC, LapA
};

struct OpInfo {
  Op op;
  const char* name;
};

inline constexpr std::array<OpInfo, 24> kOpNames{{
    {Op::Id, "id"},           {Op::D, "d"},
    {Op::Mu, "mu"},           {Op::Del, "del"},
    {Op::Delbar, "delbar"},   {Op::Mubar, "mubar"},
    {Op::Dc, "dc"},           {Op::Star, "star"},
    {Op::StarInv, "starinv"}, {Op::DStar, "dstar"},
    {Op::MuStar, "mustar"},   {Op::DelStar, "delstar"},
    {Op::DelbarStar, "delbarstar"}, {Op::MubarStar, "mubarstar"},
    {Op::L, "L"},             {Op::Lam, "Lam"},
    {Op::J, "J"},             {Op::JInv, "Jinv"},
    {Op::Conj, "conj"},       {Op::LapD, "lapD"},
    {Op::LapDel, "lapDel"},   {Op::LapDelbar, "lapDelbar"},
    {Op::LapBC, "lapBC"},     {Op::LapA, "lapA"},
}};

inline std::string op_name(Op op) {
  for (const auto& e : kOpNames)
    if (e.op == op) return e.name;
  return "?";
}

/// Linear combination of operator words; a word is applied right to left.
class OperatorExpr {
 public:
  using Word = std::vector<Op>;
  struct Term {
    GaussRat coeff;
    Word word;
  };

  OperatorExpr() = default;
  OperatorExpr(Op op) : terms_{{GaussRat(1), Word{op}}} {}  // NOLINT

  static OperatorExpr word(Word w, GaussRat c = GaussRat(1)) {
    OperatorExpr e;
    e.add(std::move(w), c);
    return e;
  }
  static OperatorExpr scalar(const GaussRat& c) { return word({}, c); }

  const std::vector<Term>& terms() const { return terms_; }

  void add(Word w, const GaussRat& c) {
    if (c.is_zero()) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
      if (it->word == w) {
        it->coeff += c;
        if (it->coeff.is_zero()) terms_.erase(it);
        return;
      }
    terms_.push_back({c, std::move(w)});
  }

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) {
    for (const auto& t : b.terms_) a.add(t.word, t.coeff);
    return a;
  }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) {
    for (const auto& t : b.terms_) a.add(t.word, -t.coeff);
    return a;
  }
  /// Composition: (a * b)(f) = a(b(f)). Scalars commute past `conj` only up to conjugation, so
  /// coefficients are kept on the outside and words containing conj stay as written.
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr r;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        Word w = ta.word;
        w.insert(w.end(), tb.word.begin(), tb.word.end());
        bool antilinear = std::count(ta.word.begin(), ta.word.end(), Op::Conj) % 2 == 1;
        r.add(std::move(w), ta.coeff * (antilinear ? tb.coeff.conj() : tb.coeff));
      }
    return r;
  }
  friend OperatorExpr operator*(const GaussRat& c, const OperatorExpr& a) { return scalar(c) * a; }

  bool contains(Op op) const {
    for (const auto& t : terms_)
      if (std::find(t.word.begin(), t.word.end(), op) != t.word.end()) return true;
    return false;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      auto [negative, coeff] = DiffPoly::term_body({}, t.coeff);
      std::string body;
      for (Op op : t.word) body += (body.empty() ? "" : " ") + op_name(op);
      if (body.empty())
        body = coeff;
      else if (coeff != "1")
        body = coeff + " " + body;
      out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      out += body;
      first = false;
    }
    return out;
  }

 private:
  std::vector<Term> terms_;
};

/// Defining composite of a Laplacian, exactly as a sum of operator words.
inline OperatorExpr laplacian_definition(Op op) {
  using E = OperatorExpr;
  const E del = Op::Del, delbar = Op::Delbar, ds = Op::DelStar, dbs = Op::DelbarStar;
  switch (op) {
    case Op::LapD: return E(Op::D) * E(Op::DStar) + E(Op::DStar) * E(Op::D);
    case Op::LapDel: return del * ds + ds * del;
    case Op::LapDelbar: return delbar * dbs + dbs * delbar;
    case Op::LapBC:
      return del * delbar * dbs * ds + dbs * ds * del * delbar + ds * delbar * dbs * del + dbs * del * ds * delbar +
             ds * del + dbs * delbar;
    case Op::LapA:
      return del * delbar * dbs * ds + dbs * ds * del * delbar + del * dbs * delbar * ds + delbar * ds * del * dbs +
             del * ds + delbar * dbs;
    default: return OperatorExpr(op);
  }
}

inline bool is_laplacian(Op op) {
  return op == Op::LapD || op == Op::LapDel || op == Op::LapDelbar || op == Op::LapBC || op == Op::LapA;
}

/// Replaces every Laplacian in every word by its defining composite.
inline OperatorExpr expand(const OperatorExpr& e) {
  OperatorExpr out;
  for (const auto& t : e.terms()) {
    OperatorExpr acc = OperatorExpr::scalar(t.coeff);
    for (Op op : t.word) acc = acc * (is_laplacian(op) ? laplacian_definition(op) : OperatorExpr(op));
    out = out + acc;
  }
  return out;
}

inline Form apply_op(const Model& m, Op op, const Form& f) {
  switch (op) {
    case Op::Id: return f;
    case Op::D: return apply_d(m, f);
    case Op::Mu: return apply_mu(m, f);
    case Op::Del: return apply_del(m, f);
    case Op::Delbar: return apply_delbar(m, f);
    case Op::Mubar: return apply_mubar(m, f);
    case Op::Dc: return dc_op(m, f);
    case Op::Star: return hodge_star(m, f);
    case Op::StarInv: return hodge_star_inverse(m, f);
    case Op::DStar: return codifferential(m, f, Codiff::D);
    case Op::MuStar: return codifferential(m, f, Codiff::Mu);
    case Op::DelStar: return codifferential(m, f, Codiff::Del);
    case Op::DelbarStar: return codifferential(m, f, Codiff::Delbar);
    case Op::MubarStar: return codifferential(m, f, Codiff::Mubar);
    case Op::L: return lefschetz(m, f);
    case Op::Lam: return lambda_op(m, f);
    case Op::J: return j_act(f);
    case Op::JInv: return j_act_inverse(f);
    case Op::Conj: return conjugate_form(f);
    default: break;
  }
  Form r;
  const OperatorExpr def = laplacian_definition(op);
  for (const auto& t : def.terms()) {
    Form v = f;
    for (auto it = t.word.rbegin(); it != t.word.rend() && !v.is_zero(); ++it) v = apply_op(m, *it, v);
    r += v * t.coeff;
  }
  return r;
}

inline Form apply(const Model& m, const OperatorExpr& e, const Form& f) {
  Form r;
  for (const auto& t : e.terms()) {
    Form v = f;
    for (auto it = t.word.rbegin(); it != t.word.rend() && !v.is_zero(); ++it) v = apply_op(m, *it, v);
    r += v * t.coeff;
  }
  return r;
}

/// Bidegrees an operator can reach from (p,q), clipped to 0..n.
inline std::set<Bidegree> image_bidegrees(Op op, Bidegree b, int n) {
  std::set<Bidegree> out;
  auto add = [&](int p, int q) {
    if (p >= 0 && q >= 0 && p <= n && q <= n) out.insert({p, q});
  };
  auto star = [&](Bidegree x) { return Bidegree{n - x.q, n - x.p}; };
  switch (op) {
    case Op::Id: case Op::J: case Op::JInv: add(b.p, b.q); break;
    case Op::D: case Op::Dc:
      add(b.p + 2, b.q - 1); add(b.p + 1, b.q); add(b.p, b.q + 1); add(b.p - 1, b.q + 2);
      break;
    case Op::Mu: add(b.p + 2, b.q - 1); break;
    case Op::Del: add(b.p + 1, b.q); break;
    case Op::Delbar: add(b.p, b.q + 1); break;
    case Op::Mubar: add(b.p - 1, b.q + 2); break;
    case Op::Star: case Op::StarInv: { auto s = star(b); add(s.p, s.q); } break;
    case Op::DStar:
      add(b.p - 2, b.q + 1); add(b.p - 1, b.q); add(b.p, b.q - 1); add(b.p + 1, b.q - 2);
      break;
    case Op::MuStar: add(b.p - 2, b.q + 1); break;
    case Op::DelStar: add(b.p - 1, b.q); break;
    case Op::DelbarStar: add(b.p, b.q - 1); break;
    case Op::MubarStar: add(b.p + 1, b.q - 2); break;
    case Op::L: add(b.p + 1, b.q + 1); break;
    case Op::Lam: add(b.p - 1, b.q - 1); break;
    case Op::Conj: add(b.q, b.p); break;
    default: {
      const OperatorExpr def = laplacian_definition(op);
      for (const auto& t : def.terms()) {
        std::set<Bidegree> cur{b};
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
          std::set<Bidegree> next;
          for (const auto& x : cur)
            for (const auto& y : image_bidegrees(*it, x, n)) next.insert(y);
          cur = std::move(next);
        }
        out.insert(cur.begin(), cur.end());
      }
    }
  }
  return out;
}

inline std::set<Bidegree> image_bidegrees(const OperatorExpr& e, Bidegree b, int n) {
  std::set<Bidegree> out;
  for (const auto& t : e.terms()) {
    std::set<Bidegree> cur{b};
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      std::set<Bidegree> next;
      for (const auto& x : cur)
        for (const auto& y : image_bidegrees(*it, x, n)) next.insert(y);
      cur = std::move(next);
    }
    out.insert(cur.begin(), cur.end());
  }
  return out;
}

/// Surface syntax: names juxtaposed compose right to left (`del delbar star`), `+`/`-` sum,
/// scalar prefixes (`2`, `1/2`, `i`, `(1-i)`), and parentheses around sub-expressions.
inline OperatorExpr parse_operator_expr(std::string_view text) {
  struct P {
    std::string_view t;
    std::size_t pos = 0;
    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError(what + " in operator expression", 1, static_cast<int>(pos) + 1);
    }
    void ws() {
      while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    }
    bool accept(char c) {
      ws();
      if (pos < t.size() && t[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    bool at_factor() {
      ws();
      if (pos >= t.size()) return false;
      char c = t[pos];
      return c == '(' || std::isalnum(static_cast<unsigned char>(c));
    }
    OperatorExpr expr() {
      OperatorExpr acc;
      bool neg = accept('-');
      if (!neg) accept('+');
      OperatorExpr first = term();
      acc = neg ? OperatorExpr::scalar(GaussRat(-1)) * first : first;
      for (;;) {
        if (accept('+'))
          acc = acc + term();
        else if (accept('-'))
          acc = acc - term();
        else
          return acc;
      }
    }
    OperatorExpr term() {
      if (!at_factor()) fail("expected an operator");
      OperatorExpr acc = factor();
      while (at_factor()) acc = acc * factor();
      return acc;
    }
    OperatorExpr factor() {
      ws();
      char c = t[pos];
      if (c == '(') {
        ++pos;
        OperatorExpr e = expr();
        if (!accept(')')) fail("expected ')'");
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        Rational v(std::string(t.substr(start, pos - start)));
        if (pos < t.size() && t[pos] == '/') {
          ++pos;
          std::size_t ds = pos;
          while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
          if (ds == pos) fail("expected a denominator");
          Rational den(std::string(t.substr(ds, pos - ds)));
          if (den == 0) fail("division by zero");
          v /= den;
        }
        accept('*');
        return OperatorExpr::scalar(GaussRat(v));
      }
      std::size_t start = pos;
      while (pos < t.size() && std::isalnum(static_cast<unsigned char>(t[pos]))) ++pos;
      std::string name(t.substr(start, pos - start));
      if (name == "i") {
        accept('*');
        return OperatorExpr::scalar(GaussRat::i());
      }
      for (const auto& e : kOpNames)
        if (name == e.name) return OperatorExpr(e.op);
      pos = start;
      fail("unknown operator '" + name + "'");
    }
  } p{text};
  OperatorExpr e = p.expr();
  p.ws();
  if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
  return e;
}

// ---------------------------------------------------------------------------
// Exact matrices of operators on the coframe-constant span of a bidegree

inline std::vector<DiffPoly> coordinates(const Form& f, const std::vector<BasisForm>& basis) {
  std::vector<DiffPoly> out(basis.size());
  std::size_t found = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto it = f.coeffs().find(basis[k]);
    if (it != f.coeffs().end()) {
      out[k] = it->second;
      ++found;
    }
  }
  if (found != f.size()) throw Error("form has components outside the coordinate basis");
  return out;
}

inline Vector constant_coordinates(const Form& f, const std::vector<BasisForm>& basis) {
  Vector out(basis.size());
  auto coords = coordinates(f, basis);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!coords[k].is_constant()) throw Error("form is not coframe-constant");
    out[k] = coords[k].constant_term();
  }
  return out;
}

inline Form form_from_coordinates(const Vector& v, const std::vector<BasisForm>& basis) {
  Form f;
  for (std::size_t k = 0; k < basis.size(); ++k) f.add_term(basis[k], DiffPoly(v[k]));
  return f;
}

struct OperatorMatrix {
  Bidegree domain;
  std::vector<Bidegree> codomain;
  std::vector<BasisForm> domain_basis;
  std::vector<BasisForm> codomain_basis;
  /// entries[r][c]: coefficient of codomain_basis[r] in the image of domain_basis[c].
  std::vector<std::vector<DiffPoly>> entries;

  int rows() const { return static_cast<int>(codomain_basis.size()); }
  int cols() const { return static_cast<int>(domain_basis.size()); }

  bool is_constant() const {
    for (const auto& row : entries)
      for (const auto& e : row)
        if (!e.is_constant()) return false;
    return true;
  }

  /// Gaussian-rational matrix; throws when some entry involves function symbols.
  Matrix constant() const {
    Matrix m(rows(), cols());
    for (int r = 0; r < rows(); ++r)
      for (int c = 0; c < cols(); ++c) {
        if (!entries[r][c].is_constant()) throw Error("operator matrix has symbolic entries");
        m(r, c) = entries[r][c].constant_term();
      }
    return m;
  }

  /// One Gaussian-rational block per coefficient monomial, stacked; its kernel is the
  /// set of constant combinations annihilated identically.
  Matrix stacked() const {
    std::map<SymbolMonomial, Matrix> blocks;
    for (int r = 0; r < rows(); ++r)
      for (int c = 0; c < cols(); ++c)
        for (const auto& [sym, v] : entries[r][c].terms()) {
          auto it = blocks.find(sym);
          if (it == blocks.end()) it = blocks.emplace(sym, Matrix(rows(), cols())).first;
          it->second(r, c) = v;
        }
    Matrix out(0, cols());
    for (const auto& [sym, block] : blocks) out.stack(block);
    return out;
  }
};

inline OperatorMatrix operator_matrix(const Model& m, const OperatorExpr& expr, int p, int q) {
  if (expr.contains(Op::Conj)) throw SemanticError("operator matrix needs a complex-linear expression (no 'conj')");
  OperatorMatrix om;
  om.domain = {p, q};
  om.domain_basis = bidegree_basis(m.n(), p, q);
  auto targets = image_bidegrees(expr, {p, q}, m.n());
  om.codomain.assign(targets.begin(), targets.end());
  for (const auto& b : om.codomain) {
    auto basis = bidegree_basis(m.n(), b.p, b.q);
    om.codomain_basis.insert(om.codomain_basis.end(), basis.begin(), basis.end());
  }
  om.entries.assign(om.codomain_basis.size(), std::vector<DiffPoly>(om.domain_basis.size()));
  for (std::size_t c = 0; c < om.domain_basis.size(); ++c) {
    Form image = apply(m, expr, Form(om.domain_basis[c]));
    auto coords = coordinates(image, om.codomain_basis);
    for (std::size_t r = 0; r < coords.size(); ++r) om.entries[r][c] = std::move(coords[r]);
  }
  return om;
}

}  // namespace akform
