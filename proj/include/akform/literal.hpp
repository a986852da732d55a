#pragma once

// Text grammar shared by model files, the CLI and tests.
//
//   coefficient  : 3/2, i, V4(g), V4bV4(g), ~h (conjugate of a complex function)
//   form literal : phi[2,~1,4,~4]  (~j is the conjugate factor; any order, normalized on parse)
//   expressions  : sums, differences and products (*) of the above, parentheses,
//                  division by nonzero constants, `omega` and `^k` wedge powers.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

#include "akform/exterior.hpp"

namespace akform {

struct LiteralContext {
  int n = 0;  // frame size; 0 disables index range checks
  const std::map<std::string, FunctionPtr>* functions = nullptr;
  const Form* omega = nullptr;
  int line = 0;    // reported in ParseError
  int column0 = 0; // column offset of the text within its line
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const LiteralContext& ctx) : text_(text), ctx_(ctx) {}

  Form parse() {
    Form f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, ctx_.line, ctx_.column0 + static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  Form expr() {
    Form acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Form t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Form term() {
    Form acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = wedge(acc, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Form d = unary();
        auto c = d.coeffs().find(BasisForm());
        if (d.size() != 1 || c == d.coeffs().end() || !c->second.is_constant()) {
          pos_ = at;
          fail("division is only by nonzero constants");
        }
        acc *= GaussRat(1) / c->second.constant_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Form unary() {
    if (accept('-')) return -unary();
    Form base = primary();
    if (accept('^')) base = wedge_power(base, static_cast<int>(integer()));
    return base;
  }

  Form primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Form f = expr();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Form(GaussRat(Rational(integer())));
    if (c == '~') {
      ++pos_;
      return Form(DiffPoly(function_symbol(identifier(), true, {})));
    }
    std::size_t at = pos_;
    std::string id = identifier();
    if (id == "i") return Form(GaussRat::i());
    if (id == "phi") return phi_literal();
    if (id == "omega") {
      if (ctx_.omega == nullptr) {
        pos_ = at;
        fail("'omega' needs a model");
      }
      return *ctx_.omega;
    }
    if (accept('(')) {
      std::vector<Derivation> word = derivation_word(id, at);
      bool conjugated = accept('~');
      std::string fn = identifier();
      expect(')');
      return Form(DiffPoly(function_symbol(fn, conjugated, std::move(word))));
    }
    pos_ = at;
    return Form(DiffPoly(function_symbol(identifier(), false, {})));
  }

  std::vector<Derivation> derivation_word(const std::string& id, std::size_t at) {
    std::vector<Derivation> word;
    std::size_t k = 0;
    while (k < id.size()) {
      if (id[k] != 'V') {
        pos_ = at;
        fail("malformed derivation word '" + id + "'");
      }
      std::size_t e = k + 1;
      while (e < id.size() && std::isdigit(static_cast<unsigned char>(id[e]))) ++e;
      if (e < id.size() && id[e] == 'b') ++e;
      try {
        word.push_back(Derivation::parse(id.substr(k, e - k), ctx_.n));
      } catch (const SemanticError& err) {
        pos_ = at;
        fail(err.what());
      }
      k = e;
    }
    return word;
  }

  DerivSymbol function_symbol(const std::string& name, bool conjugated, std::vector<Derivation> word) {
    if (ctx_.functions == nullptr) fail("unknown function '" + name + "'");
    auto it = ctx_.functions->find(name);
    if (it == ctx_.functions->end()) fail("unknown function '" + name + "'");
    return DerivSymbol(it->second, conjugated, std::move(word));
  }

  Form phi_literal() {
    expect('[');
    Form f(1);
    if (accept(']')) return f;
    do {
      bool bar = accept('~');
      std::size_t at = pos_;
      long j = integer();
      if (j < 1 || j > kMaxDim || (ctx_.n > 0 && j > ctx_.n)) {
        throw SemanticError(std::to_string(ctx_.line) + ":" + std::to_string(ctx_.column0 + static_cast<int>(at) + 1) +
                            ": coframe index " + std::to_string(j) + " out of range 1.." +
                            std::to_string(ctx_.n > 0 ? ctx_.n : kMaxDim));
      }
      int idx = static_cast<int>(j);
      f = wedge(f, bar ? Form::monomial({}, {idx}) : Form::monomial({idx}, {}));
    } while (accept(','));
    expect(']');
    return f;
  }

  std::string_view text_;
  const LiteralContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Form parse_form(std::string_view text, const LiteralContext& ctx = {}) {
  return detail::ExprParser(text, ctx).parse();
}

inline DiffPoly parse_coefficient(std::string_view text, const LiteralContext& ctx = {}) {
  Form f = parse_form(text, ctx);
  if (f.is_zero()) return DiffPoly();
  if (f.size() != 1 || f.coeffs().begin()->first != BasisForm())
    throw ParseError("expected a scalar coefficient, got a form", ctx.line, ctx.column0 + 1);
  return f.coeffs().begin()->second;
}

inline std::string monomial_literal(const BasisForm& m) {
  std::string s = "phi[";
  bool first = true;
  for (int j : m.holo()) {
    s += (first ? "" : ",") + std::to_string(j);
    first = false;
  }
  for (int j : m.anti()) {
    s += (first ? "~" : ",~") + std::to_string(j);
    first = false;
  }
  return s + "]";
}

inline std::string monomial_unicode(const BasisForm& m) {
  if (m.degree() == 0) return "1";
  bool wide = false;
  for (int j : m.holo()) wide = wide || j > 9;
  for (int j : m.anti()) wide = wide || j > 9;
  std::string s = "φ^{";
  bool first = true;
  for (int j : m.holo()) {
    s += (first || !wide ? "" : ",") + std::to_string(j);
    first = false;
  }
  for (int j : m.anti()) {
    s += (first || !wide ? "" : ",") + std::to_string(j) + "̄";
    first = false;
  }
  return s + "}";
}

/// Canonical literal: monomials in canonical order, each term `coeff*phi[...]`.
inline std::string to_literal(const Form& f, bool unicode = false) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.coeffs()) {
    bool negative = false;
    std::string body;
    if (c.size() == 1) {
      const auto& [sym, v] = *c.terms().begin();
      std::tie(negative, body) = DiffPoly::term_body(sym, v);
      if (body == "1" && m.degree() > 0) body.clear();
    } else {
      body = m.degree() > 0 ? "(" + c.str() + ")" : c.str();
    }
    std::string mono = m.degree() == 0 ? "" : (unicode ? monomial_unicode(m) : monomial_literal(m));
    if (!mono.empty()) body = body.empty() ? mono : body + (unicode ? "·" : "*") + mono;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Form& f) { return os << to_literal(f); }

}  // namespace akform
