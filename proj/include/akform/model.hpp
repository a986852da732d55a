#pragma once

// Almost Hermitian models presented by a unitary coframe and its structure equations.
//
// Model file format (line oriented, `#` starts a comment):
//
//   name torus8
//   dim 4
//   function g real depends V4 V4b
//   dphi 1 = V4(g)*phi[4,~1] + (-1)*V4b(g)*phi[~1,~4]
//
// Omitted `dphi` lines default to 0. d(conj phi^i) is the conjugate of d(phi^i).

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "akform/literal.hpp"

namespace akform {

class Model {
 public:
  Model(std::string name, int n, std::map<std::string, FunctionPtr> functions, std::vector<Form> structure)
      : name_(std::move(name)), n_(n), functions_(std::move(functions)), structure_(std::move(structure)) {
    if (n_ < 1 || n_ > kMaxDim) throw SemanticError("complex dimension must be in 1.." + std::to_string(kMaxDim));
    structure_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      for (const auto& [m, c] : structure_[i].coeffs()) {
        if (m.degree() != 2)
          throw SemanticError("dphi " + std::to_string(i + 1) + " must be a 2-form, found a term of degree " +
                              std::to_string(m.degree()));
        if (((m.holo_mask() | m.anti_mask()) >> n_) != 0)
          throw SemanticError("dphi " + std::to_string(i + 1) + " uses a coframe index above " + std::to_string(n_));
        if (!c.is_constant()) invariant_ = false;
      }
    }
    omega_ = Form();
    for (int j = 1; j <= n_; ++j) omega_.add_term(BasisForm::from_indices({j}, {j}), DiffPoly(GaussRat::i()));
    Form top = wedge_power(omega_, n_);
    Rational fact = 1;
    for (int j = 2; j <= n_; ++j) fact *= j;
    vol_ = top * GaussRat(Rational(1) / fact);
    top_ = BasisForm((IndexMask{1} << n_) - 1, (IndexMask{1} << n_) - 1);
    vol_unit_ = vol_.coefficient(top_).constant_term();
    if (n_ <= kCachedDim) {
      dmono_.resize(std::size_t{1} << (2 * n_));
      for (IndexMask h = 0; h < (IndexMask{1} << n_); ++h)
        for (IndexMask a = 0; a < (IndexMask{1} << n_); ++a) dmono_[h | (a << n_)] = compute_d_monomial(BasisForm(h, a));
    }
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  const std::map<std::string, FunctionPtr>& functions() const { return functions_; }
  const std::vector<Form>& structure() const { return structure_; }
  const Form& d_phi(int i) const { return structure_.at(i - 1); }
  Form d_phi_bar(int i) const { return conjugate_form(structure_.at(i - 1)); }
  const Form& omega() const { return omega_; }
  const Form& vol() const { return vol_; }
  /// vol = vol_unit() * phi[1..n, ~1..~n].
  const GaussRat& vol_unit() const { return vol_unit_; }
  const BasisForm& top_monomial() const { return top_; }
  /// False when some structure coefficient involves a function symbol.
  bool invariant() const { return invariant_; }

  LiteralContext literal_context(int line = 0, int column0 = 0) const {
    return LiteralContext{n_, &functions_, &omega_, line, column0};
  }

  Form parse_form(std::string_view text) const { return akform::parse_form(text, literal_context()); }

  /// d of a constant-coefficient basis monomial, by the Leibniz rule over its coframe factors.
  const Form& d_monomial(const BasisForm& m) const {
    if (!dmono_.empty()) return dmono_[m.holo_mask() | (m.anti_mask() << n_)];
    thread_local Form scratch;
    scratch = compute_d_monomial(m);
    return scratch;
  }

  friend bool operator==(const Model& a, const Model& b) {
    if (a.n_ != b.n_ || a.name_ != b.name_ || a.structure_ != b.structure_) return false;
    if (a.functions_.size() != b.functions_.size()) return false;
    for (const auto& [name, fa] : a.functions_) {
      auto it = b.functions_.find(name);
      if (it == b.functions_.end() || it->second->real != fa->real || it->second->depends != fa->depends) return false;
    }
    return true;
  }

 private:
  static constexpr int kCachedDim = 6;

  Form compute_d_monomial(const BasisForm& m) const {
    std::vector<Form> factors;
    for (int j : m.holo()) factors.push_back(Form::monomial({j}, {}));
    for (int j : m.anti()) factors.push_back(Form::monomial({}, {j}));
    std::vector<Form> dfactors;
    for (int j : m.holo()) dfactors.push_back(structure_[j - 1]);
    for (int j : m.anti()) dfactors.push_back(conjugate_form(structure_[j - 1]));
    Form result;
    for (std::size_t s = 0; s < factors.size(); ++s) {
      if (dfactors[s].is_zero()) continue;
      Form left(1), right(1);
      for (std::size_t t = 0; t < s; ++t) left = wedge(left, factors[t]);
      for (std::size_t t = s + 1; t < factors.size(); ++t) right = wedge(right, factors[t]);
      Form term = wedge(wedge(left, dfactors[s]), right);
      if (s % 2 == 1) term = -term;
      result += term;
    }
    return result;
  }

  std::string name_;
  int n_ = 0;
  std::map<std::string, FunctionPtr> functions_;
  std::vector<Form> structure_;
  Form omega_;
  Form vol_;
  BasisForm top_;
  GaussRat vol_unit_;
  bool invariant_ = true;
  std::vector<Form> dmono_;
};

inline bool is_reserved_name(const std::string& s) {
  static const std::regex derivation_like("V[0-9].*");
  return s == "i" || s == "phi" || s == "omega" || std::regex_match(s, derivation_like);
}

inline Model parse_model(const std::string& text, const std::string& default_name = "model") {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = 0;
  std::string name = default_name;
  std::map<std::string, FunctionPtr> functions;
  std::map<int, std::pair<std::string, std::pair<int, int>>> equations;  // index -> text, (line, column0)
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");

  auto column_of = [](const std::string& l, const std::string& word) {
    auto at = l.find(word);
    return at == std::string::npos ? 1 : static_cast<int>(at) + 1;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string content = line.substr(0, line.find('#'));
    std::istringstream words(content);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "name") {
      if (!(words >> name)) throw ParseError("expected a model name", lineno, column_of(line, "name") + 4);
    } else if (keyword == "dim") {
      std::string value;
      if (!(words >> value) || !std::regex_match(value, std::regex("[0-9]+")))
        throw ParseError("expected a positive integer after 'dim'", lineno, column_of(line, "dim") + 4);
      if (n != 0) throw SemanticError("line " + std::to_string(lineno) + ": duplicate 'dim'");
      n = std::stoi(value);
      if (n < 1 || n > kMaxDim)
        throw SemanticError("line " + std::to_string(lineno) + ": dim must be in 1.." + std::to_string(kMaxDim));
    } else if (keyword == "function") {
      if (n == 0) throw SemanticError("line " + std::to_string(lineno) + ": 'function' before 'dim'");
      auto decl = std::make_shared<FunctionDecl>();
      if (!(words >> decl->name) || !std::regex_match(decl->name, ident))
        throw ParseError("expected a function name", lineno, column_of(line, "function") + 9);
      if (is_reserved_name(decl->name))
        throw SemanticError("line " + std::to_string(lineno) + ": '" + decl->name + "' is a reserved name");
      if (functions.count(decl->name))
        throw SemanticError("line " + std::to_string(lineno) + ": function '" + decl->name + "' declared twice");
      std::string w;
      bool in_depends = false;
      while (words >> w) {
        if (!in_depends && w == "real") {
          decl->real = true;
        } else if (!in_depends && w == "complex") {
          decl->real = false;
        } else if (!in_depends && w == "depends") {
          in_depends = true;
        } else if (in_depends) {
          try {
            decl->depends.insert(Derivation::parse(w, n));
          } catch (const SemanticError& e) {
            throw SemanticError("line " + std::to_string(lineno) + ": " + e.what());
          }
        } else {
          throw ParseError("unexpected '" + w + "'", lineno, column_of(line, w));
        }
      }
      if (decl->real)
        for (const auto& d : decl->depends)
          if (!decl->depends.count(d.conj()))
            throw SemanticError("line " + std::to_string(lineno) + ": real function '" + decl->name + "' depends on " +
                                d.name() + " but not on " + d.conj().name());
      functions.emplace(decl->name, std::move(decl));
    } else if (keyword == "dphi") {
      if (n == 0) throw SemanticError("line " + std::to_string(lineno) + ": 'dphi' before 'dim'");
      auto eq = content.find('=');
      if (eq == std::string::npos) throw ParseError("expected '='", lineno, static_cast<int>(content.size()) + 1);
      std::string index_text = content.substr(content.find("dphi") + 4, eq - content.find("dphi") - 4);
      std::istringstream idx(index_text);
      int index = 0;
      std::string rest;
      if (!(idx >> index) || (idx >> rest))
        throw ParseError("expected a coframe index after 'dphi'", lineno, column_of(line, "dphi") + 5);
      if (index < 1 || index > n)
        throw SemanticError("line " + std::to_string(lineno) + ": dphi index " + std::to_string(index) +
                            " out of range 1.." + std::to_string(n));
      if (equations.count(index))
        throw SemanticError("line " + std::to_string(lineno) + ": duplicate structure equation for dphi " +
                            std::to_string(index));
      equations[index] = {content.substr(eq + 1), {lineno, static_cast<int>(eq) + 1}};
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", lineno, column_of(line, keyword));
    }
  }
  if (n == 0) throw SemanticError("model has no 'dim' line");

  std::vector<Form> structure(n);
  LiteralContext ctx{n, &functions, nullptr, 0, 0};
  for (const auto& [index, entry] : equations) {
    ctx.line = entry.second.first;
    ctx.column0 = entry.second.second;
    try {
      structure[index - 1] = akform::parse_form(entry.first, ctx);
    } catch (const ParseError&) {
      throw;
    } catch (const SemanticError& e) {
      throw SemanticError("line " + std::to_string(ctx.line) + ": " + e.what());
    }
  }
  try {
    return Model(name, n, std::move(functions), std::move(structure));
  } catch (const SemanticError& e) {
    throw SemanticError(std::string("model '") + name + "': " + e.what());
  }
}

inline Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_model(buf.str(), stem);
}

/// Model file text that parses back to an equal Model.
inline std::string print_model(const Model& m) {
  std::ostringstream out;
  out << "name " << m.name() << "\n";
  out << "dim " << m.n() << "\n";
  for (const auto& [name, fn] : m.functions()) {
    out << "function " << name << (fn->real ? " real" : " complex");
    if (!fn->depends.empty()) {
      out << " depends";
      for (const auto& d : fn->depends) out << " " << d.name();
    }
    out << "\n";
  }
  for (int i = 1; i <= m.n(); ++i) out << "dphi " << i << " = " << to_literal(m.d_phi(i)) << "\n";
  return out.str();
}

}  // namespace akform
