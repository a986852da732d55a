#pragma once

#include <string>
#include <vector>

#include "akform/operators.hpp"

namespace akform {

struct ValidationReport {
  std::vector<bool> d_squared_ok;  // index i-1 holds d(d phi^i) = 0
  bool almost_kahler = false;
  bool integrable = false;
  std::vector<std::string> messages;

  bool d_squared_all() const {
    for (bool b : d_squared_ok)
      if (!b) return false;
    return true;
  }
};

inline ValidationReport validate_model(const Model& m) {
  ValidationReport rep;
  for (int i = 1; i <= m.n(); ++i) {
    Form dd = apply_d(m, m.d_phi(i));
    rep.d_squared_ok.push_back(dd.is_zero());
    if (!dd.is_zero()) rep.messages.push_back("d(dphi " + std::to_string(i) + ") = " + to_literal(dd));
  }
  Form dw = apply_d(m, m.omega());
  rep.almost_kahler = dw.is_zero();
  if (!rep.almost_kahler) rep.messages.push_back("d(omega) = " + to_literal(dw));
  rep.integrable = true;
  for (int i = 1; i <= m.n(); ++i) {
    // mubar phi^i is the (0,2) part of dphi^i; mu phi^i vanishes by type.
    Form nij = bidegree_project(m.d_phi(i), 0, 2);
    if (!nij.is_zero()) {
      rep.integrable = false;
      rep.messages.push_back("mubar(phi^" + std::to_string(i) + ") = " + to_literal(nij));
    }
  }
  if (!m.invariant()) rep.messages.push_back("non-invariant: structure coefficients involve function symbols");
  return rep;
}

inline std::string format_report(const ValidationReport& rep) {
  std::string out;
  for (std::size_t i = 0; i < rep.d_squared_ok.size(); ++i)
    out += "d^2 phi^" + std::to_string(i + 1) + ": " + (rep.d_squared_ok[i] ? "ok" : "FAIL") + "\n";
  out += std::string("almost_kahler: ") + (rep.almost_kahler ? "yes" : "no") + "\n";
  out += std::string("integrable: ") + (rep.integrable ? "yes" : "no") + "\n";
  for (const auto& msg : rep.messages) out += "note: " + msg + "\n";
  return out;
}

}  // namespace akform
