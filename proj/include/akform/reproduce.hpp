#pragma once

// Reproduction batteries for the two bundled eight-dimensional models.

#include <string>
#include <vector>

#include "akform/audit.hpp"

namespace akform {

struct ReproRow {
  std::string label;
  bool pass = false;
  std::string detail;
  std::string anchor;  // the displayed statement being reproduced
};

struct ReproReport {
  std::string model;
  std::vector<ReproRow> rows;

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }

  std::string str() const {
    std::string out = "reproduce " + model + "\n";
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.label.size());
    for (const auto& r : rows) {
      out += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.label + std::string(width - r.label.size(), ' ');
      if (!r.detail.empty()) out += "  " + r.detail;
      out += "\n      anchor: " + r.anchor + "\n";
    }
    out += std::string("result: ") + (pass() ? "all rows pass" : "FAILURES present") + "\n";
    return out;
  }
};

inline const std::vector<std::string>& sixteen_delbar_harmonic_forms() {
  static const std::vector<std::string> forms = {
      "phi[1,2,~1,~2]",
      "phi[1,2,~1,~3] + phi[1,3,~1,~2]",
      "phi[1,2,~3,~4] + phi[1,3,~2,~4]",
      "phi[1,2,~2,~3] + phi[2,3,~1,~2]",
      "phi[1,3,~2,~3] + phi[2,3,~1,~3]",
      "phi[1,3,~2,~4] + phi[2,3,~1,~4]",
      "phi[1,3,~1,~3] + phi[2,3,~2,~3]",
      "phi[1,3,~1,~4] + phi[2,3,~2,~4]",
      "phi[1,4,~2,~3] + phi[2,4,~1,~3]",
      "phi[1,4,~2,~4] + phi[2,4,~1,~4]",
      "phi[1,4,~1,~3] + phi[2,4,~2,~3]",
      "phi[1,4,~1,~4] + phi[2,4,~2,~4]",
      "phi[2,4,~1,~3] + phi[3,4,~1,~2]",
      "phi[1,4,~3,~4] + phi[3,4,~1,~4]",
      "phi[2,4,~3,~4] + phi[3,4,~2,~4]",
      "phi[3,4,~3,~4]",
  };
  return forms;
}

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string check_label(const HarmonicCheck& c) {
  return c.harmonic ? "harmonic" : c.condition + "-condition = " + to_literal(c.value);
}

}  // namespace detail

inline ReproReport reproduce_torus8(const Model& m) {
  ReproReport rep;
  rep.model = m.name();
  auto row = [&](std::string label, bool ok, std::string detail, std::string anchor) {
    rep.rows.push_back({std::move(label), ok, std::move(detail), std::move(anchor)});
  };
  auto F = [&](const char* lit) { return m.parse_form(lit); };

  auto v = validate_model(m);
  row("structure valid, almost Kaehler, not integrable", v.d_squared_all() && v.almost_kahler && !v.integrable,
      "d^2=0 " + detail::yes_no(v.d_squared_all()) + ", d omega=0 " + detail::yes_no(v.almost_kahler) +
          ", integrable " + detail::yes_no(v.integrable),
      "omega = i(phi^{1 1b} + phi^{2 2b} + phi^{3 3b} + phi^{4 4b}) almost Kaehler");
  row("dphi^1 as declared", m.d_phi(1) == F("V4(g)*phi[4,~1] - V4b(g)*phi[~1,~4]"), to_literal(m.d_phi(1)),
      "d phi^1 = V4(g) phi^{4 1b} - conj(V4)(g) phi^{1b 4b}");
  row("vol = omega^4/4! = top monomial", m.vol() == F("phi[1,2,3,4,~1,~2,~3,~4]"), to_literal(m.vol()),
      "omega^4/4! = phi^{1 1b 2 2b 3 3b 4 4b} = phi^{1234 1b2b3b4b}");

  Form p = F("phi[1,2,~2,~3]");
  Form sp = hodge_star(m, p);
  Form dbp = apply_delbar(m, p);
  row("del phi^{12 2b3b} = 0", apply_del(m, p).is_zero(), to_literal(apply_del(m, p)), "del phi^{12 2b 3b} = 0");
  row("star phi^{12 2b3b} = phi^{14 3b4b}, delbar of it = 0",
      sp == F("phi[1,4,~3,~4]") && apply_delbar(m, sp).is_zero(), to_literal(sp),
      "delbar * phi^{12 2b 3b} = delbar phi^{14 3b 4b} = 0");
  row("delbar phi^{12 2b3b} = V4(g) phi^{4 1b 2 2b 3b} != 0", dbp == F("V4(g)*phi[4,~1,2,~2,~3]") && !dbp.is_zero(),
      to_literal(dbp), "delbar phi^{12 2b 3b} = V4(g) phi^{4 1b 2 2b 3b} != 0");

  auto h_del = harmonic_space(m, HarmonicOp::Del, 2, 2), h_bc = harmonic_space(m, HarmonicOp::BC, 2, 2);
  auto h_dbar = harmonic_space(m, HarmonicOp::Delbar, 2, 2), h_a = harmonic_space(m, HarmonicOp::A, 2, 2);
  for (const char* lit : {"phi[1,2,~2,~3]", "phi[1,3,~2,~3]"}) {
    Form f = F(lit);
    auto del = is_harmonic(m, f, HarmonicOp::Del), bc = is_harmonic(m, f, HarmonicOp::BC);
    bool ok = del.harmonic && !bc.harmonic && h_del.contains(f) && !h_bc.contains(f);
    row(std::string(lit) + " in H_del minus H_bc", ok, "bc: " + detail::check_label(bc),
        "phi^{12 2b 3b} in H^{2,2}_del minus H^{2,2}_BC; the same holds for phi^{13 2b 3b}");
    Form s = hodge_star(m, f);
    auto dbar = is_harmonic(m, s, HarmonicOp::Delbar), a = is_harmonic(m, s, HarmonicOp::A);
    bool ok2 = dbar.harmonic && !a.harmonic && h_dbar.contains(s) && !h_a.contains(s);
    row("star " + std::string(lit) + " in H_delbar minus H_a", ok2, to_literal(s) + "; a: " + detail::check_label(a),
        "*psi in H^{2,2}_delbar minus H^{2,2}_A");
  }

  Form psi = F("2*phi[2,~1,4,~4]");
  auto bc = is_harmonic(m, psi, HarmonicOp::BC), dl = is_harmonic(m, psi, HarmonicOp::Del);
  row("2 phi^{2 1b 4 4b} in H_bc and H_del", bc.harmonic && dl.harmonic && h_bc.contains(psi) && h_del.contains(psi), "",
      "psi = 2 phi^{2 1b 4 4b} in H^{2,2}_BC cap H^{2,2}_del");
  auto pc = primitive_decompose(m, psi);
  Form alpha = pc.component(1), beta = pc.component(0);
  row("primitive decomposition of psi", alpha == F("-i*phi[2,~1]") && beta == F("phi[2,~1,4,~4] - phi[2,~1,3,~3]") &&
                                            pc.component(2).is_zero(),
      "alpha = " + to_literal(alpha) + ", beta = " + to_literal(beta),
      "2 phi^{2 1b 4 4b} = (phi^{2 1b 4 4b} + phi^{2 1b 3 3b}) + (phi^{2 1b 4 4b} - phi^{2 1b 3 3b})");
  row("-i omega phi^{2 1b} = phi^{2 1b 4 4b} + phi^{2 1b 3 3b}, beta primitive",
      wedge(m.omega(), F("phi[2,~1]")) * (-GaussRat::i()) == F("phi[2,~1,4,~4] + phi[2,~1,3,~3]") &&
          is_primitive(m, beta),
      "", "phi^{2 1b 4 4b} + phi^{2 1b 3 3b} = -i omega phi^{2 1b} in L(P^{1,1}); beta in P^{2,2}");
  Form da = apply_del(m, alpha), db = apply_del(m, beta);
  row("delbar alpha = delbar beta = 0, omega del alpha + del beta = 0",
      apply_delbar(m, alpha).is_zero() && apply_delbar(m, beta).is_zero() && (lefschetz(m, da) + db).is_zero(), "",
      "delbar alpha = 0, delbar beta = 0, omega del alpha + del beta = 0");
  row("del alpha = -i conj(V4)(g) phi^{21 4b} != 0", da == F("-i*V4b(g)*phi[2,1,~4]") && !da.is_zero(), to_literal(da),
      "del alpha = -i conj(V4)(g) phi^{21 4b} != 0");
  row("del beta = -conj(V4)(g) phi^{21 4b 3 3b} != 0", db == F("-V4b(g)*phi[2,1,~4,3,~3]") && !db.is_zero(),
      to_literal(db), "del beta = -conj(V4)(g) phi^{21 4b 3 3b} != 0");
  {
    auto a_bc = is_harmonic(m, alpha, HarmonicOp::BC), a_del = is_harmonic(m, alpha, HarmonicOp::Del);
    auto b_bc = is_harmonic(m, beta, HarmonicOp::BC), b_del = is_harmonic(m, beta, HarmonicOp::Del);
    row("alpha, beta harmonic for neither bc nor del",
        !a_bc.harmonic && !a_del.harmonic && !b_bc.harmonic && !b_del.harmonic,
        "alpha: " + detail::check_label(a_del) + "; beta: " + detail::check_label(b_del),
        "alpha not in H^{1,1}_BC cup H^{1,1}_del, beta not in H^{2,2}_BC cup H^{2,2}_del");
  }
  auto inc = audit_inclusion_2_2(m);
  bool strict = !(h_bc.space == h_del.space) && !(h_a.space == h_dbar.space);
  row("H_bc in H_del and H_a in H_delbar, both strict", inc.pass() && strict,
      "dims bc " + std::to_string(h_bc.dim()) + " < del " + std::to_string(h_del.dim()) + ", a " +
          std::to_string(h_a.dim()) + " < delbar " + std::to_string(h_dbar.dim()),
      "H^{2,2}_BC not superset of H^{2,2}_del, H^{2,2}_A not superset of H^{2,2}_delbar");
  for (HarmonicOp op : {HarmonicOp::BC, HarmonicOp::A, HarmonicOp::Delbar, HarmonicOp::Del}) {
    auto nd = audit_primitive_non_descent(m, op);
    row("decomposition does not descend for " + harmonic_op_name(op), nd.pass(), nd.clauses.front().detail,
        "H^{2,2}_D not inside C omega^2 + L(P^{1,1} cap H^{1,1}_D) + (P^{2,2} cap H^{2,2}_D)");
  }
  return rep;
}

inline ReproReport reproduce_h12xT3(const Model& m) {
  ReproReport rep;
  rep.model = m.name();
  auto row = [&](std::string label, bool ok, std::string detail, std::string anchor) {
    rep.rows.push_back({std::move(label), ok, std::move(detail), std::move(anchor)});
  };
  auto F = [&](const std::string& lit) { return m.parse_form(lit); };

  auto v = validate_model(m);
  row("structure valid, almost Kaehler, not integrable", v.d_squared_all() && v.almost_kahler && !v.integrable,
      "d^2=0 " + detail::yes_no(v.d_squared_all()) + ", d omega=0 " + detail::yes_no(v.almost_kahler) +
          ", integrable " + detail::yes_no(v.integrable),
      "this fundamental form is d-closed");
  row("dphi^1 as declared", m.d_phi(1) == F("-i/4*(phi[2,3] + phi[2,~3] - phi[3,~2] + phi[~2,~3])"),
      to_literal(m.d_phi(1)), "d phi^1 = -i/4 (phi^{23} + phi^{2 3b} - phi^{3 2b} + phi^{2b 3b})");
  auto sd = split_d(m, F("phi[1]"));
  row("split of d phi^1", sd.mu.is_zero() && sd.del == F("-i/4*phi[2,3]") &&
                              sd.delbar == F("-i/4*(phi[2,~3] - phi[3,~2])") && sd.mubar == F("-i/4*phi[~2,~3]"),
      "del " + to_literal(sd.del) + ", mubar " + to_literal(sd.mubar),
      "del, delbar, mubar parts of d phi^1; mu vanishes on (1,0)-forms");
  row("d phi^3 = d phi^4 = 0", apply_d(m, F("phi[3]")).is_zero() && apply_d(m, F("phi[4]")).is_zero(), "",
      "d phi^3 = d phi^4 = 0");

  std::vector<HarmonicSpace> spaces;
  for (HarmonicOp op : {HarmonicOp::Delbar, HarmonicOp::Del, HarmonicOp::BC, HarmonicOp::A})
    spaces.push_back(harmonic_space(m, op, 2, 2));
  const auto& hd = spaces.front();
  row("dim H_delbar^{2,2} = 16", hd.dim() == 16, "computed dim = " + std::to_string(hd.dim()),
      "spanned by the sixteen listed (2,2)-forms");
  std::vector<Form> listed;
  for (const auto& lit : sixteen_delbar_harmonic_forms()) listed.push_back(F(lit));
  Subspace span = form_span(listed, hd.ambient);
  row("listed forms span H_delbar^{2,2}", span == hd.space,
      "rank of listed forms = " + std::to_string(span.dim()) + ", all harmonic = " +
          detail::yes_no(hd.space.contains(span)),
      "phi^{12 1b2b}, phi^{12 1b3b} + phi^{13 1b2b}, ..., phi^{34 3b4b}");
  bool equal = true;
  std::string dims;
  for (const auto& s : spaces) {
    equal = equal && s.space == hd.space;
    dims += harmonic_op_name(s.op) + "=" + std::to_string(s.dim()) + " ";
  }
  row("H_del = H_delbar = H_bc = H_a at (2,2)", equal, dims, "these spaces are all equal");
  bool cross = true;
  for (const auto& s : spaces) cross = cross && s.adjoint_agrees && s.laplacian_agrees.value_or(false);
  row("kernel conditions agree with Laplacian kernels", cross, "", "Laplacian kernel characterizations");
  for (HarmonicOp op : {HarmonicOp::BC, HarmonicOp::A, HarmonicOp::Delbar, HarmonicOp::Del}) {
    auto d = audit_primitive_descent(m, op);
    row("decomposition descends for " + harmonic_op_name(op), d.pass(),
        std::to_string(d.clauses.size()) + " basis elements checked",
        "psi in C omega^2 + L(P^{1,1} cap H^{1,1}_D) + (P^{2,2} cap H^{2,2}_D)");
  }
  auto inc = audit_inclusion_2_2(m);
  row("H_bc = H_del and H_a = H_delbar", inc.pass() && !inclusion_2_2_strict(m), "",
      "H^{2,2}_BC in H^{2,2}_del, H^{2,2}_A in H^{2,2}_delbar (equality here)");
  return rep;
}

}  // namespace akform
