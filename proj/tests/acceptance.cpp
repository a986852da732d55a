// Acceptance suite: one PASS/FAIL line per criterion, each with its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "akform_cli.hpp"

using namespace akform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Model bundled(const std::string& id) { return cli::resolve_model(id); }

bool all_pass(const std::vector<PropertyResult>& rs, std::string& detail, int& cases) {
  bool ok = true;
  for (const auto& r : rs) {
    cases += r.cases;
    if (!r.pass()) {
      ok = false;
      detail += r.model + "/" + r.name + " failed " + std::to_string(r.failures) + "x: " + r.first_failure + "; ";
    }
  }
  return ok;
}

Outcome criterion1() {
  Model m = bundled("h12xT3");
  Outcome o;
  HarmonicSpace hd = harmonic_space(m, HarmonicOp::Delbar, 2, 2);
  std::vector<Form> listed;
  for (const auto& lit : sixteen_delbar_harmonic_forms()) listed.push_back(m.parse_form(lit));
  Subspace span = form_span(listed, hd.ambient);
  o.detail = "dim H_delbar^{2,2} = " + std::to_string(hd.dim()) + ", rank of listed forms = " + std::to_string(span.dim());
  if (hd.dim() != 16) {
    o.pass = false;
    o.detail += " (expected 16)";
  }
  if (!(span == hd.space)) {
    o.pass = false;
    o.detail += ", span differs";
  }
  for (HarmonicOp op : {HarmonicOp::Del, HarmonicOp::BC, HarmonicOp::A})
    if (!(harmonic_space(m, op, 2, 2).space == hd.space)) {
      o.pass = false;
      o.detail += ", H_" + harmonic_op_name(op) + " differs";
    }
  if (o.pass) o.detail += ", H_del = H_delbar = H_bc = H_a";
  return o;
}

Outcome criterion2() {
  Model m = bundled("torus8");
  Outcome o;
  auto fail = [&](const std::string& what) {
    o.pass = false;
    o.detail += what + "; ";
  };
  for (const char* lit : {"phi[1,2,~2,~3]", "phi[1,3,~2,~3]"}) {
    Form f = m.parse_form(lit), s = hodge_star(m, f);
    if (!is_harmonic(m, f, HarmonicOp::Del).harmonic) fail(std::string(lit) + " not del-harmonic");
    if (is_harmonic(m, f, HarmonicOp::BC).harmonic) fail(std::string(lit) + " is bc-harmonic");
    if (!is_harmonic(m, s, HarmonicOp::Delbar).harmonic) fail(std::string("star ") + lit + " not delbar-harmonic");
    if (is_harmonic(m, s, HarmonicOp::A).harmonic) fail(std::string("star ") + lit + " is a-harmonic");
  }
  Form psi = m.parse_form("2*phi[2,~1,4,~4]");
  if (!is_harmonic(m, psi, HarmonicOp::BC).harmonic || !is_harmonic(m, psi, HarmonicOp::Del).harmonic)
    fail("psi not in H_bc cap H_del");
  auto pc = primitive_decompose(m, psi);
  Form alpha = pc.component(1), beta = pc.component(0);
  if (alpha != m.parse_form("-i*phi[2,~1]")) fail("alpha = " + to_literal(alpha));
  if (beta != m.parse_form("phi[2,~1,4,~4] - phi[2,~1,3,~3]")) fail("beta = " + to_literal(beta));
  for (HarmonicOp op : {HarmonicOp::BC, HarmonicOp::Del})
    for (const Form* x : {&alpha, &beta})
      if (is_harmonic(m, *x, op).harmonic) fail("component harmonic for " + harmonic_op_name(op));
  auto w = is_harmonic(m, alpha, HarmonicOp::Del);
  if (w.condition != "del" || w.value != m.parse_form("-i*V4b(g)*phi[2,1,~4]"))
    fail("alpha witness " + w.condition + " = " + to_literal(w.value));
  if (o.pass) o.detail = "witness: del alpha = " + to_literal(w.value);
  return o;
}

Outcome criterion3() {
  Outcome o;
  int audits = 0;
  for (const char* id : {"torus8", "h12xT3"}) {
    Model m = bundled(id);
    std::vector<std::string> names;
    for (const char* d : {"del", "delbar", "bc", "a"}) {
      for (int k = 0; 2 * k <= 2 * m.n(); ++k) names.push_back("decomp-kk(" + std::string(d) + "," + std::to_string(k) + ")");
      names.push_back("dim8-characterization(" + std::string(d) + ")");
    }
    names.push_back("inclusion-2-2");
    for (const auto& n : names) {
      ++audits;
      AuditReport r = audit_theorem(m, n);
      if (!r.pass()) {
        o.pass = false;
        o.detail += std::string(id) + ":" + n + " failed; ";
      }
    }
    bool strict = inclusion_2_2_strict(m);
    bool want_strict = std::string(id) == "torus8";
    if (strict != want_strict) {
      o.pass = false;
      o.detail += std::string(id) + ": inclusion " + (strict ? "strict" : "equal") + "; ";
    }
  }
  if (o.pass) o.detail = std::to_string(audits) + " audits pass, strict on torus8, equal on h12xT3";
  return o;
}

Outcome suites(const std::function<std::vector<PropertyResult>(const Model&)>& run) {
  Outcome o;
  int cases = 0;
  for (const char* id : {"torus8", "h12xT3"}) o.pass = all_pass(run(bundled(id)), o.detail, cases) && o.pass;
  if (o.pass) o.detail = std::to_string(cases) + " cases";
  return o;
}

}  // namespace

int main() {
  SuiteOptions opt;
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "nilmanifold (2,2) harmonic spaces", 5.0, criterion1},
      {2, "torus example memberships and decomposition", 1.0, criterion2},
      {3, "theorem audits", 30.0, criterion3},
      {4, "operator identities", 60.0,
       [&] {
         return suites([&](const Model& m) {
           auto a = operator_identity_suite(m, opt);
           auto b = operator_matrix_suite(m);
           a.insert(a.end(), b.begin(), b.end());
           return a;
         });
       }},
      {5, "Weil formula", 30.0, [&] { return suites([&](const Model& m) { return weil_suite(m, opt); }); }},
      {6, "Lefschetz ranks", 10.0, [&] { return suites([](const Model& m) { return lefschetz_rank_suite(m); }); }},
      {7, "primitive decomposition round trip", 30.0,
       [&] { return suites([&](const Model& m) { return decomposition_suite(m, opt, 500); }); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit;
    bool pass = o.pass && in_time;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << timing << (in_time ? "" : ", over budget") << "]\n";
  }
  return all ? 0 : 1;
}
