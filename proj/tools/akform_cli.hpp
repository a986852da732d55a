#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "akform/audit.hpp"
#include "akform/properties.hpp"
#include "akform/reproduce.hpp"
#include "akform_bundled_models.hpp"

namespace akform::cli {

using nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

struct ModelNotFound : Error {
  using Error::Error;
};

inline std::optional<std::string> bundled_text(const std::string& id) {
  for (const auto& [name, text] : bundled_models())
    if (name == id) return std::string(text);
  return std::nullopt;
}

/// An existing file path wins; otherwise the argument (or its file stem) names a bundled model.
inline Model resolve_model(const std::string& arg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return load_model_file(arg);
  std::string stem = fs::path(arg).stem().string();
  for (const std::string& id : {arg, stem})
    if (auto text = bundled_text(id)) return parse_model(*text, id);
  throw ModelNotFound("model file not found: '" + arg + "' (bundled models: torus8, h12xT3)");
}

inline Bidegree parse_bidegree(const std::string& s) {
  int p = 0, q = 0;
  char comma = 0, extra = 0;
  std::istringstream in(s);
  if (!(in >> p >> comma >> q) || comma != ',' || (in >> extra))
    throw UsageError("bidegree must look like p,q (got '" + s + "')");
  return {p, q};
}

inline std::string bidegree_str(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

struct Options {
  std::string model;
  std::string op;
  std::string bidegree;
  std::string form;
  std::string expr;
  std::string name;
  std::string target;
  bool json = false;
  bool unicode = false;
  std::uint64_t seed = SuiteOptions{}.seed;
  int cases = SuiteOptions{}.cases;
  int per_window = 500;
};

inline int cmd_validate(const Options& o, std::ostream& out) {
  Model m = resolve_model(o.model);
  ValidationReport rep = validate_model(m);
  out << "model " << m.name() << " (n = " << m.n() << ")\n" << format_report(rep);
  return rep.d_squared_all() ? 0 : 1;
}

inline int cmd_harmonic(const Options& o, std::ostream& out) {
  Model m = resolve_model(o.model);
  HarmonicOp op = parse_harmonic_op(o.op);
  Bidegree b = parse_bidegree(o.bidegree);
  HarmonicSpace hs = harmonic_space(m, op, b.p, b.q);
  if (o.json) {
    ordered_json j;
    j["model"] = m.name();
    j["op"] = harmonic_op_name(op);
    j["bidegree"] = {b.p, b.q};
    j["dim"] = hs.dim();
    j["basis"] = ordered_json::array();
    for (const auto& f : hs.basis()) j["basis"].push_back(to_literal(f));
    j["adjoint_agrees"] = hs.adjoint_agrees;
    j["laplacian_agrees"] = hs.laplacian_agrees ? ordered_json(*hs.laplacian_agrees) : ordered_json(nullptr);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "H_" << harmonic_op_name(op) << "^" << bidegree_str(b) << " on " << m.name() << ": dim " << hs.dim() << "\n";
  for (const auto& f : hs.basis()) out << "  " << to_literal(f, o.unicode) << "\n";
  out << "adjoint conditions agree: " << (hs.adjoint_agrees ? "yes" : "no") << "\n";
  if (hs.laplacian_agrees) out << "laplacian kernel agrees: " << (*hs.laplacian_agrees ? "yes" : "no") << "\n";
  return 0;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  Model m = resolve_model(o.model);
  Form f = m.parse_form(o.form);
  std::optional<Bidegree> b;
  if (!o.bidegree.empty()) b = parse_bidegree(o.bidegree);
  PrimitiveComponents pc = primitive_decompose(m, f, b);
  if (o.json) {
    ordered_json j;
    j["model"] = m.name();
    j["form"] = to_literal(f);
    j["bidegree"] = {pc.source.p, pc.source.q};
    j["components"] = ordered_json::array();
    for (const auto& [r, x] : pc.components)
      j["components"].push_back({{"r", r}, {"bidegree", {pc.source.p - r, pc.source.q - r}}, {"form", to_literal(x)}});
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "primitive decomposition of " << to_literal(f, o.unicode) << " on " << m.name() << ", bidegree "
      << bidegree_str(pc.source) << "\n";
  for (const auto& [r, x] : pc.components)
    out << "  r=" << r << " " << bidegree_str({pc.source.p - r, pc.source.q - r}) << ": " << to_literal(x, o.unicode)
        << "\n";
  return 0;
}

inline int cmd_check(const Options& o, std::ostream& out) {
  if (o.op.empty() == o.expr.empty()) throw UsageError("check needs exactly one of --op and --expr");
  Model m = resolve_model(o.model);
  Form f = m.parse_form(o.form);
  if (!o.op.empty()) {
    HarmonicCheck c = is_harmonic(m, f, parse_harmonic_op(o.op));
    if (c.harmonic)
      out << "harmonic\n";
    else
      out << "not harmonic; witness: " << c.condition << "-condition = " << to_literal(c.value, o.unicode) << "\n";
    return 0;
  }
  OperatorExpr e = parse_operator_expr(o.expr);
  Form v = apply(m, e, f);
  if (v.is_zero())
    out << "annihilated by " << e.str() << "\n";
  else
    out << "not annihilated; " << e.str() << " = " << to_literal(v, o.unicode) << "\n";
  return 0;
}

/// Checks that an operator expression is the zero map on every bidegree.
inline AuditReport audit_identity(const Model& m, const OperatorExpr& e) {
  AuditReport rep;
  rep.name = "identity: " + e.str() + " = 0";
  rep.model = m.name();
  for (int p = 0; p <= m.n(); ++p)
    for (int q = 0; q <= m.n(); ++q) {
      OperatorMatrix mat = operator_matrix(m, e, p, q);
      int nonzero = 0;
      for (const auto& row : mat.entries)
        for (const auto& x : row) nonzero += !x.is_zero();
      rep.add("bidegree " + bidegree_str({p, q}), nonzero == 0,
              nonzero ? std::to_string(nonzero) + " nonzero entries" : std::string());
    }
  return rep;
}

inline int cmd_audit(const Options& o, std::ostream& out) {
  if (o.name.empty() == o.expr.empty()) throw UsageError("audit needs exactly one of --name and --expr");
  Model m = resolve_model(o.model);
  AuditReport rep = o.name.empty() ? audit_identity(m, parse_operator_expr(o.expr)) : audit_theorem(m, o.name);
  if (o.json) {
    ordered_json j;
    j["audit"] = rep.name;
    j["model"] = rep.model;
    j["pass"] = rep.pass();
    j["clauses"] = ordered_json::array();
    for (const auto& c : rep.clauses) j["clauses"].push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
    j["notes"] = rep.notes;
    out << j.dump(2) << "\n";
  } else {
    out << rep.str();
  }
  return rep.pass() ? 0 : 1;
}

inline int cmd_reproduce(const Options& o, std::ostream& out) {
  Model m = resolve_model(o.target);
  ReproReport rep;
  if (m.name() == "torus8")
    rep = reproduce_torus8(m);
  else if (m.name() == "h12xT3")
    rep = reproduce_h12xT3(m);
  else
    throw UsageError("reproduce takes torus8 or h12xT3, got '" + o.target + "'");
  out << rep.str();
  return rep.pass() ? 0 : 1;
}

inline int cmd_selftest(const Options& o, std::ostream& out) {
  std::vector<Model> models;
  if (o.model.empty()) {
    for (const auto& [name, text] : bundled_models()) models.push_back(parse_model(std::string(text), std::string(name)));
  } else {
    models.push_back(resolve_model(o.model));
  }
  SuiteOptions opt;
  opt.seed = o.seed;
  opt.cases = o.cases;
  bool all = true;
  for (const auto& m : models) {
    std::vector<std::vector<PropertyResult>> suites = {operator_identity_suite(m, opt), operator_matrix_suite(m),
                                                       weil_suite(m, opt), lefschetz_rank_suite(m),
                                                       decomposition_suite(m, opt, o.per_window), harmonic_suite(m)};
    for (const auto& suite : suites)
      for (const auto& r : suite) {
        all = all && r.pass();
        out << (r.pass() ? "PASS" : "FAIL") << "  " << m.name() << "  " << r.name << "  cases=" << r.cases;
        if (!r.pass()) out << "  failures=" << r.failures << "  first: " << r.first_failure;
        out << "\n";
      }
  }
  out << "seed " << o.seed << ": " << (all ? "all properties hold" : "FAILURES present") << "\n";
  return all ? 0 : 1;
}

/// Exit status: 0 success, 1 failed validation/audit/reproduction, 2 usage, parse or input errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bigraded operator calculus on almost Hermitian coframe models"};
  app.name("akform");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--unicode", o.unicode, "Pretty-print forms with unicode superscripts");

  auto* validate = app.add_subcommand("validate", "Check d^2 = 0, d omega = 0 and integrability");
  validate->add_option("model", o.model, "Model file or bundled id")->required();

  auto* harmonic = app.add_subcommand("harmonic", "Coframe-constant harmonic space at a bidegree");
  harmonic->add_option("model", o.model, "Model file or bundled id")->required();
  harmonic->add_option("--op", o.op, "d, del, delbar, bc or a")->required();
  harmonic->add_option("--bidegree", o.bidegree, "p,q")->required();
  harmonic->add_flag("--json", o.json, "Machine-readable output");

  auto* decompose = app.add_subcommand("decompose", "Primitive decomposition of a homogeneous form");
  decompose->add_option("model", o.model, "Model file or bundled id")->required();
  decompose->add_option("--form", o.form, "Form literal, e.g. 2*phi[2,~1,4,~4]")->required();
  decompose->add_option("--bidegree", o.bidegree, "p,q (needed only for the zero form)");
  decompose->add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check", "Harmonicity of a form, or its image under an operator expression");
  check->add_option("model", o.model, "Model file or bundled id")->required();
  check->add_option("--form", o.form, "Form literal")->required();
  check->add_option("--op", o.op, "d, del, delbar, bc or a");
  check->add_option("--expr", o.expr, "Operator expression, e.g. \"del delbar star\"");

  auto* audit = app.add_subcommand("audit", "Run a theorem audit or an operator identity audit");
  audit->add_option("model", o.model, "Model file or bundled id")->required();
  audit->add_option("--name", o.name, "Audit id, e.g. decomp-kk(bc,2) or inclusion-2-2");
  audit->add_option("--expr", o.expr, "Operator expression required to vanish on every bidegree");
  audit->add_flag("--json", o.json, "Machine-readable output");

  auto* reproduce = app.add_subcommand("reproduce", "Reproduction battery for a bundled example");
  reproduce->add_option("example", o.target, "torus8 or h12xT3")->required()->check(CLI::IsMember({"torus8", "h12xT3"}));

  auto* selftest = app.add_subcommand("selftest", "Randomized operator identity and decomposition suites");
  selftest->add_option("model", o.model, "Model file or bundled id (default: all bundled models)");
  selftest->add_option("--seed", o.seed, "Random seed");
  selftest->add_option("--cases", o.cases, "Cases per randomized property")->check(CLI::PositiveNumber);
  selftest->add_option("--per-window", o.per_window, "Round-trip cases per bidegree window")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*harmonic) return cmd_harmonic(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*check) return cmd_check(o, out);
    if (*audit) return cmd_audit(o, out);
    if (*reproduce) return cmd_reproduce(o, out);
    return cmd_selftest(o, out);
  } catch (const Error& e) {
    err << "akform: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace akform::cli
