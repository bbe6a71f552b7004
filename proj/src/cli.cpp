#include "weylkit/cli.hpp"

#include <cstdlib>
#include <functional>
#include <random>

#include <CLI11.hpp>

#include "weylkit/algebra.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/error.hpp"
#include "weylkit/io.hpp"
#include "weylkit/reconstruct.hpp"
#include "weylkit/semidirect.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

namespace {

struct Options {
  std::string format = "text";
  std::string subgroupoid = "default";
  std::string section = "lex";
  double tol = 1e-8;
  std::uint64_t seed = 20240917;
  int trials = 100;
  std::string file;
  std::string output;
  std::string compare;
  std::string package;
  std::string theta;
  std::string sidecars;
  std::vector<std::string> gen_args;
};

struct Outcome {
  json report;
  int code = 0;
  bool raw_json = false;  // a groupoid file, printed as JSON whatever the format
};

json error_json(const Error& e) {
  return {{"status", "error"}, {"error", std::string(error_name(e.code()))}, {"message", e.what()},
          {"witness", e.witness()}};
}

json hypotheses_json(const HypothesisReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back({{"name", it.name}, {"pass", it.pass}, {"witness", it.witness}, {"vacuous", it.vacuous}});
  return {{"pass", r.all_pass()}, {"items", items}};
}

json ids_of(const FiniteGroupoid& g, const std::vector<Arrow>& arrows) {
  json out = json::array();
  for (Arrow a : arrows) out.push_back(g.id(a));
  return out;
}

std::string derived_path(const std::string& input, const std::string& suffix) {
  std::string stem = input;
  if (stem.size() > 5 && stem.ends_with(".json")) stem.resize(stem.size() - 5);
  return stem + suffix;
}

Subgroupoid resolve_subgroupoid(const GroupoidFile& f, const Options& opt) {
  std::string mode = opt.subgroupoid;
  if (mode == "default") mode = f.marked ? "marked" : "auto";
  if (mode == "marked") {
    if (!f.marked) throw Error(ErrorCode::Schema, "file has no marked_subgroupoid", "/marked_subgroupoid");
    return Subgroupoid::from_ids(f.groupoid, *f.marked);
  }
  const auto found = find_maximal_symmetric_abelian(f.groupoid, f.cocycle, f.grading_or_trivial());
  if (found.empty()) throw Error(ErrorCode::NotBundle, "no symmetric abelian subgroupoid found");
  for (const auto& s : found)
    if (check_gamma_cartan_hypotheses(f.groupoid, f.cocycle, f.grading_or_trivial(), s).all_pass()) return s;
  return found.front();
}

Section resolve_section(const GroupoidFile& f, const WeylData& w, const Options& opt) {
  if (opt.section == "file") {
    if (!f.section) throw Error(ErrorCode::Schema, "file has no section", "/section");
    return section_from_ids(w, *f.section);
  }
  return choose_section(w);
}

std::vector<std::string> unit_class_ids(const FiniteGroupoid& g, const std::vector<int>& class_part,
                                        const FiniteGroupoid& classes) {
  std::vector<std::string> out;
  for (Arrow a = 0; a < g.size(); ++a)
    if (classes.is_unit(class_part[a])) out.push_back(g.id(a));
  return out;
}

// ---------------------------------------------------------------------------

Outcome cmd_validate(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  const FiniteGroupoid& g = f.groupoid;
  const CocycleReport cr = check_cocycle(g, f.cocycle);
  json violations = json::array();
  for (const auto& v : cr.violations) violations.push_back("(" + g.id(v[0]) + "," + g.id(v[1]) + "," + g.id(v[2]) + ")");
  json unnormalized = json::array();
  for (Arrow u : cr.unnormalized) unnormalized.push_back(g.id(u));
  Outcome o;
  o.report["command"] = "validate";
  o.report["name"] = g.name();
  o.report["arrows"] = g.size();
  o.report["units"] = g.units().size();
  o.report["groupoid_valid"] = true;
  o.report["cocycle"] = {{"valid", cr.valid},
                         {"triples_checked", cr.triples_checked},
                         {"violation_count", cr.violation_count},
                         {"violations", violations},
                         {"unnormalized", unnormalized}};
  o.report["grading"] = f.grading.has_value();
  if (f.marked) {
    const PropertyReport p = subgroupoid_properties(g, Subgroupoid::from_ids(g, *f.marked));
    o.report["marked_subgroupoid"] = {{"is_subgroupoid", p.is_subgroupoid}, {"is_wide", p.is_wide},
                                      {"is_group_bundle", p.is_group_bundle}, {"fibres_abelian", p.fibres_abelian},
                                      {"is_normal", p.is_normal}};
  }
  o.report["status"] = cr.valid ? "valid" : "invalid";
  o.code = cr.valid ? 0 : 1;
  return o;
}

Outcome cmd_hypotheses(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  const Grading c = f.grading_or_trivial();
  Outcome o;
  o.report["command"] = "hypotheses";
  o.report["name"] = f.groupoid.name();
  std::string mode = opt.subgroupoid == "default" ? (f.marked ? "marked" : "auto") : opt.subgroupoid;
  o.report["subgroupoid"] = mode;
  if (mode == "marked") {
    const HypothesisReport r = check_gamma_cartan_hypotheses(f.groupoid, f.cocycle, c, resolve_subgroupoid(f, opt));
    o.report["hypotheses"] = hypotheses_json(r);
    o.report["status"] = r.all_pass() ? "PASS" : "FAIL";
    o.code = r.all_pass() ? 0 : 1;
    return o;
  }
  json candidates = json::array();
  bool any = false;
  for (const auto& s : find_maximal_symmetric_abelian(f.groupoid, f.cocycle, c)) {
    const HypothesisReport r = check_gamma_cartan_hypotheses(f.groupoid, f.cocycle, c, s);
    any = any || r.all_pass();
    candidates.push_back({{"members", ids_of(f.groupoid, s.members())}, {"hypotheses", hypotheses_json(r)}});
  }
  o.report["candidates"] = candidates;
  o.report["status"] = any ? "PASS" : "FAIL";
  o.code = any ? 0 : 1;
  return o;
}

struct WeylRun {
  GroupoidFile input;
  WeylData w;
  WeylGroupoid gw;
  Section section;
  TwoCocycle twist;
};

WeylRun run_weyl(const Options& opt) {
  WeylRun r;
  r.input = read_groupoid_file(opt.file);
  r.w = weyl_action(r.input.groupoid, resolve_subgroupoid(r.input, opt), r.input.cocycle);
  r.gw = build_weyl_groupoid(r.w);
  r.section = resolve_section(r.input, r.w, opt);
  r.twist = weyl_twist_cocycle(r.w, r.gw, r.section);
  return r;
}

Outcome cmd_weyl(const Options& opt) {
  const WeylRun r = run_weyl(opt);
  GroupoidFile out;
  out.groupoid = r.gw.groupoid.renamed(r.input.groupoid.name() + ".weyl");
  out.cocycle = r.twist;
  if (r.input.grading) out.grading = weyl_grading(r.w, r.gw, *r.input.grading);
  out.marked = unit_class_ids(r.gw.groupoid, r.gw.class_part, r.w.q.groupoid);
  const std::string path = opt.output.empty() ? derived_path(opt.file, ".weyl.json") : opt.output;
  write_json_file(path, emit_groupoid_json(out));

  Outcome o;
  o.report["command"] = "weyl";
  o.report["name"] = r.input.groupoid.name();
  o.report["size_G"] = r.input.groupoid.size();
  o.report["size_GW"] = r.gw.groupoid.size();
  o.report["classes"] = r.w.q.groupoid.size();
  o.report["characters"] = r.w.dual.size();
  o.report["twist_zero"] = r.twist.is_zero();
  o.report["output"] = path;
  o.report["status"] = "ok";
  return o;
}

Outcome cmd_twist(const Options& opt) {
  const WeylRun r = run_weyl(opt);
  const FiniteGroupoid& g = r.gw.groupoid;
  const CocycleReport cr = check_cocycle(g, r.twist);
  json entries = json::object();
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a)))
      if (!r.twist(a, b).is_zero()) entries[g.id(a) + "," + g.id(b)] = r.twist(a, b).to_string();
  json section = json::object();
  for (Arrow cls = 0; cls < r.w.q.groupoid.size(); ++cls)
    section[r.w.q.groupoid.id(cls)] = r.input.groupoid.id(r.section[cls]);
  Outcome o;
  o.report["command"] = "twist";
  o.report["name"] = r.input.groupoid.name();
  o.report["section"] = section;
  o.report["cocycle_valid"] = cr.valid;
  o.report["triples_checked"] = cr.triples_checked;
  o.report["twist_zero"] = r.twist.is_zero();
  o.report["nonzero_entries"] = entries;
  o.report["status"] = cr.valid ? "PASS" : "FAIL";
  o.code = cr.valid ? 0 : 1;
  return o;
}

Outcome cmd_expectation(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  const WeylData w = weyl_action(f.groupoid, resolve_subgroupoid(f, opt), f.cocycle);
  const TwistedAlgebra alg(f.groupoid, f.cocycle);
  Tolerances tol;
  tol.spectral = opt.tol;
  const ExpectationReport r = expectation_checks(alg, w, opt.trials, opt.seed, tol);
  Outcome o;
  o.report["command"] = "expectation";
  o.report["name"] = f.groupoid.name();
  o.report["trials"] = r.trials;
  o.report["seed"] = r.seed;
  o.report["positivity_failures"] = r.positivity_failures;
  o.report["min_value"] = r.min_value;
  o.report["max_imag"] = r.max_imag;
  o.report["faithfulness_failures"] = r.faithfulness_failures;
  o.report["form_min_eigenvalue"] = r.form_min_eigenvalue;
  o.report["idempotence_defect"] = r.idempotence_defect;
  o.report["tolerances"] = {{"positivity", tol.positivity}, {"faithfulness", tol.faithfulness}};
  o.report["status"] = r.pass() ? "PASS" : "FAIL";
  o.code = r.pass() ? 0 : 1;
  return o;
}

json assumption_json(const Assumption51Report& r) {
  json items = json::array();
  for (const auto& c : r.clauses)
    items.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}, {"vacuous", c.vacuous}});
  return {{"pass", r.all_pass()}, {"items", items}};
}

Outcome cmd_assumption51(const Options& opt) {
  Outcome o;
  o.report["command"] = "assumption51";
  ActionPackage pkg;
  if (!opt.package.empty()) {
    const GroupoidFile h = read_groupoid_file(opt.file);
    pkg = parse_action_package(read_json_file(opt.package), h.groupoid);
    o.report["source"] = opt.package;
  } else {
    const GroupoidFile f = read_groupoid_file(opt.file);
    const WeylData w = weyl_action(f.groupoid, resolve_subgroupoid(f, opt), f.cocycle);
    pkg = derive_weyl_actions(w, build_weyl_groupoid(w));
    o.report["source"] = "derived from " + f.groupoid.name();
    if (!opt.output.empty()) {
      write_json_file(opt.output, emit_action_package(pkg, f.groupoid.name() + ".weyl"));
      o.report["output"] = opt.output;
    }
  }
  const Assumption51Report r = verify_assumption_51(pkg);
  o.report["assumption"] = assumption_json(r);
  o.report["status"] = r.all_pass() ? "PASS" : "FAIL";
  o.code = r.all_pass() ? 0 : 1;
  return o;
}

/// Grading of boxtimes induced from G through the section.
Grading boxtimes_grading(const Grading& c, const Boxtimes& box, const QuotientHT& q, const WeylData& w,
                         const Section& section) {
  Grading out;
  out.orders = c.orders;
  for (Arrow a = 0; a < box.groupoid.size(); ++a)
    out.values.push_back(c.values[section[w.q.groupoid.at(q.groupoid.id(box.class_part[a]))]]);
  return out;
}

GroupoidFile boxtimes_file(const GroupoidFile& input, const Boxtimes& box, const QuotientHT& q, const WeylData& w,
                           const Section& section) {
  GroupoidFile out;
  out.groupoid = box.groupoid.renamed(input.groupoid.name() + ".boxtimes");
  out.cocycle = TwoCocycle(box.groupoid);
  if (input.grading) out.grading = boxtimes_grading(*input.grading, box, q, w, section);
  out.marked = unit_class_ids(box.groupoid, box.class_part, q.groupoid);
  return out;
}

Outcome cmd_boxtimes(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  if (!f.cocycle.is_zero()) throw Error(ErrorCode::NontrivialCocycle, "boxtimes needs the zero cocycle");
  const WeylData w = weyl_action(f.groupoid, resolve_subgroupoid(f, opt), f.cocycle);
  const WeylGroupoid gw = build_weyl_groupoid(w);
  const Section section = resolve_section(f, w, opt);
  const ActionPackage pkg = derive_weyl_actions(w, gw);
  const QuotientHT q = quotient_HT(pkg);
  const DiamondAction diamond = diamond_action(pkg, q);
  const ThetaDatum theta = opt.theta.empty() ? theta_from_section(w, section, q, diamond)
                                             : parse_theta(read_json_file(opt.theta), q, diamond);
  const ThetaReport tr = verify_theta(q, diamond, theta);
  Outcome o;
  o.report["command"] = "boxtimes";
  o.report["name"] = f.groupoid.name();
  o.report["size_HT"] = q.groupoid.size();
  o.report["size_dual_T"] = diamond.dual.size();
  o.report["theta_unit_trivial"] = tr.unit_trivial;
  o.report["theta_cocycle_identity"] = tr.cocycle_identity;
  o.report["theta_violations"] = tr.violations;
  if (!tr.valid()) {
    o.report["status"] = "FAIL";
    o.code = 1;
    return o;
  }
  const Boxtimes box = build_boxtimes(q, diamond, theta);
  const std::string path = opt.output.empty() ? derived_path(opt.file, ".boxtimes.json") : opt.output;
  write_json_file(path, emit_groupoid_json(boxtimes_file(f, box, q, w, section)));
  o.report["size_boxtimes"] = box.groupoid.size();
  o.report["output"] = path;
  o.report["status"] = "ok";
  return o;
}

Outcome cmd_roundtrip(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  const Subgroupoid s = resolve_subgroupoid(f, opt);
  const Grading c = f.grading_or_trivial();
  std::optional<Section> section;
  if (opt.section == "file") section = resolve_section(f, weyl_action(f.groupoid, s, f.cocycle), opt);
  const Reconstruction r = reconstruction_iso(f.groupoid, f.cocycle, c, s, section);
  const Thm59Report t = verify_thm59_hypotheses(r.package, r.quotient, r.diamond, r.theta,
                                                weyl_grading(r.weyl, r.weyl_groupoid, c));
  const auto iso = find_isomorphism(r.boxtimes.groupoid, f.groupoid);

  const FiniteGroupoid& ht = r.quotient.groupoid;
  const CharacterBundle& dual = r.diamond.dual;
  const GroupBundle dual_group = dual.as_group_bundle();
  json theta = json::array();
  int max_order = 1;
  for (Arrow a = 0; a < ht.size(); ++a)
    for (Arrow b : ht.arrows_to(ht.source(a))) {
      const int x = r.theta[a][b];
      const int ord = dual_group.order(x);
      max_order = std::max(max_order, ord);
      if (ord > 1) theta.push_back({{"pair", "[" + ht.id(a) + "],[" + ht.id(b) + "]"}, {"value", dual.id(x)}, {"order", ord}});
    }
  json diamond = json::array();
  for (Arrow a = 0; a < ht.size(); ++a)
    for (int x : dual.fibre(r.quotient.base_of_source(a)))
      if (r.diamond.act(a, x) != x) diamond.push_back("[" + ht.id(a) + "] moves " + dual.id(x) + " to " + dual.id(r.diamond.act(a, x)));

  const bool pass = r.phi_isomorphism && r.grading_compatible && iso.has_value();
  Outcome o;
  o.report["command"] = "roundtrip";
  o.report["name"] = f.groupoid.name();
  o.report["size_G"] = f.groupoid.size();
  o.report["size_HT"] = ht.size();
  o.report["size_dual_T"] = dual.size();
  o.report["size_boxtimes"] = r.boxtimes.groupoid.size();
  o.report["assumption_pass"] = r.assumption.all_pass();
  o.report["theta_valid"] = r.theta_report.valid();
  o.report["theta_nontrivial"] = theta;
  o.report["theta_max_order"] = max_order;
  o.report["diamond_nontrivial"] = diamond;
  o.report["phi_isomorphism"] = r.phi_isomorphism;
  o.report["grading_compatible"] = r.grading_compatible;
  o.report["isomorphism_search"] = iso.has_value();
  o.report["sufficient_hypotheses"] = {{"descends", t.descends},
                                       {"effective", t.effective},
                                       {"imm_centralizing_action", t.imm_cent_action},
                                       {"witness", t.witness},
                                       {"cross_validation", hypotheses_json(t.cross_validation)}};
  if (!t.hypotheses_met() && pass)
    o.report["note"] = "sufficient hypotheses fail, round trip still succeeds";
  if (!opt.output.empty()) {
    write_json_file(opt.output, emit_groupoid_json(boxtimes_file(f, r.boxtimes, r.quotient, r.weyl, r.section)));
    o.report["output"] = opt.output;
  }
  if (!opt.sidecars.empty()) {
    write_json_file(opt.sidecars + ".package.json", emit_action_package(r.package, f.groupoid.name() + ".weyl"));
    write_json_file(opt.sidecars + ".theta.json", emit_theta(r.quotient, r.diamond, r.theta, ht.name()));
  }
  o.report["status"] = pass ? "PASS" : "FAIL";
  o.code = pass ? 0 : 1;
  return o;
}

Outcome cmd_algebra(const Options& opt) {
  const GroupoidFile f = read_groupoid_file(opt.file);
  const TwistedAlgebra alg(f.groupoid, f.cocycle);
  Tolerances tol;
  tol.spectral = opt.tol;

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  std::vector<Element> samples;
  for (int i = 0; i < 8; ++i) {
    Element e(alg.dim());
    for (int k = 0; k < alg.dim(); ++k) e[k] = cplx(normal(rng), normal(rng));
    samples.push_back(e / e.norm());
  }
  const double hom = homomorphism_defect(alg, samples);
  const double assoc = associativity_defect(alg, 100, opt.seed);
  const WedderburnResult wb = wedderburn_blocks(alg, opt.seed, tol.spectral);
  bool pass = hom <= tol.homomorphism && assoc <= tol.homomorphism;

  Outcome o;
  o.report["command"] = "algebra";
  o.report["name"] = f.groupoid.name();
  o.report["homomorphism_defect"] = hom;
  o.report["associativity_defect"] = assoc;
  if (f.grading) {
    const std::string gv = grading_violation(alg, *f.grading);
    o.report["grading_violation"] = gv;
    pass = pass && gv.empty();
  }
  if (f.marked) {
    const CommutantReport cr = commutant_check(alg, f.grading_or_trivial(), Subgroupoid::from_ids(f.groupoid, *f.marked));
    o.report["commutant"] = {{"a0_dim", cr.a0_dim},
                             {"d_dim", cr.d_dim},
                             {"commutant_dim", cr.commutant_dim},
                             {"maximal_abelian", cr.maximal_abelian()},
                             {"witness", cr.witness}};
  }
  json dims = json::array({wb.dim});
  json centers = json::array({wb.center_dim});
  json blocks = json::array({wb.blocks});
  if (!opt.compare.empty()) {
    const GroupoidFile other = read_groupoid_file(opt.compare);
    const AlgebraComparison cmp =
        compare_algebras(alg, TwistedAlgebra(other.groupoid, other.cocycle), opt.seed, tol.spectral);
    dims.push_back(cmp.right.dim);
    centers.push_back(cmp.right.center_dim);
    blocks.push_back(cmp.right.blocks);
    o.report["compare"] = other.groupoid.name();
    o.report["verdict"] = cmp.pass() ? "PASS" : "FAIL";
    pass = pass && cmp.pass();
  }
  o.report["dimensions"] = dims;
  o.report["center_dims"] = centers;
  o.report["blocks"] = blocks;
  o.report["seed"] = opt.seed;
  o.report["tolerances"] = {{"spectral", tol.spectral}, {"homomorphism", tol.homomorphism}};
  o.report["status"] = pass ? "PASS" : "FAIL";
  o.code = pass ? 0 : 1;
  return o;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Schema, std::string("expected an integer for ") + what + ", got \"" + s + "\"");
}

GroupoidFile semidirect_file(const SemidirectSpec& spec) {
  const SemidirectGroup sg = build_semidirect(spec);
  GroupoidFile f;
  f.groupoid = sg.g.renamed(spec.name);
  f.cocycle = sg.omega;
  f.grading = sg.c;
  std::vector<std::string> ids;
  for (Arrow a : sg.h.members()) ids.push_back(sg.g.id(a));
  f.marked = std::move(ids);
  return f;
}

Outcome cmd_gen(const Options& opt) {
  const auto& a = opt.gen_args;
  if (a.empty()) throw Error(ErrorCode::Schema, "gen needs a family: rotation N P | dihedral N | corpus NAME");
  GroupoidFile f;
  if (a[0] == "rotation" && a.size() == 3) {
    f = semidirect_file(gen_rotation(parse_int(a[1], "N"), parse_int(a[2], "P")));
  } else if (a[0] == "dihedral" && a.size() == 2) {
    f = semidirect_file(gen_dihedral(parse_int(a[1], "N")));
  } else if (a[0] == "corpus" && a.size() == 2) {
    f = file_from_corpus(corpus_by_name(a[1]));
  } else {
    throw Error(ErrorCode::Schema, "unknown gen family or wrong argument count");
  }
  Outcome o;
  o.report = emit_groupoid_json(f);
  o.raw_json = opt.output.empty();
  if (!opt.output.empty()) {
    write_json_file(opt.output, o.report);
    o.report = {{"command", "gen"}, {"name", f.groupoid.name()}, {"arrows", f.groupoid.size()},
                {"output", opt.output}, {"status", "ok"}};
  }
  return o;
}

// ---------------------------------------------------------------------------

bool is_check_list(const json& v) {
  return v.is_array() && !v.empty() && v.front().is_object() && v.front().contains("name") &&
         v.front().contains("pass");
}

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (is_check_list(value)) {
      out << pad << key << ":\n";
      for (const auto& item : value) {
        out << pad << "  [" << (item["pass"].get<bool>() ? "PASS" : "FAIL") << "] " << item["name"].get<std::string>();
        if (item.value("vacuous", false)) out << " (vacuous)";
        const std::string w = item.value("witness", "");
        if (!w.empty()) out << "  " << w;
        out << "\n";
      }
    } else if (value.is_object()) {
      out << pad << key << ":\n";
      render_text(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << ":\n";
      for (const auto& item : value) {
        out << pad << "  -\n";
        render_text(item, out, indent + 4);
      }
    } else if (value.is_string()) {
      out << pad << key << ": " << value.get<std::string>() << "\n";
    } else {
      out << pad << key << ": " << value.dump() << "\n";
    }
  }
}

void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json")
    out << report.dump(2) << "\n";
  else
    render_text(report, out, 0);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Finite groupoid toolkit for Weyl groupoids, twists and Cartan pairs", "weylkit"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    std::function<Outcome(const Options&)> run;
  };
  const std::vector<Command> commands = {
      {"validate", "check groupoid axioms and the cocycle condition", cmd_validate},
      {"hypotheses", "check the Gamma-Cartan hypotheses", cmd_hypotheses},
      {"weyl", "build the Weyl groupoid and twist and write them as a groupoid file", cmd_weyl},
      {"twist", "report the twist cocycle of the Weyl groupoid", cmd_twist},
      {"expectation", "random positivity and faithfulness trials for the conditional expectation", cmd_expectation},
      {"assumption51", "verify the action axioms of an action package", cmd_assumption51},
      {"boxtimes", "build the twisted semidirect product from the quotient data", cmd_boxtimes},
      {"roundtrip", "run the reconstruction pipeline and verify the isomorphism", cmd_roundtrip},
      {"algebra", "numerical checks and Wedderburn blocks of the twisted algebra", cmd_algebra},
      {"gen", "emit a generated groupoid file", cmd_gen},
  };
  std::map<CLI::App*, const Command*> dispatch;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    if (std::string(c.name) == "gen") {
      sub->add_option("args", opt.gen_args, "family and parameters")->required();
    } else {
      sub->add_option("file", opt.file, "groupoid JSON file")->required();
      sub->add_option("--subgroupoid", opt.subgroupoid, "auto or marked")
          ->check(CLI::IsMember({"default", "auto", "marked"}));
      sub->add_option("--section", opt.section, "lex or file")->check(CLI::IsMember({"lex", "file"}));
      sub->add_option("--tol", opt.tol, "spectral gap tolerance");
      sub->add_option("--seed", opt.seed, "random seed");
      sub->add_option("--trials", opt.trials, "random trials")->check(CLI::PositiveNumber);
      sub->add_option("--compare", opt.compare, "second groupoid file to compare against");
      sub->add_option("--package", opt.package, "action package sidecar");
      sub->add_option("--theta", opt.theta, "theta sidecar");
      sub->add_option("--sidecars", opt.sidecars, "prefix for sidecar outputs");
    }
    sub->add_option("-o,--output", opt.output, "output path");
    dispatch[sub] = &c;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("WEYLKIT_SEED")) {
    try {
      std::size_t used = 0;
      opt.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: WEYLKIT_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  const Command* cmd = nullptr;
  for (const auto& [sub, c] : dispatch)
    if (sub->parsed()) cmd = c;
  try {
    const Outcome o = cmd->run(opt);
    emit(o.report, o.raw_json ? "json" : opt.format, out);
    return o.code;
  } catch (const Error& e) {
    json report = error_json(e);
    report["command"] = cmd->name;
    emit(report, opt.format, opt.format == "json" ? out : err);
    return error_exit_code(e.code());
  }
}

}  // namespace weylkit
