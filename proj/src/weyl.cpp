#include "weylkit/weyl.hpp"

#include <algorithm>

#include "weylkit/error.hpp"

namespace weylkit {

bool HypothesisReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.pass; });
}

const HypothesisItem& HypothesisReport::at(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return i;
  throw Error(ErrorCode::Schema, "no hypothesis named " + name);
}

std::vector<std::string> HypothesisReport::failures() const {
  std::vector<std::string> out;
  for (const auto& i : items)
    if (!i.pass) out.push_back(i.name);
  return out;
}

ImmCentResult check_immediately_centralizing(const FiniteGroupoid& g, const Subgroupoid& s, const Subgroupoid& t) {
  for (Arrow x : t.members()) {
    const std::vector<Arrow> fibre = s.fibre(g, g.source(x));
    Arrow offender = kNone;
    int needed = 1;
    int max_order = 1;
    for (Arrow a : fibre) {
      const int ord = g.order(a);
      max_order = std::max(max_order, ord);
      if (offender == kNone && g.compose(x, a) != g.compose(a, x)) offender = a;
      Arrow p = a;
      int n = 1;
      while (g.compose(x, p) != g.compose(p, x)) {
        p = g.compose(p, a);
        ++n;
      }
      needed = std::max(needed, n);
    }
    if (offender != kNone && needed <= max_order) return {false, x, needed, offender};
  }
  return {};
}

HypothesisReport check_gamma_cartan_hypotheses(const FiniteGroupoid& g, const TwoCocycle& omega, const Grading& c,
                                               const Subgroupoid& s) {
  HypothesisReport rep;
  auto add = [&](std::string name, bool pass, std::string witness = {}, bool vacuous = false) {
    rep.items.push_back({std::move(name), pass, std::move(witness), vacuous});
  };

  const CocycleReport cr = check_cocycle(g, omega, 1);
  std::string cw;
  if (!cr.violations.empty()) {
    const auto& v = cr.violations.front();
    cw = "(" + g.id(v[0]) + "," + g.id(v[1]) + "," + g.id(v[2]) + ")";
  } else if (!cr.unnormalized.empty()) {
    cw = "w(u,u) != 0 at " + g.id(cr.unnormalized.front());
  }
  add("cocycle", cr.valid, cw);

  const Subgroupoid kernel = kernel_of_grading(g, c);
  std::vector<Arrow> iso_members;
  for (Arrow a : kernel.members())
    if (g.is_isotropy(a)) iso_members.push_back(a);
  const Subgroupoid iso_kernel(g, iso_members);

  const PropertyReport props = subgroupoid_properties(g, s);
  std::string sw;
  for (const char* flag : {"is_subgroupoid", "is_wide", "is_group_bundle"})
    if (props.witnesses.count(flag)) sw = props.witnesses.at(flag);
  const bool structural = props.is_subgroupoid && props.is_wide && props.is_group_bundle;
  add("wide_subgroupoid", structural, sw);

  Arrow outside = kNone;
  for (Arrow a : s.members())
    if (!iso_kernel.contains(a)) {
      outside = a;
      break;
    }
  add("in_iso_kernel", outside == kNone, outside == kNone ? "" : g.id(outside) + " not in Iso(c^-1(0))");

  add("abelian", props.fibres_abelian, props.fibres_abelian ? "" : props.witnesses.at("fibres_abelian"));

  std::string symw;
  const bool symmetric = check_symmetric_on(g, omega, s, &symw);
  add("symmetric", symmetric, symw);

  add("open", true, "finite discrete topology", true);
  add("closed", true, "finite discrete topology", true);

  if (structural && outside == kNone && props.fibres_abelian && symmetric) {
    const auto maximal = find_maximal_symmetric_abelian(g, omega, c);
    const bool found = std::find(maximal.begin(), maximal.end(), s) != maximal.end();
    std::string mw;
    if (!found)
      for (const auto& m : maximal) {
        if (!std::includes(m.members().begin(), m.members().end(), s.members().begin(), s.members().end())) continue;
        for (Arrow a : m.members())
          if (!s.contains(a)) {
            mw = "S extends by " + g.id(a);
            break;
          }
        break;
      }
    add("maximal", found, mw);
  } else {
    add("maximal", false, "S is not an abelian symmetric wide subgroupoid of Iso(c^-1(0))");
  }

  add("normal", props.is_normal, props.is_normal ? "" : props.witnesses.at("is_normal"));

  const ImmCentResult ic = check_immediately_centralizing(g, s, iso_kernel);
  add("immediately_centralizing", ic.pass,
      ic.pass ? "" : "t=" + g.id(ic.t) + ", k=" + std::to_string(ic.k) + ", s=" + g.id(ic.s));
  return rep;
}

// ---------------------------------------------------------------------------

Character WeylData::act_with(Arrow gamma, int x) const {
  const Arrow inv = g.inverse(gamma);
  const int target_base = base_of_unit[g.target(gamma)];
  Character out{target_base, {}};
  const Phase head = -omega(gamma, inv);
  for (int e : bundle.fibre(target_base)) {
    const Arrow a = bundle.arrow(e);
    const Arrow inv_a = g.compose(inv, a);
    const Arrow conj = g.compose(inv_a, gamma);
    const int ce = bundle.element_of(conj);
    if (ce < 0) throw Error(ErrorCode::NotNormal, "conjugate leaves S", g.id(gamma) + "," + g.id(a));
    out.values.push_back(head + omega(inv, a) + omega(inv_a, gamma) + dual.pairing(x, ce));
  }
  return out;
}

WeylData weyl_action(const FiniteGroupoid& g, const Subgroupoid& s, const TwoCocycle& omega) {
  WeylData w;
  w.g = g;
  w.omega = omega;
  w.s = s;
  w.q = quotient_by_bundle(g, s);
  w.bundle = GroupBundle::from_subgroupoid(g, s);
  w.dual = dual_bundle(w.bundle);
  w.base_of_unit.assign(g.size(), -1);
  for (std::size_t b = 0; b < g.units().size(); ++b) w.base_of_unit[g.units()[b]] = static_cast<int>(b);

  const FiniteGroupoid& q = w.q.groupoid;
  w.action.assign(q.size(), std::vector<int>(w.dual.size(), -1));
  for (Arrow cls = 0; cls < q.size(); ++cls) {
    const auto& members = w.q.members[cls];
    const int source_base = w.base_of_unit[g.source(members.front())];
    for (int x : w.dual.fibre(source_base)) {
      const Character first = w.act_with(members.front(), x);
      const int image = w.dual.find(first);
      if (image < 0)
        throw Error(ErrorCode::RepresentativeDisagreement, "action does not produce a character",
                    q.id(cls) + "," + w.dual.id(x));
      for (std::size_t m = 1; m < members.size(); ++m)
        if (w.act_with(members[m], x) != first)
          throw Error(ErrorCode::RepresentativeDisagreement, "representatives of a class act differently",
                      g.id(members.front()) + "," + g.id(members[m]) + "," + w.dual.id(x));
      w.action[cls][x] = image;
    }
  }
  return w;
}

WeylGroupoid build_weyl_groupoid(const WeylData& w) {
  const FiniteGroupoid& q = w.q.groupoid;
  auto id = [&](Arrow cls, int x) { return "(" + q.id(cls) + "," + w.dual.id(x) + ")"; };
  GroupoidDescription d;
  d.name = w.g.name() + "_W";
  for (int x = 0; x < w.dual.size(); ++x) d.units.push_back(id(w.class_unit_of(x), x));
  for (Arrow cls = 0; cls < q.size(); ++cls)
    for (int x = 0; x < w.dual.size(); ++x) {
      const int y = w.action[cls][x];
      if (y < 0) continue;
      d.arrows.push_back({id(cls, x), id(w.class_unit_of(x), x), id(w.class_unit_of(y), y)});
      // ([g],[h].x)([h],x) = ([gh],x)
      for (Arrow left : q.arrows_from(q.target(cls))) d.compose[{id(left, y), id(cls, x)}] = id(q.compose(left, cls), x);
    }
  WeylGroupoid out;
  out.groupoid = validate_groupoid(d);
  out.class_part.assign(out.groupoid.size(), -1);
  out.char_part.assign(out.groupoid.size(), -1);
  out.arrow_at.assign(q.size(), std::vector<Arrow>(w.dual.size(), kNone));
  for (Arrow cls = 0; cls < q.size(); ++cls)
    for (int x = 0; x < w.dual.size(); ++x) {
      if (w.action[cls][x] < 0) continue;
      const Arrow a = out.groupoid.at(id(cls, x));
      out.class_part[a] = cls;
      out.char_part[a] = x;
      out.arrow_at[cls][x] = a;
    }
  return out;
}

Section choose_section(const WeylData& w) {
  Section section(w.q.groupoid.size(), kNone);
  for (Arrow cls = 0; cls < w.q.groupoid.size(); ++cls) {
    const auto& members = w.q.members[cls];
    section[cls] = members.front();
    for (Arrow m : members)
      if (w.g.is_unit(m)) section[cls] = m;
  }
  return section;
}

Section section_from_ids(const WeylData& w, const std::map<std::string, std::string>& choice) {
  const FiniteGroupoid& q = w.q.groupoid;
  Section section(q.size(), kNone);
  for (const auto& [cls_id, arrow_id] : choice) {
    const auto cls = q.find(cls_id);
    const auto arrow = w.g.find(arrow_id);
    if (!cls || !arrow) throw Error(ErrorCode::BadSection, "unknown class or arrow", cls_id + "," + arrow_id);
    if (w.q.class_of[*arrow] != *cls)
      throw Error(ErrorCode::BadSection, "chosen arrow is not in its class", cls_id + "," + arrow_id);
    section[*cls] = *arrow;
  }
  for (Arrow cls = 0; cls < q.size(); ++cls) {
    if (section[cls] == kNone) throw Error(ErrorCode::BadSection, "class without a representative", q.id(cls));
    if (q.is_unit(cls) && !w.g.is_unit(section[cls]))
      throw Error(ErrorCode::BadSection, "unit class must map to its unit", q.id(cls));
  }
  return section;
}

TwoCocycle weyl_twist_cocycle(const WeylData& w, const WeylGroupoid& gw, const Section& section) {
  const FiniteGroupoid& q = w.q.groupoid;
  const FiniteGroupoid& g = w.g;
  const FiniteGroupoid& h = gw.groupoid;
  TwoCocycle c(h);
  for (Arrow alpha = 0; alpha < h.size(); ++alpha)
    for (Arrow beta : h.arrows_to(h.source(alpha))) {
      const int q1 = gw.class_part[alpha], q2 = gw.class_part[beta];
      const int x = gw.char_part[beta];
      const Arrow s1 = section[q1], s2 = section[q2], s12 = section[q.compose(q1, q2)];
      const Arrow prod = g.compose(s1, s2);
      const Arrow b = g.compose(g.inverse(s12), prod);
      const int be = w.bundle.element_of(b);
      if (be < 0 || b == kNone)
        throw Error(ErrorCode::ElementNotInS, "s(gh)^-1 s(g) s(h) is not in S", q.id(q1) + "," + q.id(q2));
      c.set(h, alpha, beta, w.dual.pairing(x, be) - w.omega(s12, b) + w.omega(s1, s2));
    }
  return c;
}

std::vector<std::complex<double>> conditional_expectation(const WeylData& w,
                                                          const std::vector<std::complex<double>>& f) {
  std::vector<std::complex<double>> out(w.dual.size());
  for (int x = 0; x < w.dual.size(); ++x) {
    std::complex<double> sum = 0.0;
    for (int a : w.bundle.fibre(w.dual.base_of(x))) sum += w.dual.pairing(x, a).to_complex() * f[w.bundle.arrow(a)];
    out[x] = sum;
  }
  return out;
}

}  // namespace weylkit
