#include "weylkit/reconstruct.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "weylkit/error.hpp"

namespace weylkit {

bool Assumption51Report::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

const ClauseResult& Assumption51Report::at(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return c;
  throw Error(ErrorCode::Schema, "no clause named " + name);
}

namespace {

/// Collects the first failure per clause.
class ClauseLog {
 public:
  void begin(std::string name) {
    clauses_.push_back({std::move(name), true, {}, false});
  }
  void require(bool ok, const std::function<std::string()>& witness) {
    auto& c = clauses_.back();
    if (ok || !c.pass) return;
    c.pass = false;
    c.witness = witness();
  }
  void vacuous(std::string name, std::string note) { clauses_.push_back({std::move(name), true, std::move(note), true}); }
  std::vector<ClauseResult> take() { return std::move(clauses_); }

 private:
  std::vector<ClauseResult> clauses_;
};

void check_structure(const ActionPackage& pkg) {
  const FiniteGroupoid& h = pkg.h;
  const GroupBundle& t = pkg.t;
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::MomentMapMismatch, what); };
  if (static_cast<int>(pkg.unit_of_t.size()) != t.size() || static_cast<int>(pkg.t_of_unit.size()) != h.size())
    bad("unit maps have the wrong size");
  if (static_cast<int>(h.units().size()) != t.size()) bad("units of H and elements of T differ in number");
  for (int e = 0; e < t.size(); ++e) {
    const Arrow u = pkg.unit_of_t[e];
    if (u < 0 || u >= h.size() || !h.is_unit(u) || pkg.t_of_unit[u] != e) bad("unit map is not a bijection onto H^(0)");
  }
  auto sized = [&](const auto& table, int rows, int cols, const char* name) {
    if (static_cast<int>(table.size()) != rows) bad(std::string(name) + " has the wrong number of rows");
    for (const auto& row : table)
      if (static_cast<int>(row.size()) != cols) bad(std::string(name) + " has a row of the wrong length");
  };
  sized(pkg.left, t.size(), h.size(), "left");
  sized(pkg.right, h.size(), t.size(), "right");
  sized(pkg.lambda, h.size(), t.size(), "lambda");
  sized(pkg.rho, h.size(), t.size(), "rho");
  for (Arrow eta = 0; eta < h.size(); ++eta)
    for (int x = 0; x < t.size(); ++x) {
      const bool at_r = t.base_of(x) == pkg.p_r(eta);
      const bool at_s = t.base_of(x) == pkg.p_s(eta);
      const std::string where = h.id(eta) + "," + t.name(x);
      auto check_arrow = [&](Arrow v, bool defined, const char* name) {
        if (defined != (v != kNone) || (v != kNone && (v < 0 || v >= h.size())))
          throw Error(ErrorCode::MomentMapMismatch, std::string(name) + " defined off its moment map", where);
      };
      auto check_elem = [&](int v, bool defined, int base, const char* name) {
        if (defined != (v >= 0) || (v >= 0 && (v >= t.size() || t.base_of(v) != base)))
          throw Error(ErrorCode::MomentMapMismatch, std::string(name) + " lands in the wrong fibre", where);
      };
      check_arrow(pkg.left[x][eta], at_r, "left action");
      check_arrow(pkg.right[eta][x], at_s, "right action");
      check_elem(pkg.lambda[eta][x], at_s, pkg.p_r(eta), "lambda");
      check_elem(pkg.rho[eta][x], at_r, pkg.p_s(eta), "rho");
    }
}

}  // namespace

Assumption51Report verify_assumption_51(const ActionPackage& pkg) {
  check_structure(pkg);
  const FiniteGroupoid& h = pkg.h;
  const GroupBundle& t = pkg.t;
  const int nh = h.size();
  auto L = [&](int x, Arrow eta) { return pkg.left[x][eta]; };
  auto R = [&](Arrow eta, int x) { return pkg.right[eta][x]; };
  auto at_r = [&](Arrow eta) -> const std::vector<int>& { return t.fibre(pkg.p_r(eta)); };
  auto at_s = [&](Arrow eta) -> const std::vector<int>& { return t.fibre(pkg.p_s(eta)); };
  auto w2 = [&](Arrow eta, int x) { return [&h, &t, eta, x] { return h.id(eta) + ", t=" + t.name(x); }; };
  auto unit_of = [&](Arrow u) { return pkg.t_of_unit[u]; };

  ClauseLog log;

  log.begin("left_action");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_r(eta)) {
      log.require(pkg.p_r(L(x, eta)) == pkg.p_r(eta), w2(eta, x));
      if (x == t.identity(pkg.p_r(eta))) log.require(L(x, eta) == eta, w2(eta, x));
      for (int y : at_r(eta)) log.require(L(y, L(x, eta)) == L(t.mul(y, x), eta), w2(eta, x));
    }

  log.begin("right_action");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_s(eta)) {
      log.require(pkg.p_s(R(eta, x)) == pkg.p_s(eta), w2(eta, x));
      if (x == t.identity(pkg.p_s(eta))) log.require(R(eta, x) == eta, w2(eta, x));
      for (int y : at_s(eta)) log.require(R(R(eta, x), y) == R(eta, t.mul(x, y)), w2(eta, x));
    }

  log.begin("actions_commute");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_r(eta))
      for (int y : at_s(eta)) {
        const Arrow a = L(x, eta);
        const Arrow b = R(eta, y);
        const bool ok = pkg.p_s(a) == pkg.p_s(eta) && pkg.p_r(b) == pkg.p_r(eta) && R(a, y) == L(x, b);
        log.require(ok, w2(eta, x));
      }

  log.begin("free_left");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_r(eta)) log.require(L(x, eta) != eta || x == t.identity(t.base_of(x)), w2(eta, x));

  log.begin("free_right");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_s(eta)) log.require(R(eta, x) != eta || x == t.identity(t.base_of(x)), w2(eta, x));

  log.vacuous("proper", "finite discrete spaces");

  log.begin("1a");
  for (Arrow u : h.units())
    for (int x : at_r(u)) log.require(L(x, u) == R(u, x), w2(u, x));

  log.begin("1b");
  for (Arrow eta = 0; eta < nh; ++eta) {
    for (int x : at_r(eta)) log.require(h.target(L(x, eta)) == L(x, h.target(eta)), w2(eta, x));
    for (int x : at_s(eta)) log.require(h.source(R(eta, x)) == R(h.source(eta), x), w2(eta, x));
  }

  log.begin("2a");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_s(eta)) log.require(R(eta, x) == L(pkg.lambda[eta][x], eta), w2(eta, x));

  log.begin("2b");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_r(eta)) log.require(L(x, eta) == R(eta, pkg.rho[eta][x]), w2(eta, x));

  auto product = [&](Arrow a, Arrow b) { return h.composable(a, b) ? h.compose(a, b) : kNone; };
  auto w3 = [&](Arrow g, Arrow eta, int x) {
    return [&h, &t, g, eta, x] { return "(" + h.id(g) + "," + h.id(eta) + "), t=" + t.name(x); };
  };

  log.begin("2c");
  for (Arrow g = 0; g < nh; ++g)
    for (Arrow eta : h.arrows_to(h.source(g)))
      for (int x : at_s(eta))
        log.require(R(h.compose(g, eta), x) == product(R(g, pkg.lambda[eta][x]), R(eta, x)), w3(g, eta, x));

  log.begin("2d");
  for (Arrow g = 0; g < nh; ++g)
    for (Arrow eta : h.arrows_to(h.source(g)))
      for (int x : at_r(g))
        log.require(L(x, h.compose(g, eta)) == product(L(x, g), L(pkg.rho[g][x], eta)), w3(g, eta, x));

  log.begin("2e");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_s(eta)) log.require(h.inverse(R(eta, x)) == L(x, h.inverse(eta)), w2(eta, x));

  log.begin("2f");
  for (Arrow eta = 0; eta < nh; ++eta)
    for (int x : at_r(eta)) log.require(h.inverse(L(x, eta)) == R(h.inverse(eta), x), w2(eta, x));

  log.begin("lambda_inverts_rho");
  for (Arrow eta = 0; eta < nh; ++eta) {
    for (int x : at_r(eta)) log.require(pkg.lambda[eta][pkg.rho[eta][x]] == x, w2(eta, x));
    for (int x : at_s(eta)) log.require(pkg.rho[eta][pkg.lambda[eta][x]] == x, w2(eta, x));
  }

  log.begin("lambda_rho_multiplicative");
  for (Arrow eta = 0; eta < nh; ++eta) {
    for (int x : at_s(eta))
      for (int y : at_s(eta))
        log.require(pkg.lambda[eta][t.mul(x, y)] == t.mul(pkg.lambda[eta][x], pkg.lambda[eta][y]), w2(eta, x));
    for (int x : at_r(eta))
      for (int y : at_r(eta))
        log.require(pkg.rho[eta][t.mul(x, y)] == t.mul(pkg.rho[eta][x], pkg.rho[eta][y]), w2(eta, x));
  }

  log.begin("units_trivial");
  for (Arrow u : h.units())
    for (int x : at_r(u)) log.require(pkg.rho[u][x] == x && pkg.lambda[u][x] == x, w2(u, x));

  log.begin("composition_law");
  for (Arrow g = 0; g < nh; ++g)
    for (Arrow eta : h.arrows_to(h.source(g))) {
      const Arrow ge = h.compose(g, eta);
      for (int x : at_s(eta))
        log.require(pkg.lambda[ge][x] == pkg.lambda[g][pkg.lambda[eta][x]], w3(g, eta, x));
      for (int x : at_r(g)) log.require(pkg.rho[ge][x] == pkg.rho[eta][pkg.rho[g][x]], w3(g, eta, x));
    }
  (void)unit_of;

  Assumption51Report rep;
  rep.clauses = log.take();
  return rep;
}

// ---------------------------------------------------------------------------

ActionPackage derive_weyl_actions(const WeylData& w, const WeylGroupoid& gw) {
  const FiniteGroupoid& g = w.g;
  for (Arrow a : w.s.members())
    for (Arrow b : w.s.members())
      if (g.composable(a, b) && !w.omega(a, b).is_zero())
        throw Error(ErrorCode::NontrivialCocycle, "w must vanish on S", g.id(a) + "," + g.id(b));

  ActionPackage pkg;
  pkg.h = gw.groupoid;
  pkg.t = w.dual.as_group_bundle();
  const FiniteGroupoid& h = pkg.h;
  const CharacterBundle& dual = w.dual;
  const int nt = dual.size();

  pkg.unit_of_t.assign(nt, kNone);
  pkg.t_of_unit.assign(h.size(), -1);
  for (int x = 0; x < nt; ++x) {
    const Arrow u = gw.arrow_at[w.class_unit_of(x)][x];
    pkg.unit_of_t[x] = u;
    pkg.t_of_unit[u] = x;
  }

  // Ad_g(x)(a) = x(g a g^-1), x at r(g), result at s(g).
  auto ad = [&](Arrow gamma, int x) {
    const int sb = w.base_of_unit[g.source(gamma)];
    Character out{sb, {}};
    for (int e : w.bundle.fibre(sb)) {
      const Arrow conj = g.compose(g.compose(gamma, w.bundle.arrow(e)), g.inverse(gamma));
      out.values.push_back(dual.pairing(x, w.bundle.element_of(conj)));
    }
    const int found = dual.find(out);
    if (found < 0) throw Error(ErrorCode::NotNormal, "conjugated character is not a character", g.id(gamma));
    return found;
  };

  pkg.left.assign(nt, std::vector<Arrow>(h.size(), kNone));
  pkg.right.assign(h.size(), std::vector<Arrow>(nt, kNone));
  pkg.lambda.assign(h.size(), std::vector<int>(nt, -1));
  pkg.rho.assign(h.size(), std::vector<int>(nt, -1));
  pkg.orbit_label.assign(h.size(), {});
  for (Arrow eta = 0; eta < h.size(); ++eta) {
    const int cls = gw.class_part[eta];
    const int x = gw.char_part[eta];
    const Arrow gamma = w.q.members[cls].front();
    pkg.orbit_label[eta] = w.q.groupoid.id(cls);
    for (int t : dual.fibre(w.base_of_unit[g.target(gamma)])) {
      pkg.left[t][eta] = gw.arrow_at[cls][dual.mul(ad(gamma, t), x)];
      pkg.rho[eta][t] = ad(gamma, t);
    }
    for (int t : dual.fibre(w.base_of_unit[g.source(gamma)])) {
      pkg.right[eta][t] = gw.arrow_at[cls][dual.mul(x, t)];
      pkg.lambda[eta][t] = ad(g.inverse(gamma), t);
    }
  }
  return pkg;
}

ActionPackage bundle_package(const GroupBundle& t) {
  ActionPackage pkg;
  pkg.t = t;
  GroupoidDescription d;
  d.name = "T";
  for (int e = 0; e < t.size(); ++e) d.units.push_back(t.name(e));
  pkg.h = validate_groupoid(d);
  const FiniteGroupoid& h = pkg.h;
  pkg.unit_of_t.resize(t.size());
  pkg.t_of_unit.assign(h.size(), -1);
  for (int e = 0; e < t.size(); ++e) {
    pkg.unit_of_t[e] = h.at(t.name(e));
    pkg.t_of_unit[pkg.unit_of_t[e]] = e;
  }
  pkg.left.assign(t.size(), std::vector<Arrow>(h.size(), kNone));
  pkg.right.assign(h.size(), std::vector<Arrow>(t.size(), kNone));
  pkg.lambda.assign(h.size(), std::vector<int>(t.size(), -1));
  pkg.rho.assign(h.size(), std::vector<int>(t.size(), -1));
  for (Arrow u = 0; u < h.size(); ++u) {
    const int e = pkg.t_of_unit[u];
    for (int x : t.fibre(t.base_of(e))) {
      pkg.left[x][u] = pkg.unit_of_t[t.mul(x, e)];
      pkg.right[u][x] = pkg.unit_of_t[t.mul(e, x)];
      pkg.lambda[u][x] = x;
      pkg.rho[u][x] = x;
    }
  }
  return pkg;
}

// ---------------------------------------------------------------------------

QuotientHT quotient_HT(const ActionPackage& pkg) {
  const Assumption51Report rep = verify_assumption_51(pkg);
  if (!rep.all_pass()) {
    std::string failed;
    for (const auto& c : rep.clauses)
      if (!c.pass) failed += (failed.empty() ? "" : " ") + c.name;
    throw Error(ErrorCode::AssumptionUnverified, "action package fails: " + failed, failed);
  }
  const FiniteGroupoid& h = pkg.h;
  const GroupBundle& t = pkg.t;

  std::vector<int> orbit(h.size(), -1);
  std::vector<std::vector<Arrow>> orbits;
  for (Arrow eta = 0; eta < h.size(); ++eta) {
    if (orbit[eta] >= 0) continue;
    std::vector<Arrow> members;
    for (int x : t.fibre(pkg.p_s(eta))) members.push_back(pkg.right[eta][x]);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (Arrow m : members) orbit[m] = static_cast<int>(orbits.size());
    orbits.push_back(std::move(members));
  }

  std::vector<std::string> names(orbits.size());
  std::set<std::string> used;
  std::vector<int> unit_base(orbits.size(), -1);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const Arrow first = orbits[k].front();
    if (h.is_unit(first)) {
      unit_base[k] = pkg.p_of_unit(first);
      names[k] = t.base_name(unit_base[k]);
    } else if (!pkg.orbit_label.empty() && !pkg.orbit_label[first].empty() &&
               std::all_of(orbits[k].begin(), orbits[k].end(),
                           [&](Arrow m) { return pkg.orbit_label[m] == pkg.orbit_label[first]; })) {
      names[k] = pkg.orbit_label[first];
    } else {
      names[k] = "[" + h.id(first) + "]";
    }
    if (!used.insert(names[k]).second) {
      names[k] = "[" + h.id(first) + "]";
      used.insert(names[k]);
    }
  }

  GroupoidDescription d;
  d.name = h.name() + "/T";
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if (unit_base[k] >= 0) d.units.push_back(names[k]);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const Arrow first = orbits[k].front();
    d.arrows.push_back({names[k], names[orbit[h.source(first)]], names[orbit[h.target(first)]]});
  }
  for (std::size_t k = 0; k < orbits.size(); ++k)
    for (std::size_t l = 0; l < orbits.size(); ++l) {
      int product = -1;
      for (Arrow a : orbits[k])
        for (Arrow b : orbits[l]) {
          if (!h.composable(a, b)) continue;
          const int pc = orbit[h.compose(a, b)];
          if (product >= 0 && pc != product)
            throw Error(ErrorCode::AssumptionUnverified, "class product depends on representatives",
                        h.id(a) + "," + h.id(b));
          product = pc;
        }
      if (product >= 0) d.compose[{names[k], names[l]}] = names[product];
    }

  QuotientHT q;
  q.groupoid = validate_groupoid(d);
  q.class_of.resize(h.size());
  q.members.assign(q.groupoid.size(), {});
  q.base_of_unit.assign(q.groupoid.size(), -1);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const Arrow cls = q.groupoid.at(names[k]);
    q.members[cls] = orbits[k];
    for (Arrow m : orbits[k]) q.class_of[m] = cls;
    q.base_of_unit[cls] = unit_base[k];
  }
  return q;
}

DiamondAction diamond_action(const ActionPackage& pkg, const QuotientHT& q) {
  DiamondAction out;
  out.dual = dual_bundle(pkg.t);
  const CharacterBundle& dual = out.dual;
  const FiniteGroupoid& h = pkg.h;
  out.table.assign(q.groupoid.size(), std::vector<int>(dual.size(), -1));
  for (Arrow cls = 0; cls < q.groupoid.size(); ++cls) {
    const auto& members = q.members[cls];
    for (int x : dual.fibre(pkg.p_s(members.front()))) {
      int image = -1;
      Arrow first = kNone;
      for (Arrow gamma : members) {
        Character c{pkg.p_r(gamma), {}};
        for (int tau : pkg.t.fibre(pkg.p_r(gamma))) c.values.push_back(dual.pairing(x, pkg.rho[gamma][tau]));
        const int found = dual.find(c);
        if (found < 0) throw Error(ErrorCode::DescentFailure, "x o rho is not a character", h.id(gamma));
        if (image < 0) {
          image = found;
          first = gamma;
        } else if (found != image) {
          throw Error(ErrorCode::DescentFailure, "members of a class act differently",
                      h.id(first) + "," + h.id(gamma) + "," + dual.id(x));
        }
      }
      out.table[cls][x] = image;
    }
    const auto& fibre = dual.fibre(pkg.p_s(members.front()));
    for (int x : fibre)
      for (int y : fibre)
        if (out.table[cls][dual.mul(x, y)] != dual.mul(out.table[cls][x], out.table[cls][y]))
          throw Error(ErrorCode::DescentFailure, "action is not multiplicative",
                      q.groupoid.id(cls) + "," + dual.id(x) + "," + dual.id(y));
  }
  return out;
}

ThetaDatum theta_from_section(const WeylData& w, const Section& section, const QuotientHT& q,
                              const DiamondAction& diamond) {
  const FiniteGroupoid& g = w.g;
  const FiniteGroupoid& gs = w.q.groupoid;
  const std::vector<int> eval = double_dual_iso(w.dual, diamond.dual);
  std::vector<Arrow> to_ht(gs.size(), kNone);
  for (Arrow cls = 0; cls < gs.size(); ++cls) {
    const auto found = q.groupoid.find(gs.id(cls));
    if (!found) throw Error(ErrorCode::NotInS, "class has no counterpart in H/T", gs.id(cls));
    to_ht[cls] = *found;
  }
  ThetaDatum theta(q.groupoid.size(), std::vector<int>(q.groupoid.size(), -1));
  for (Arrow c1 = 0; c1 < gs.size(); ++c1)
    for (Arrow c2 : gs.arrows_to(gs.source(c1))) {
      const Arrow b = g.compose(g.inverse(section[gs.compose(c1, c2)]), g.compose(section[c1], section[c2]));
      const int e = w.bundle.element_of(b);
      if (e < 0) throw Error(ErrorCode::NotInS, "s(gh)^-1 s(g) s(h) is not in S", gs.id(c1) + "," + gs.id(c2));
      theta[to_ht[c1]][to_ht[c2]] = eval[e];
    }
  return theta;
}

ThetaReport verify_theta(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta) {
  ThetaReport rep;
  const FiniteGroupoid& g = q.groupoid;
  const CharacterBundle& dual = diamond.dual;
  auto note = [&](std::string s) {
    if (rep.violations.size() < 16) rep.violations.push_back(std::move(s));
  };
  auto value = [&](Arrow a, Arrow b) -> int {
    if (static_cast<std::size_t>(a) >= theta.size() || static_cast<std::size_t>(b) >= theta[a].size()) return -1;
    const int v = theta[a][b];
    if (v < 0 || v >= dual.size() || dual.base_of(v) != q.base_of_source(b)) return -1;
    return v;
  };
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a)))
      if (value(a, b) < 0) {
        rep.cocycle_identity = false;
        note("theta undefined or in the wrong fibre at (" + g.id(a) + "," + g.id(b) + ")");
      }
  if (!rep.cocycle_identity) return rep;

  for (Arrow a = 0; a < g.size(); ++a)
    if (value(g.target(a), a) != dual.trivial(q.base_of_source(a))) {
      rep.unit_trivial = false;
      note("theta([r(g)],[g]) nontrivial at " + g.id(a));
    }
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a))) {
      const Arrow ab = g.compose(a, b);
      for (Arrow c : g.arrows_to(g.source(b))) {
        const int lhs = dual.mul(diamond.act(g.inverse(c), value(a, b)), value(ab, c));
        const int rhs = dual.mul(value(a, g.compose(b, c)), value(b, c));
        if (lhs != rhs) {
          rep.cocycle_identity = false;
          note("(" + g.id(a) + "," + g.id(b) + "," + g.id(c) + ")");
        }
      }
    }
  return rep;
}

Boxtimes build_boxtimes(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta) {
  const ThetaReport rep = verify_theta(q, diamond, theta);
  if (!rep.valid())
    throw Error(ErrorCode::ThetaInvalid, "theta fails its cocycle identity",
                rep.violations.empty() ? std::string() : rep.violations.front());
  const FiniteGroupoid& g = q.groupoid;
  const CharacterBundle& dual = diamond.dual;
  auto id = [&](Arrow cls, int x) { return "(" + g.id(cls) + "," + dual.id(x) + ")"; };
  auto unit_id = [&](Arrow u) { return id(u, dual.trivial(q.base_of_unit[u])); };

  GroupoidDescription d;
  d.name = g.name() + "[x]";
  std::map<std::string, std::string> inverse;
  for (Arrow u : g.units()) d.units.push_back(unit_id(u));
  for (Arrow a = 0; a < g.size(); ++a)
    for (int x : dual.fibre(q.base_of_source(a))) {
      d.arrows.push_back({id(a, x), unit_id(g.source(a)), unit_id(g.target(a))});
      const Arrow ai = g.inverse(a);
      inverse[id(a, x)] = id(ai, dual.mul(dual.inv(theta[a][ai]), diamond.act(a, dual.inv(x))));
      for (Arrow b : g.arrows_to(g.source(a)))
        for (int v : dual.fibre(q.base_of_source(b))) {
          const int chi = dual.mul(dual.mul(theta[a][b], diamond.act(g.inverse(b), x)), v);
          d.compose[{id(a, x), id(b, v)}] = id(g.compose(a, b), chi);
        }
    }
  d.inverse = std::move(inverse);

  Boxtimes out;
  out.groupoid = validate_groupoid(d);
  out.class_part.assign(out.groupoid.size(), -1);
  out.char_part.assign(out.groupoid.size(), -1);
  out.arrow_at.assign(g.size(), std::vector<Arrow>(dual.size(), kNone));
  for (Arrow a = 0; a < g.size(); ++a)
    for (int x : dual.fibre(q.base_of_source(a))) {
      const Arrow arrow = out.groupoid.at(id(a, x));
      out.class_part[arrow] = a;
      out.char_part[arrow] = x;
      out.arrow_at[a][x] = arrow;
    }
  return out;
}

ImmCentActionResult check_imm_centralizing_action(const FiniteGroupoid& q, const GroupBundle& k,
                                                  const std::vector<std::vector<int>>& action,
                                                  const std::vector<int>& base_of_unit) {
  for (Arrow g = 0; g < q.size(); ++g) {
    if (!q.is_isotropy(g)) continue;
    const auto& fibre = k.fibre(base_of_unit[q.source(g)]);
    int max_order = 1;
    int moved = -1;
    int needed = 1;
    for (int x : fibre) {
      const int ord = k.order(x);
      max_order = std::max(max_order, ord);
      const int y = action[g][x];
      if (y != x && moved < 0) moved = x;
      int n = 1;
      while (n < ord && k.power(y, n) != k.power(x, n)) ++n;
      needed = std::max(needed, n);
    }
    if (moved >= 0 && needed <= max_order) return {false, g, needed, moved};
  }
  return {};
}

Grading weyl_grading(const WeylData& w, const WeylGroupoid& gw, const Grading& c) {
  Grading out;
  out.orders = c.orders;
  out.values.resize(gw.groupoid.size());
  for (Arrow a = 0; a < gw.groupoid.size(); ++a) {
    const auto& members = w.q.members[gw.class_part[a]];
    for (Arrow m : members)
      if (c.values[m] != c.values[members.front()])
        throw Error(ErrorCode::NotHomomorphism, "grading is not constant on a class of G/S", w.g.id(m));
    out.values[a] = c.values[members.front()];
  }
  return out;
}

Reconstruction reconstruction_iso(const FiniteGroupoid& g, const TwoCocycle& omega, const Grading& c,
                                  const Subgroupoid& s, const std::optional<Section>& section) {
  if (!omega.is_zero()) throw Error(ErrorCode::NontrivialCocycle, "reconstruction needs the zero cocycle");
  Reconstruction r;
  r.weyl = weyl_action(g, s, omega);
  r.weyl_groupoid = build_weyl_groupoid(r.weyl);
  r.section = section ? *section : choose_section(r.weyl);
  r.package = derive_weyl_actions(r.weyl, r.weyl_groupoid);
  r.assumption = verify_assumption_51(r.package);
  r.quotient = quotient_HT(r.package);
  r.diamond = diamond_action(r.package, r.quotient);
  r.theta = theta_from_section(r.weyl, r.section, r.quotient, r.diamond);
  r.theta_report = verify_theta(r.quotient, r.diamond, r.theta);
  r.boxtimes = build_boxtimes(r.quotient, r.diamond, r.theta);

  const std::vector<int> eval = double_dual_iso(r.weyl.dual, r.diamond.dual);
  r.t_to_s.assign(r.diamond.dual.size(), -1);
  for (std::size_t e = 0; e < eval.size(); ++e) r.t_to_s[eval[e]] = static_cast<int>(e);

  const FiniteGroupoid& box = r.boxtimes.groupoid;
  const FiniteGroupoid& gs = r.weyl.q.groupoid;
  r.phi.assign(box.size(), kNone);
  for (Arrow a = 0; a < box.size(); ++a) {
    const Arrow cls = gs.at(r.quotient.groupoid.id(r.boxtimes.class_part[a]));
    r.phi[a] = g.compose(r.section[cls], r.weyl.bundle.arrow(r.t_to_s[r.boxtimes.char_part[a]]));
  }
  r.phi_isomorphism = is_isomorphism(box, g, r.phi);
  if (!r.phi_isomorphism) {
    std::string witness;
    for (Arrow a = 0; a < box.size() && witness.empty(); ++a)
      for (Arrow b : box.arrows_to(box.source(a)))
        if (!g.composable(r.phi[a], r.phi[b]) || r.phi[box.compose(a, b)] != g.compose(r.phi[a], r.phi[b])) {
          witness = box.id(a) + "," + box.id(b);
          break;
        }
    if (witness.empty()) witness = "Phi is not a bijection";
    throw Error(ErrorCode::IsoCheckFailed, "Phi is not an isomorphism", witness);
  }
  r.grading_compatible = true;
  for (Arrow a = 0; a < box.size(); ++a) {
    const Arrow cls = gs.at(r.quotient.groupoid.id(r.boxtimes.class_part[a]));
    if (c.values[r.phi[a]] != c.values[r.section[cls]]) {
      r.grading_compatible = false;
      throw Error(ErrorCode::IsoCheckFailed, "c o Phi differs from the induced grading", box.id(a));
    }
  }
  return r;
}

Thm59Report verify_thm59_hypotheses(const ActionPackage& pkg, const QuotientHT& q, const DiamondAction& diamond,
                                    const ThetaDatum& theta, const Grading& c_tilde) {
  Thm59Report rep;
  const FiniteGroupoid& h = pkg.h;
  validate_grading(h, c_tilde);
  auto add_witness = [&](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };

  rep.descends = true;
  for (Arrow cls = 0; cls < q.groupoid.size() && rep.descends; ++cls)
    for (Arrow m : q.members[cls])
      if (c_tilde.values[m] != c_tilde.values[q.members[cls].front()]) {
        rep.descends = false;
        add_witness("grading differs on the class of " + q.groupoid.id(cls) + " at " + h.id(m));
        break;
      }

  rep.effective = true;
  const Subgroupoid kernel = kernel_of_grading(h, c_tilde);
  for (Arrow a : kernel.members())
    if (h.is_isotropy(a) && !h.is_unit(a)) {
      rep.effective = false;
      add_witness("c^-1(0) has nontrivial isotropy " + h.id(a));
      break;
    }

  const GroupBundle that = diamond.dual.as_group_bundle();
  rep.imm = check_imm_centralizing_action(q.groupoid, that, diamond.table, q.base_of_unit);
  rep.imm_cent_action = rep.imm.pass;
  if (!rep.imm.pass)
    add_witness("g=" + q.groupoid.id(rep.imm.g) + ", k=" + std::to_string(rep.imm.k) + ", chi=" +
                diamond.dual.id(rep.imm.chi));

  const Boxtimes box = build_boxtimes(q, diamond, theta);
  const FiniteGroupoid& bg = box.groupoid;
  Grading c;
  c.orders = c_tilde.orders;
  std::vector<Arrow> s_members;
  for (Arrow a = 0; a < bg.size(); ++a) {
    const Arrow cls = box.class_part[a];
    c.values.push_back(c_tilde.values[q.members[cls].front()]);
    if (q.groupoid.is_unit(cls)) s_members.push_back(a);
  }
  if (rep.descends)
    rep.cross_validation = check_gamma_cartan_hypotheses(bg, TwoCocycle(bg), c, Subgroupoid(bg, s_members));
  return rep;
}

}  // namespace weylkit
