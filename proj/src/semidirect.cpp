#include "weylkit/semidirect.hpp"

#include <set>

#include "weylkit/error.hpp"

namespace weylkit {

AbelianGroup::AbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  for (std::int64_t n : orders_) {
    if (n < 1) throw Error(ErrorCode::Schema, "abelian group factors must have finite order >= 1");
    size_ *= static_cast<int>(n);
  }
}

GroupElement AbelianGroup::element(int index) const {
  GroupElement e(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    e[i] = index % orders_[i];
    index /= static_cast<int>(orders_[i]);
  }
  return e;
}

int AbelianGroup::index(const GroupElement& e) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + ((e[i] % orders_[i]) + orders_[i]) % orders_[i];
  return static_cast<int>(idx);
}

int AbelianGroup::add(int a, int b) const {
  GroupElement x = element(a), y = element(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return index(x);
}

int AbelianGroup::neg(int a) const {
  GroupElement x = element(a);
  for (auto& v : x) v = -v;
  return index(x);
}

std::string AbelianGroup::name(int a) const {
  const GroupElement e = element(a);
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? ";" : "") + std::to_string(e[i]);
  return out.empty() ? "0" : out;
}

SemidirectGroup build_semidirect(const SemidirectSpec& spec) {
  SemidirectGroup sd;
  sd.h_group = AbelianGroup(spec.h_orders);
  sd.k_group = AbelianGroup(spec.k_orders);
  const AbelianGroup& hg = sd.h_group;
  const AbelianGroup& kg = sd.k_group;
  const int nh = hg.size(), nk = kg.size();

  std::vector<std::vector<int>> beta = spec.beta;
  if (beta.empty()) {
    beta.assign(nk, std::vector<int>(nh));
    for (auto& row : beta)
      for (int h = 0; h < nh; ++h) row[h] = h;
  }
  if (static_cast<int>(beta.size()) != nk) throw Error(ErrorCode::NotAutomorphism, "beta must list every k");
  for (int k = 0; k < nk; ++k) {
    const auto& b = beta[k];
    if (static_cast<int>(b.size()) != nh || std::set<int>(b.begin(), b.end()).size() != static_cast<std::size_t>(nh))
      throw Error(ErrorCode::NotAutomorphism, "beta_k is not a bijection", kg.name(k));
    for (int x = 0; x < nh; ++x)
      for (int y = 0; y < nh; ++y)
        if (b[hg.add(x, y)] != hg.add(b[x], b[y]))
          throw Error(ErrorCode::NotAutomorphism, "beta_k is not additive", kg.name(k));
    for (int k2 = 0; k2 < nk; ++k2)
      for (int x = 0; x < nh; ++x)
        if (beta[kg.add(k, k2)][x] != b[beta[k2][x]])
          throw Error(ErrorCode::NotAutomorphism, "beta is not a homomorphism from K", kg.name(k) + "," + kg.name(k2));
  }
  for (int x = 0; x < nh; ++x)
    if (beta[0][x] != x) throw Error(ErrorCode::NotAutomorphism, "beta_0 is not the identity");

  auto id = [&](int h, int k) { return "(" + hg.name(h) + "," + kg.name(k) + ")"; };
  std::vector<std::string> ids;
  for (int h = 0; h < nh; ++h)
    for (int k = 0; k < nk; ++k) ids.push_back(id(h, k));
  auto multiply = [&](int a, int b) {
    const int h1 = a / nk, k1 = a % nk, h2 = b / nk, k2 = b % nk;
    return hg.add(h1, beta[k1][h2]) * nk + kg.add(k1, k2);
  };
  sd.g = make_group(spec.name.empty() ? "semidirect" : spec.name, ids, multiply);

  sd.arrow_of.assign(nh, std::vector<Arrow>(nk));
  sd.h_of.assign(sd.g.size(), 0);
  sd.k_of.assign(sd.g.size(), 0);
  std::vector<Arrow> h_members, k_members;
  for (int h = 0; h < nh; ++h)
    for (int k = 0; k < nk; ++k) {
      const Arrow a = sd.g.at(id(h, k));
      sd.arrow_of[h][k] = a;
      sd.h_of[a] = h;
      sd.k_of[a] = k;
      if (k == 0) h_members.push_back(a);
      if (h == 0) k_members.push_back(a);
    }
  sd.h = Subgroupoid(sd.g, h_members);
  sd.k = Subgroupoid(sd.g, k_members);

  sd.c.orders = spec.k_orders;
  sd.c.values.assign(sd.g.size(), {});
  for (Arrow a = 0; a < sd.g.size(); ++a) sd.c.values[a] = kg.element(sd.k_of[a]);

  if (spec.omega) {
    sd.omega = TwoCocycle::from_function(sd.g, [&](Arrow a, Arrow b) {
      return spec.omega(hg.element(sd.h_of[a]), kg.element(sd.k_of[a]), hg.element(sd.h_of[b]), kg.element(sd.k_of[b]));
    });
  } else {
    sd.omega = TwoCocycle(sd.g);
  }
  const CocycleReport rep = check_cocycle(sd.g, sd.omega, 1);
  if (!rep.valid) {
    std::string w;
    if (!rep.violations.empty()) {
      const auto& v = rep.violations.front();
      w = sd.g.id(v[0]) + "," + sd.g.id(v[1]) + "," + sd.g.id(v[2]);
    }
    throw Error(ErrorCode::CocycleInvalid, "omega fails the cocycle identity or normalization", w);
  }
  return sd;
}

SemidirectAction semidirect_weyl_action(const SemidirectSpec& spec) {
  SemidirectAction out;
  out.group = build_semidirect(spec);
  const SemidirectGroup& sd = out.group;
  const FiniteGroupoid& g = sd.g;
  const TwoCocycle& w = sd.omega;
  const int nh = sd.h_group.size(), nk = sd.k_group.size();

  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b)
      if (!w(sd.at(a, 0), sd.at(b, 0)).is_zero())
        throw Error(ErrorCode::RestrictionNotTrivial, "omega does not vanish on H x H",
                    g.id(sd.at(a, 0)) + "," + g.id(sd.at(b, 0)));
  out.k_restriction_zero = true;
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      if (!w(sd.at(0, a), sd.at(0, b)).is_zero()) out.k_restriction_zero = false;

  out.h_bundle = GroupBundle::from_subgroupoid(g, sd.h);
  out.dual = dual_bundle(out.h_bundle);
  auto build = [&](bool with_head) {
    std::vector<std::vector<int>> table(nk, std::vector<int>(out.dual.size(), -1));
    for (int k = 0; k < nk; ++k) {
      const int mk = sd.k_group.neg(k);
      const Arrow minus_k = sd.at(0, mk), plus_k = sd.at(0, k);
      const Phase head = with_head ? -w(minus_k, plus_k) : Phase{};
      for (int x = 0; x < out.dual.size(); ++x) {
        Character image{0, {}};
        for (int e : out.h_bundle.fibre(0)) {
          const int h = sd.h_of[out.h_bundle.arrow(e)];
          const Arrow lhs = g.compose(minus_k, sd.at(h, 0));  // (b_{-k}(h), -k)
          const int bh = sd.h_of[lhs];
          image.values.push_back(head + w(minus_k, sd.at(h, 0)) + w(lhs, plus_k) +
                                 out.dual.pairing(x, out.h_bundle.element_of(sd.at(bh, 0))));
        }
        table[k][x] = out.dual.find(image);
        if (table[k][x] < 0)
          throw Error(ErrorCode::RestrictionNotTrivial, "closed form does not produce a character",
                      sd.k_group.name(k) + "," + out.dual.id(x));
      }
    }
    return table;
  };
  out.table = build(true);
  if (out.k_restriction_zero) out.reduced_table = build(false);
  return out;
}

UntwistingReport verify_untwisting(const SemidirectSpec& spec) {
  UntwistingReport rep;
  const SemidirectAction sa = semidirect_weyl_action(spec);
  const SemidirectGroup& sd = sa.group;
  const WeylData wd = weyl_action(sd.g, sd.h, sd.omega);
  const int nk = sd.k_group.size();

  rep.action_matches = true;
  for (int k = 0; k < nk && rep.action_matches; ++k) {
    const int cls = wd.q.class_of[sd.at(0, k)];
    for (int x = 0; x < wd.dual.size(); ++x)
      if (wd.action[cls][x] != sa.table[k][x]) {
        rep.action_matches = false;
        rep.witness = "action differs at k=" + sd.k_group.name(k) + ", " + wd.dual.id(x);
        break;
      }
  }
  if (sa.k_restriction_zero && sa.reduced_table != sa.table) {
    rep.reduced_matches = false;
    if (rep.witness.empty()) rep.witness = "reduced closed form differs";
  }

  const WeylGroupoid gw = build_weyl_groupoid(wd);
  rep.weyl_size = gw.groupoid.size();
  Section section(wd.q.groupoid.size(), kNone);
  for (int k = 0; k < nk; ++k) section[wd.q.class_of[sd.at(0, k)]] = sd.at(0, k);
  const TwoCocycle c = weyl_twist_cocycle(wd, gw, section);
  rep.twist_zero = c.is_zero();
  rep.twist_matches = true;
  const FiniteGroupoid& h = gw.groupoid;
  for (Arrow a = 0; a < h.size() && rep.twist_matches; ++a)
    for (Arrow b : h.arrows_to(h.source(a))) {
      const Phase expected = sd.omega(section[gw.class_part[a]], section[gw.class_part[b]]);
      if (c(a, b) != expected) {
        rep.twist_matches = false;
        if (rep.witness.empty()) rep.witness = "twist differs at " + h.id(a) + "," + h.id(b);
        break;
      }
    }

  // Orbits of K on the dual, and freeness.
  std::vector<int> orbit(wd.dual.size(), -1);
  rep.free_action = true;
  for (int x = 0; x < wd.dual.size(); ++x) {
    if (orbit[x] < 0) {
      for (int k = 0; k < nk; ++k) orbit[sa.table[k][x]] = rep.orbit_count;
      ++rep.orbit_count;
    }
    for (int k = 1; k < nk; ++k)
      if (sa.table[k][x] == x) rep.free_action = false;
  }
  return rep;
}

SemidirectSpec gen_rotation(int n, int p) {
  if (n < 1 || p < 0 || p >= n) throw Error(ErrorCode::Schema, "rotation needs n >= 1 and 0 <= p < n");
  SemidirectSpec spec;
  spec.name = "rotation_" + std::to_string(n) + "_" + std::to_string(p);
  spec.h_orders = {n};
  spec.k_orders = {n};
  spec.omega = [n, p](const GroupElement&, const GroupElement& k1, const GroupElement& h2, const GroupElement&) {
    return Phase::of(static_cast<std::int64_t>(p) * k1[0] * h2[0], n);
  };
  return spec;
}

SemidirectSpec gen_dihedral(int n) {
  SemidirectSpec spec;
  spec.name = "dihedral_" + std::to_string(n);
  spec.h_orders = {n};
  spec.k_orders = {2};
  spec.beta.assign(2, std::vector<int>(n));
  for (int h = 0; h < n; ++h) {
    spec.beta[0][h] = h;
    spec.beta[1][h] = (n - h) % n;
  }
  return spec;
}

}  // namespace weylkit
