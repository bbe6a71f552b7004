#include "weylkit/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

std::string pair_text(const std::string& a, const std::string& b) { return a + "," + b; }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::optional<Arrow> FiniteGroupoid::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Arrow FiniteGroupoid::at(std::string_view id) const {
  auto found = find(id);
  if (!found) throw Error(ErrorCode::UnknownArrowId, "no arrow \"" + std::string(id) + "\" in " + name_, std::string(id));
  return *found;
}

Arrow FiniteGroupoid::power(Arrow a, std::int64_t k) const {
  Arrow result = source(a);
  for (std::int64_t i = 0; i < k; ++i) result = compose(result, a);
  return result;
}

int FiniteGroupoid::order(Arrow a) const {
  int k = 1;
  Arrow p = a;
  while (!is_unit(p)) {
    p = compose(p, a);
    ++k;
    if (p == kNone || k > size()) return 0;
  }
  return k;
}

GroupoidDescription FiniteGroupoid::describe() const {
  GroupoidDescription d;
  d.name = name_;
  for (Arrow u : units_) d.units.push_back(ids_[u]);
  std::map<std::string, std::string> inv;
  for (Arrow a = 0; a < size(); ++a) {
    d.arrows.push_back({ids_[a], ids_[source_[a]], ids_[target_[a]]});
    inv[ids_[a]] = ids_[inverse_[a]];
    for (Arrow b : to_[source_[a]]) d.compose[{ids_[a], ids_[b]}] = ids_[compose(a, b)];
  }
  d.inverse = std::move(inv);
  return d;
}

FiniteGroupoid validate_groupoid(const GroupoidDescription& desc) {
  FiniteGroupoid g;
  g.name_ = desc.name;

  std::map<std::string, std::pair<std::string, std::string>> records;
  for (const auto& u : desc.units) {
    if (!records.emplace(u, std::make_pair(u, u)).second)
      throw Error(ErrorCode::DanglingUnit, "unit \"" + u + "\" declared twice", u);
  }
  const std::set<std::string> unit_set(desc.units.begin(), desc.units.end());
  for (const auto& rec : desc.arrows) {
    if (unit_set.count(rec.id)) {
      if (rec.source != rec.id || rec.target != rec.id)
        throw Error(ErrorCode::DanglingUnit, "unit \"" + rec.id + "\" listed with foreign source/target", rec.id);
      continue;
    }
    if (!unit_set.count(rec.source) || !unit_set.count(rec.target))
      throw Error(ErrorCode::DanglingUnit, "arrow \"" + rec.id + "\" refers to an undeclared unit", rec.id);
    if (!records.emplace(rec.id, std::make_pair(rec.source, rec.target)).second)
      throw Error(ErrorCode::Schema, "arrow id \"" + rec.id + "\" repeated", rec.id);
  }
  if (records.size() > static_cast<std::size_t>(FiniteGroupoid::kMaxArrows))
    throw Error(ErrorCode::TooLarge, "groupoid exceeds " + std::to_string(FiniteGroupoid::kMaxArrows) + " arrows");

  const int n = static_cast<int>(records.size());
  g.ids_.reserve(n);
  for (const auto& [id, st] : records) {
    g.index_.emplace(id, static_cast<Arrow>(g.ids_.size()));
    g.ids_.push_back(id);
  }
  g.source_.resize(n);
  g.target_.resize(n);
  for (const auto& [id, st] : records) {
    const Arrow a = g.index_.at(id);
    g.source_[a] = g.index_.at(st.first);
    g.target_[a] = g.index_.at(st.second);
  }
  g.from_.assign(n, {});
  g.to_.assign(n, {});
  for (Arrow a = 0; a < n; ++a) {
    if (g.source_[a] == a) g.units_.push_back(a);
    g.from_[g.source_[a]].push_back(a);
    g.to_[g.target_[a]].push_back(a);
  }

  g.compose_.assign(static_cast<std::size_t>(n) * n, kNone);
  auto slot = [&](Arrow a, Arrow b) -> Arrow& { return g.compose_[static_cast<std::size_t>(a) * n + b]; };
  for (const auto& [key, value] : desc.compose) {
    const Arrow a = g.at(key.first);
    const Arrow b = g.at(key.second);
    const Arrow c = g.at(value);
    if (g.source_[a] != g.target_[b])
      throw Error(ErrorCode::BadComposite, "compose entry for non-composable pair", pair_text(key.first, key.second));
    if (g.source_[c] != g.source_[b] || g.target_[c] != g.target_[a])
      throw Error(ErrorCode::BadComposite, "composite has wrong source/target", pair_text(key.first, key.second));
    slot(a, b) = c;
  }
  // Units act as identities; implied entries are filled, explicit ones checked.
  auto imply = [&](Arrow left, Arrow right, Arrow expected) {
    Arrow& entry = slot(left, right);
    if (entry == kNone)
      entry = expected;
    else if (entry != expected)
      throw Error(ErrorCode::BadComposite, "unit is not an identity", pair_text(g.ids_[left], g.ids_[right]));
  };
  for (Arrow a = 0; a < n; ++a) {
    imply(a, g.source_[a], a);
    imply(g.target_[a], a, a);
  }
  for (Arrow a = 0; a < n; ++a)
    for (Arrow b : g.to_[g.source_[a]])
      if (slot(a, b) == kNone)
        throw Error(ErrorCode::MissingComposite, "no composite for composable pair", pair_text(g.ids_[a], g.ids_[b]));

  for (Arrow a = 0; a < n; ++a)
    for (Arrow b : g.to_[g.source_[a]]) {
      const Arrow ab = slot(a, b);
      for (Arrow c : g.to_[g.source_[b]])
        if (slot(ab, c) != slot(a, slot(b, c)))
          throw Error(ErrorCode::AssociativityViolation, "(gh)k != g(hk)",
                      "(" + g.ids_[a] + "," + g.ids_[b] + "," + g.ids_[c] + ")");
    }

  g.inverse_.assign(n, kNone);
  if (desc.inverse) {
    for (const auto& [key, value] : *desc.inverse) g.inverse_[g.at(key)] = g.at(value);
  } else {
    for (Arrow a = 0; a < n; ++a)
      for (Arrow b : g.from_[g.target_[a]])
        if (g.target_[b] == g.source_[a] && slot(a, b) == g.target_[a]) {
          g.inverse_[a] = b;
          break;
        }
  }
  for (Arrow a = 0; a < n; ++a) {
    const Arrow b = g.inverse_[a];
    const bool ok = b != kNone && g.source_[b] == g.target_[a] && g.target_[b] == g.source_[a] &&
                    slot(b, a) == g.source_[a] && slot(a, b) == g.target_[a] && g.inverse_[b] == a;
    if (!ok) throw Error(ErrorCode::BadInverse, "arrow has no valid inverse", g.ids_[a]);
  }
  return g;
}

FiniteGroupoid make_group(std::string name, std::vector<std::string> ids,
                          const std::function<int(int, int)>& multiply) {
  const int n = static_cast<int>(ids.size());
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = multiply(e, x) == x && multiply(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorCode::BadInverse, "group table has no identity", name);
  GroupoidDescription d;
  d.name = std::move(name);
  d.units = {ids[identity]};
  for (int a = 0; a < n; ++a) {
    d.arrows.push_back({ids[a], ids[identity], ids[identity]});
    for (int b = 0; b < n; ++b) d.compose[{ids[a], ids[b]}] = ids[multiply(a, b)];
  }
  return validate_groupoid(d);
}

FiniteGroupoid pair_groupoid(int n, std::string name) {
  GroupoidDescription d;
  d.name = name.empty() ? "R" + std::to_string(n) : std::move(name);
  auto id = [](int i, int j) { return "r" + std::to_string(i) + std::to_string(j); };
  for (int i = 0; i < n; ++i) d.units.push_back(id(i, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.arrows.push_back({id(i, j), id(j, j), id(i, i)});
      for (int k = 0; k < n; ++k) d.compose[{id(i, j), id(j, k)}] = id(i, k);
    }
  return validate_groupoid(d);
}

FiniteGroupoid direct_product(const FiniteGroupoid& left, const FiniteGroupoid& right, std::string name) {
  GroupoidDescription d;
  d.name = name.empty() ? left.name() + "x" + right.name() : std::move(name);
  auto id = [&](Arrow a, Arrow b) { return "(" + left.id(a) + "," + right.id(b) + ")"; };
  for (Arrow u : left.units())
    for (Arrow v : right.units()) d.units.push_back(id(u, v));
  for (Arrow a = 0; a < left.size(); ++a)
    for (Arrow b = 0; b < right.size(); ++b) {
      d.arrows.push_back({id(a, b), id(left.source(a), right.source(b)), id(left.target(a), right.target(b))});
      for (Arrow c : left.arrows_to(left.source(a)))
        for (Arrow e : right.arrows_to(right.source(b)))
          d.compose[{id(a, b), id(c, e)}] = id(left.compose(a, c), right.compose(b, e));
    }
  return validate_groupoid(d);
}

// ---------------------------------------------------------------------------

Subgroupoid::Subgroupoid(const FiniteGroupoid& g, std::vector<Arrow> members)
    : mask_(g.size(), false) {
  for (Arrow a : members) {
    if (a < 0 || a >= g.size()) throw Error(ErrorCode::UnknownArrowId, "arrow index out of range");
    mask_[a] = true;
  }
  for (Arrow a = 0; a < g.size(); ++a)
    if (mask_[a]) members_.push_back(a);
}

Subgroupoid Subgroupoid::from_ids(const FiniteGroupoid& g, std::span<const std::string> ids) {
  std::vector<Arrow> members;
  for (const auto& id : ids) members.push_back(g.at(id));
  return Subgroupoid(g, std::move(members));
}

Subgroupoid Subgroupoid::units_of(const FiniteGroupoid& g) { return Subgroupoid(g, g.units()); }

Subgroupoid Subgroupoid::whole(const FiniteGroupoid& g) {
  std::vector<Arrow> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  return Subgroupoid(g, std::move(all));
}

std::vector<Arrow> Subgroupoid::fibre(const FiniteGroupoid& g, Arrow u) const {
  std::vector<Arrow> out;
  for (Arrow a : g.arrows_from(u))
    if (contains(a)) out.push_back(a);
  return out;
}

PropertyReport subgroupoid_properties(const FiniteGroupoid& g, const Subgroupoid& s) {
  PropertyReport rep;
  rep.is_subgroupoid = true;
  for (Arrow a : s.members()) {
    if (!s.contains(g.inverse(a)) || !s.contains(g.source(a)) || !s.contains(g.target(a))) {
      rep.is_subgroupoid = false;
      rep.witnesses["is_subgroupoid"] = "not closed under inverse/units at " + g.id(a);
      break;
    }
    for (Arrow b : s.members())
      if (g.composable(a, b) && !s.contains(g.compose(a, b))) {
        rep.is_subgroupoid = false;
        rep.witnesses["is_subgroupoid"] = "product " + g.id(a) + "*" + g.id(b) + " leaves S";
        break;
      }
    if (!rep.is_subgroupoid) break;
  }

  rep.is_wide = true;
  for (Arrow u : g.units())
    if (!s.contains(u)) {
      rep.is_wide = false;
      rep.witnesses["is_wide"] = "missing unit " + g.id(u);
      break;
    }

  rep.is_group_bundle = true;
  for (Arrow a : s.members())
    if (!g.is_isotropy(a)) {
      rep.is_group_bundle = false;
      rep.witnesses["is_group_bundle"] = "source != target at " + g.id(a);
      break;
    }

  rep.fibres_abelian = true;
  for (Arrow a : s.members()) {
    for (Arrow b : s.members())
      if (g.is_isotropy(a) && g.composable(a, b) && g.composable(b, a) &&
          g.compose(a, b) != g.compose(b, a)) {
        rep.fibres_abelian = false;
        rep.witnesses["fibres_abelian"] = g.id(a) + " and " + g.id(b) + " do not commute";
        break;
      }
    if (!rep.fibres_abelian) break;
  }

  rep.is_normal = true;
  for (Arrow gamma = 0; gamma < g.size() && rep.is_normal; ++gamma) {
    const Arrow inv = g.inverse(gamma);
    for (Arrow a : g.arrows_from(g.target(gamma))) {
      if (!s.contains(a) || !g.is_isotropy(a)) continue;
      const Arrow conj = g.compose(inv, g.compose(a, gamma));
      if (!s.contains(conj)) {
        rep.is_normal = false;
        rep.witnesses["is_normal"] = g.id(gamma) + "^-1 * " + g.id(a) + " * " + g.id(gamma) + " = " + g.id(conj) +
                                     " not in S";
        break;
      }
    }
  }
  return rep;
}

Subgroupoid iso_subgroupoid(const FiniteGroupoid& g) {
  std::vector<Arrow> members;
  for (Arrow a = 0; a < g.size(); ++a)
    if (g.is_isotropy(a)) members.push_back(a);
  return Subgroupoid(g, std::move(members));
}

bool check_effective(const FiniteGroupoid& g) {
  for (Arrow a = 0; a < g.size(); ++a)
    if (g.is_isotropy(a) && !g.is_unit(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------

GroupElement Grading::normalize(GroupElement e) const {
  if (e.size() != orders.size()) throw Error(ErrorCode::Schema, "grading value has wrong arity");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (orders[i] != 0) e[i] = floor_mod(e[i], orders[i]);
  return e;
}

GroupElement Grading::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement out(orders.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return normalize(std::move(out));
}

GroupElement Grading::negate(const GroupElement& a) const {
  GroupElement out(orders.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a[i];
  return normalize(std::move(out));
}

bool Grading::is_zero(const GroupElement& a) const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

Grading Grading::trivial(const FiniteGroupoid& g) {
  Grading c;
  c.values.assign(g.size(), GroupElement{});
  return c;
}

void validate_grading(const FiniteGroupoid& g, const Grading& c) {
  if (static_cast<int>(c.values.size()) != g.size())
    throw Error(ErrorCode::Schema, "grading does not cover every arrow");
  for (Arrow a = 0; a < g.size(); ++a) {
    if (c.normalize(c.values[a]) != c.values[a])
      throw Error(ErrorCode::Schema, "grading value out of range", g.id(a));
    if (g.is_unit(a) && !c.is_zero(c.values[a]))
      throw Error(ErrorCode::NotHomomorphism, "unit has nonzero grading", g.id(a));
    for (Arrow b : g.arrows_to(g.source(a)))
      if (c.values[g.compose(a, b)] != c.add(c.values[a], c.values[b]))
        throw Error(ErrorCode::NotHomomorphism, "c(gh) != c(g)+c(h)", pair_text(g.id(a), g.id(b)));
  }
}

Subgroupoid kernel_of_grading(const FiniteGroupoid& g, const Grading& c) {
  validate_grading(g, c);
  std::vector<Arrow> members;
  for (Arrow a = 0; a < g.size(); ++a)
    if (c.is_zero(c.values[a])) members.push_back(a);
  return Subgroupoid(g, std::move(members));
}

// ---------------------------------------------------------------------------

Quotient quotient_by_bundle(const FiniteGroupoid& g, const Subgroupoid& s) {
  const PropertyReport props = subgroupoid_properties(g, s);
  if (!props.is_subgroupoid || !props.is_wide || !props.is_group_bundle) {
    std::string why;
    for (const auto& [flag, w] : props.witnesses)
      if (flag != "is_normal" && flag != "fibres_abelian") why += flag + ": " + w + "; ";
    throw Error(ErrorCode::NotBundle, "S must be a wide group bundle subgroupoid", why);
  }
  if (!props.is_normal) throw Error(ErrorCode::NotNormal, "S is not normal in G", props.witnesses.at("is_normal"));

  std::vector<int> class_of(g.size(), -1);
  std::vector<std::vector<Arrow>> classes;
  for (Arrow a = 0; a < g.size(); ++a) {
    if (class_of[a] >= 0) continue;
    std::vector<Arrow> members;
    for (Arrow t : s.fibre(g, g.source(a))) members.push_back(g.compose(a, t));
    std::sort(members.begin(), members.end());
    for (Arrow m : members) class_of[m] = static_cast<int>(classes.size());
    classes.push_back(std::move(members));
  }

  // Unit classes are named by their unit, others by their least member.
  std::vector<std::string> names(classes.size());
  for (std::size_t k = 0; k < classes.size(); ++k) {
    names[k] = g.id(classes[k].front());
    for (Arrow m : classes[k])
      if (g.is_unit(m)) names[k] = g.id(m);
  }

  GroupoidDescription d;
  d.name = g.name() + "/S";
  for (Arrow u : g.units()) d.units.push_back(names[class_of[u]]);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const Arrow rep = classes[k].front();
    d.arrows.push_back({names[k], names[class_of[g.source(rep)]], names[class_of[g.target(rep)]]});
  }
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (std::size_t l = 0; l < classes.size(); ++l) {
      int product = -1;
      for (Arrow a : classes[k])
        for (Arrow b : classes[l]) {
          if (!g.composable(a, b)) continue;
          const int pc = class_of[g.compose(a, b)];
          if (product >= 0 && pc != product)
            throw Error(ErrorCode::NotNormal, "class product depends on representatives",
                        pair_text(g.id(a), g.id(b)));
          product = pc;
        }
      if (product >= 0) d.compose[{names[k], names[l]}] = names[product];
    }

  Quotient q;
  q.groupoid = validate_groupoid(d);
  q.class_of.resize(g.size());
  q.members.assign(q.groupoid.size(), {});
  for (Arrow a = 0; a < g.size(); ++a) {
    q.class_of[a] = q.groupoid.at(names[class_of[a]]);
    q.members[q.class_of[a]].push_back(a);
  }
  return q;
}

// ---------------------------------------------------------------------------

bool is_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, std::span<const Arrow> map) {
  if (a.size() != b.size() || static_cast<int>(map.size()) != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (Arrow x = 0; x < a.size(); ++x) {
    if (map[x] < 0 || map[x] >= b.size() || hit[map[x]]) return false;
    hit[map[x]] = true;
  }
  for (Arrow x = 0; x < a.size(); ++x)
    for (Arrow y = 0; y < a.size(); ++y) {
      const bool ca = a.composable(x, y);
      if (ca != b.composable(map[x], map[y])) return false;
      if (ca && map[a.compose(x, y)] != b.compose(map[x], map[y])) return false;
    }
  return true;
}

namespace {

struct ArrowInvariant {
  bool unit;
  bool isotropy;
  int order;
  int out_degree;
  int in_degree;
  int isotropy_at_source;
  auto operator<=>(const ArrowInvariant&) const = default;
};

std::vector<ArrowInvariant> invariants(const FiniteGroupoid& g) {
  std::vector<int> iso_size(g.size(), 0);
  for (Arrow a = 0; a < g.size(); ++a)
    if (g.is_isotropy(a)) ++iso_size[g.source(a)];
  std::vector<ArrowInvariant> inv(g.size());
  for (Arrow a = 0; a < g.size(); ++a)
    inv[a] = {g.is_unit(a), g.is_isotropy(a), g.is_isotropy(a) ? g.order(a) : 0,
              static_cast<int>(g.arrows_from(g.source(a)).size()),
              static_cast<int>(g.arrows_to(g.target(a)).size()), iso_size[g.source(a)]};
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteGroupoid& a, const FiniteGroupoid& b)
      : a_(a), b_(b), inv_a_(invariants(a)), inv_b_(invariants(b)) {}

  std::optional<std::vector<Arrow>> run() {
    if (a_.size() != b_.size() || a_.units().size() != b_.units().size()) return std::nullopt;
    auto ka = inv_a_, kb = inv_b_;
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return std::nullopt;
    std::vector<Arrow> fwd(a_.size(), kNone), bwd(b_.size(), kNone);
    if (search(fwd, bwd)) return fwd;
    return std::nullopt;
  }

 private:
  bool assign(std::vector<Arrow>& fwd, std::vector<Arrow>& bwd, Arrow x, Arrow y) {
    std::vector<std::pair<Arrow, Arrow>> queue{{x, y}};
    std::vector<Arrow> assigned;
    for (Arrow z = 0; z < a_.size(); ++z)
      if (fwd[z] != kNone) assigned.push_back(z);
    while (!queue.empty()) {
      auto [p, q] = queue.back();
      queue.pop_back();
      if (fwd[p] != kNone || bwd[q] != kNone) {
        if (fwd[p] != q || bwd[q] != p) return false;
        continue;
      }
      if (inv_a_[p] != inv_b_[q]) return false;
      fwd[p] = q;
      bwd[q] = p;
      queue.emplace_back(a_.inverse(p), b_.inverse(q));
      queue.emplace_back(a_.source(p), b_.source(q));
      queue.emplace_back(a_.target(p), b_.target(q));
      for (Arrow z : assigned) {
        const Arrow w = fwd[z];
        for (auto [l, r, bl, br] : {std::tuple{p, z, q, w}, std::tuple{z, p, w, q}}) {
          const bool ca = a_.composable(l, r);
          if (ca != b_.composable(bl, br)) return false;
          if (ca) queue.emplace_back(a_.compose(l, r), b_.compose(bl, br));
        }
      }
      assigned.push_back(p);
    }
    return true;
  }

  bool search(std::vector<Arrow>& fwd, std::vector<Arrow>& bwd) {
    Arrow next = kNone;
    for (Arrow z = 0; z < a_.size(); ++z)
      if (fwd[z] == kNone) {
        next = z;
        break;
      }
    if (next == kNone) return is_isomorphism(a_, b_, fwd);
    for (Arrow cand = 0; cand < b_.size(); ++cand) {
      if (bwd[cand] != kNone || inv_a_[next] != inv_b_[cand]) continue;
      auto f2 = fwd;
      auto b2 = bwd;
      if (assign(f2, b2, next, cand) && search(f2, b2)) {
        fwd = std::move(f2);
        bwd = std::move(b2);
        return true;
      }
    }
    return false;
  }

  const FiniteGroupoid& a_;
  const FiniteGroupoid& b_;
  std::vector<ArrowInvariant> inv_a_, inv_b_;
};

}  // namespace

std::optional<std::vector<Arrow>> find_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return IsoSearch(a, b).run();
}

}  // namespace weylkit
