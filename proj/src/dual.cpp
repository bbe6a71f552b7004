#include "weylkit/dual.hpp"

#include <algorithm>
#include <functional>

#include "weylkit/error.hpp"

namespace weylkit {

GroupBundle GroupBundle::from_subgroupoid(const FiniteGroupoid& g, const Subgroupoid& s) {
  GroupBundle bundle;
  std::vector<int> base_index(g.size(), -1);
  for (Arrow u : g.units()) {
    base_index[u] = static_cast<int>(bundle.base_.size());
    bundle.base_.push_back(g.id(u));
  }
  bundle.fibres_.assign(bundle.base_.size(), {});
  bundle.element_of_.assign(g.size(), -1);
  for (Arrow a : s.members()) {
    if (!g.is_isotropy(a)) throw Error(ErrorCode::NotBundle, "arrow with distinct source and target", g.id(a));
    const int e = static_cast<int>(bundle.names_.size());
    const int b = base_index[g.source(a)];
    bundle.names_.push_back(g.id(a));
    bundle.arrows_.push_back(a);
    bundle.element_of_[a] = e;
    bundle.base_of_.push_back(b);
    bundle.position_.push_back(static_cast<int>(bundle.fibres_[b].size()));
    bundle.fibres_[b].push_back(e);
  }
  for (int b = 0; b < bundle.base_size(); ++b) {
    const auto& f = bundle.fibres_[b];
    const int n = static_cast<int>(f.size());
    if (n == 0) throw Error(ErrorCode::NotBundle, "subgroupoid misses a unit", bundle.base_[b]);
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int e = bundle.element_of(g.compose(bundle.arrows_[f[i]], bundle.arrows_[f[j]]));
        if (e < 0) throw Error(ErrorCode::NotBundle, "fibre not closed under products", bundle.base_[b]);
        table[static_cast<std::size_t>(i) * n + j] = bundle.position_[e];
      }
    bundle.tables_.push_back(std::move(table));
  }
  bundle.finish();
  return bundle;
}

GroupBundle GroupBundle::from_tables(std::vector<std::string> base, std::vector<std::vector<std::string>> names,
                                     std::vector<std::vector<std::vector<int>>> tables) {
  GroupBundle bundle;
  bundle.base_ = std::move(base);
  bundle.fibres_.assign(bundle.base_.size(), {});
  for (int b = 0; b < bundle.base_size(); ++b) {
    const int n = static_cast<int>(names[b].size());
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      const int e = static_cast<int>(bundle.names_.size());
      bundle.names_.push_back(names[b][i]);
      bundle.base_of_.push_back(b);
      bundle.position_.push_back(i);
      bundle.fibres_[b].push_back(e);
      for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = tables[b][i][j];
    }
    bundle.tables_.push_back(std::move(flat));
  }
  bundle.finish();
  return bundle;
}

void GroupBundle::finish() {
  identity_pos_.assign(base_.size(), -1);
  inverse_.assign(names_.size(), -1);
  for (int b = 0; b < base_size(); ++b) {
    const int n = static_cast<int>(fibres_[b].size());
    const auto& t = tables_[b];
    for (int e = 0; e < n && identity_pos_[b] < 0; ++e) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = t[e * n + x] == x && t[x * n + e] == x;
      if (ok) identity_pos_[b] = e;
    }
    if (identity_pos_[b] < 0) throw Error(ErrorCode::NotBundle, "fibre has no identity", base_[b]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (t[i * n + j] == identity_pos_[b]) inverse_[fibres_[b][i]] = fibres_[b][j];
  }
}

int GroupBundle::mul(int a, int b) const {
  const int f = base_of_[a];
  const int n = static_cast<int>(fibres_[f].size());
  return fibres_[f][tables_[f][position_[a] * n + position_[b]]];
}

int GroupBundle::power(int a, std::int64_t k) const {
  int result = identity(base_of_[a]);
  int x = k >= 0 ? a : inverse_[a];
  for (std::int64_t i = 0, m = k >= 0 ? k : -k; i < m; ++i) result = mul(result, x);
  return result;
}

int GroupBundle::order(int a) const {
  const int e = identity(base_of_[a]);
  int k = 1;
  for (int p = a; p != e; p = mul(p, a)) ++k;
  return k;
}

bool GroupBundle::fibre_abelian(int b) const {
  for (int x : fibres_[b])
    for (int y : fibres_[b])
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

// ---------------------------------------------------------------------------

int CharacterBundle::find(const Character& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

GroupBundle CharacterBundle::as_group_bundle() const {
  std::vector<std::string> base;
  std::vector<std::vector<std::string>> names(group_.base_size());
  std::vector<std::vector<std::vector<int>>> tables(group_.base_size());
  for (int b = 0; b < group_.base_size(); ++b) {
    base.push_back(group_.base_name(b));
    const auto& f = fibres_[b];
    for (int x : f) {
      names[b].push_back(ids_[x]);
      std::vector<int> row;
      for (int y : f) row.push_back(char_pos_[mul(x, y)]);
      tables[b].push_back(std::move(row));
    }
  }
  return GroupBundle::from_tables(std::move(base), std::move(names), std::move(tables));
}

namespace {

/// All homomorphisms from one abelian fibre to Q/Z, as value tables on positions.
std::vector<std::vector<Phase>> fibre_characters(const GroupBundle& s, int b) {
  const auto& fibre = s.fibre(b);
  const int n = static_cast<int>(fibre.size());
  // Generating sequence: each generator lies outside the span of the previous ones.
  std::vector<int> gens;
  std::vector<bool> span(n, false);
  span[s.position(s.identity(b))] = true;
  for (int e : fibre) {
    if (span[s.position(e)]) continue;
    gens.push_back(e);
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < n; ++i) {
        if (!span[i]) continue;
        for (int g : gens) {
          const int p = s.position(s.mul(fibre[i], g));
          if (!span[p]) {
            span[p] = true;
            grew = true;
          }
        }
      }
    }
  }

  std::vector<std::vector<Phase>> out;
  std::vector<Phase> assigned(gens.size());
  // Extends the generator values to the whole fibre; false on inconsistency.
  auto extend = [&](std::vector<Phase>& values) {
    std::vector<bool> known(n, false);
    values.assign(n, Phase{});
    const int id = s.position(s.identity(b));
    known[id] = true;
    std::vector<int> queue{id};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int i = queue[q];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const int p = s.position(s.mul(fibre[i], gens[k]));
        const Phase v = values[i] + assigned[k];
        if (!known[p]) {
          known[p] = true;
          values[p] = v;
          queue.push_back(p);
        } else if (values[p] != v) {
          return false;
        }
      }
    }
    return true;
  };
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == gens.size()) {
      std::vector<Phase> values;
      if (extend(values)) out.push_back(std::move(values));
      return;
    }
    const int ord = s.order(gens[k]);
    for (int j = 0; j < ord; ++j) {
      assigned[k] = Phase::of(j, ord);
      assign(k + 1);
    }
  };
  assign(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CharacterBundle dual_bundle(const GroupBundle& s, int fibre_cap) {
  CharacterBundle dual;
  dual.group_ = s;
  dual.fibres_.assign(s.base_size(), {});
  for (int b = 0; b < s.base_size(); ++b) {
    if (static_cast<int>(s.fibre(b).size()) > fibre_cap)
      throw Error(ErrorCode::FibreTooLarge, "fibre order exceeds " + std::to_string(fibre_cap), s.base_name(b));
    if (!s.fibre_abelian(b)) throw Error(ErrorCode::NotAbelian, "fibre is not abelian", s.base_name(b));
    auto tables = fibre_characters(s, b);
    if (tables.size() != s.fibre(b).size())
      throw Error(ErrorCode::NotAbelian, "character count does not match fibre order", s.base_name(b));
    for (std::size_t j = 0; j < tables.size(); ++j) {
      const int x = dual.size();
      dual.chars_.push_back({b, std::move(tables[j])});
      dual.ids_.push_back("chi" + std::to_string(j) + "@" + s.base_name(b));
      dual.char_pos_.push_back(static_cast<int>(j));
      dual.fibres_[b].push_back(x);
      dual.index_.emplace(dual.chars_.back(), x);
    }
  }
  dual.mul_.assign(dual.size(), {});
  dual.inverse_.assign(dual.size(), -1);
  for (int x = 0; x < dual.size(); ++x) {
    const Character& cx = dual.chars_[x];
    Character neg{cx.base, {}};
    for (const Phase& v : cx.values) neg.values.push_back(-v);
    dual.inverse_[x] = dual.find(neg);
    for (int y : dual.fibres_[cx.base]) {
      Character prod{cx.base, cx.values};
      for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] += dual.chars_[y].values[i];
      dual.mul_[x].push_back(dual.find(prod));
    }
  }
  return dual;
}

std::vector<int> double_dual_iso(const CharacterBundle& dual, const CharacterBundle& double_dual) {
  const GroupBundle& s = dual.group();
  std::vector<int> map(s.size(), -1);
  std::vector<bool> hit(double_dual.size(), false);
  for (int a = 0; a < s.size(); ++a) {
    const int b = s.base_of(a);
    Character eval{b, {}};
    for (int x : dual.fibre(b)) eval.values.push_back(dual.pairing(x, a));
    const int image = double_dual.find(eval);
    if (image < 0 || hit[image]) throw Error(ErrorCode::NotAbelian, "evaluation map is not bijective", s.name(a));
    hit[image] = true;
    map[a] = image;
  }
  for (int a = 0; a < s.size(); ++a)
    for (int c : s.fibre(s.base_of(a)))
      if (map[s.mul(a, c)] != double_dual.mul(map[a], map[c]))
        throw Error(ErrorCode::NotAbelian, "evaluation map is not multiplicative", s.name(a) + "," + s.name(c));
  return map;
}

}  // namespace weylkit
