#include "weylkit/cocycle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "weylkit/error.hpp"

namespace weylkit {

TwoCocycle::TwoCocycle(const FiniteGroupoid& g)
    : n_(g.size()), values_(static_cast<std::size_t>(g.size()) * g.size()) {}

TwoCocycle TwoCocycle::from_function(const FiniteGroupoid& g, const std::function<Phase(Arrow, Arrow)>& f) {
  TwoCocycle w(g);
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a))) w.values_[w.index(a, b)] = f(a, b);
  return w;
}

void TwoCocycle::set(const FiniteGroupoid& g, Arrow a, Arrow b, Phase value) {
  if (!g.composable(a, b))
    throw Error(ErrorCode::UndefinedPair, "cocycle value on a non-composable pair", g.id(a) + "," + g.id(b));
  values_[index(a, b)] = value;
}

bool TwoCocycle::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Phase& p) { return p.is_zero(); });
}

namespace {

constexpr std::int64_t kFastDenominatorLimit = std::int64_t{1} << 40;

template <typename Value, typename Equal>
void scan_triples(const FiniteGroupoid& g, const Value& w, const Equal& equal, CocycleReport& rep,
                  std::size_t keep) {
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a))) {
      const Arrow ab = g.compose(a, b);
      for (Arrow c : g.arrows_to(g.source(b))) {
        ++rep.triples_checked;
        if (!equal(w(a, g.compose(b, c)), w(b, c), w(ab, c), w(a, b))) {
          ++rep.violation_count;
          if (rep.violations.size() < keep) rep.violations.push_back({a, b, c});
        }
      }
    }
}

}  // namespace

CocycleReport check_cocycle(const FiniteGroupoid& g, const TwoCocycle& omega, std::size_t keep) {
  CocycleReport rep;
  const int n = g.size();
  std::int64_t common = 1;
  for (Arrow a = 0; a < n && common <= kFastDenominatorLimit; ++a)
    for (Arrow b : g.arrows_to(g.source(a))) {
      common = std::lcm(common, omega(a, b).den());
      if (common > kFastDenominatorLimit) break;
    }

  if (common <= kFastDenominatorLimit) {
    // Integer numerators over a common denominator.
    std::vector<std::int64_t> num(static_cast<std::size_t>(n) * n, 0);
    for (Arrow a = 0; a < n; ++a)
      for (Arrow b : g.arrows_to(g.source(a))) {
        const Phase p = omega(a, b);
        num[static_cast<std::size_t>(a) * n + b] = p.num() * (common / p.den());
      }
    auto w = [&](Arrow a, Arrow b) { return num[static_cast<std::size_t>(a) * n + b]; };
    auto equal = [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) {
      return (x + y - z - t) % common == 0;
    };
    scan_triples(g, w, equal, rep, keep);
  } else {
    auto equal = [](const Phase& x, const Phase& y, const Phase& z, const Phase& t) { return x + y == z + t; };
    scan_triples(g, omega, equal, rep, keep);
  }

  for (Arrow u : g.units())
    if (!omega(u, u).is_zero()) rep.unnormalized.push_back(u);
  rep.valid = rep.violation_count == 0 && rep.unnormalized.empty();
  return rep;
}

bool check_symmetric_on(const FiniteGroupoid& g, const TwoCocycle& omega, const Subgroupoid& s,
                        std::string* witness) {
  for (Arrow a : s.members())
    for (Arrow b : s.members())
      if (g.composable(a, b) && g.composable(b, a) && omega(a, b) != omega(b, a)) {
        if (witness) *witness = "w(" + g.id(a) + "," + g.id(b) + ") != w(" + g.id(b) + "," + g.id(a) + ")";
        return false;
      }
  return true;
}

bool check_unit_identity(const FiniteGroupoid& g, const TwoCocycle& omega, std::string* witness) {
  for (Arrow a = 0; a < g.size(); ++a) {
    const Arrow inv = g.inverse(a);
    if (omega(a, inv) != omega(inv, a)) {
      if (witness) *witness = "w(g,g^-1) != w(g^-1,g) at " + g.id(a);
      return false;
    }
    const Arrow s = g.source(a), r = g.target(a);
    if (omega(a, s) != omega(s, s) || omega(r, a) != omega(r, r)) {
      if (witness) *witness = "unit values disagree at " + g.id(a);
      return false;
    }
  }
  return true;
}

namespace {

using Members = std::vector<Arrow>;

/// Subgroup of a fibre generated by `base` and `extra`; empty if it leaves
/// `allowed`.
Members generate(const FiniteGroupoid& g, const Members& base, Arrow extra, const std::vector<bool>& allowed) {
  std::vector<bool> in(g.size(), false);
  Members list = base;
  for (Arrow a : list) in[a] = true;
  if (in[extra]) return base;
  in[extra] = true;
  list.push_back(extra);
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (Arrow z : {g.compose(list[i], list[j]), g.compose(list[j], list[i])}) {
        if (!allowed[z]) return {};
        if (!in[z]) {
          in[z] = true;
          list.push_back(z);
        }
      }
  std::sort(list.begin(), list.end());
  return list;
}

bool good(const FiniteGroupoid& g, const TwoCocycle& omega, const Members& h) {
  for (Arrow a : h)
    for (Arrow b : h)
      if (g.compose(a, b) != g.compose(b, a) || omega(a, b) != omega(b, a)) return false;
  return true;
}

std::vector<Members> maximal_in_fibre(const FiniteGroupoid& g, const TwoCocycle& omega, const Members& fibre,
                                      const std::vector<bool>& allowed, const MaximalSearchOptions& opt) {
  const Arrow unit = g.source(fibre.front());
  std::set<Members> visited{{unit}};
  std::vector<Members> queue{{unit}};
  std::vector<Members> maximal;
  while (!queue.empty()) {
    Members h = std::move(queue.back());
    queue.pop_back();
    bool extendable = false;
    for (Arrow x : fibre) {
      if (std::binary_search(h.begin(), h.end(), x)) continue;
      Members bigger = generate(g, h, x, allowed);
      if (bigger.empty() || !good(g, omega, bigger)) continue;
      extendable = true;
      if (visited.insert(bigger).second) {
        if (visited.size() > opt.subgroup_cap)
          throw Error(ErrorCode::SearchCapExceeded, "too many candidate subgroups at " + g.id(unit), g.id(unit));
        queue.push_back(std::move(bigger));
      }
    }
    if (!extendable) maximal.push_back(std::move(h));
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

}  // namespace

std::vector<Subgroupoid> find_maximal_symmetric_abelian(const FiniteGroupoid& g, const TwoCocycle& omega,
                                                        const Grading& c, const MaximalSearchOptions& opt) {
  const Subgroupoid kernel = kernel_of_grading(g, c);
  std::vector<bool> allowed(g.size(), false);
  for (Arrow a : kernel.members())
    if (g.is_isotropy(a)) allowed[a] = true;

  std::vector<std::vector<Members>> per_unit;
  for (Arrow u : g.units()) {
    Members fibre;
    for (Arrow a : g.arrows_from(u))
      if (allowed[a]) fibre.push_back(a);
    if (static_cast<int>(fibre.size()) > opt.fibre_cap)
      throw Error(ErrorCode::SearchCapExceeded, "isotropy fibre larger than the search cap", g.id(u));
    per_unit.push_back(maximal_in_fibre(g, omega, fibre, allowed, opt));
  }

  std::size_t total = 1;
  for (const auto& choices : per_unit) {
    total *= choices.size();
    if (total > opt.result_cap)
      throw Error(ErrorCode::SearchCapExceeded, "too many maximal subgroupoids to list");
  }

  std::vector<Subgroupoid> out;
  std::vector<std::size_t> pick(per_unit.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    Members all;
    for (std::size_t i = 0; i < per_unit.size(); ++i) {
      const auto& m = per_unit[i][pick[i]];
      all.insert(all.end(), m.begin(), m.end());
    }
    out.emplace_back(g, std::move(all));
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < per_unit[i].size()) break;
      pick[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Subgroupoid& a, const Subgroupoid& b) { return a.members() < b.members(); });
  return out;
}

}  // namespace weylkit
