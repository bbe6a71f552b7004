#include "weylkit/corpus.hpp"

#include <array>
#include <cstdio>

#include "weylkit/error.hpp"
#include "weylkit/semidirect.hpp"

namespace weylkit {

namespace {

CorpusEntry from_semidirect(const SemidirectSpec& spec) {
  SemidirectGroup sd = build_semidirect(spec);
  return {spec.name, sd.g, sd.omega, sd.c, sd.h};
}

}  // namespace

CorpusEntry corpus_pauli() {
  CorpusEntry e = from_semidirect(gen_rotation(2, 1));
  e.name = "pauli";
  e.g = e.g.renamed("pauli");
  return e;
}

CorpusEntry corpus_z2z2() {
  CorpusEntry e = from_semidirect(gen_rotation(2, 0));
  e.name = "z2z2";
  e.g = e.g.renamed("z2z2");
  return e;
}

CorpusEntry corpus_s3(bool signed_grading) {
  using Perm = std::array<int, 3>;
  const std::vector<std::string> ids{"()", "(12)", "(13)", "(23)", "(123)", "(132)"};
  const std::vector<Perm> perms{Perm{0, 1, 2}, Perm{1, 0, 2}, Perm{2, 1, 0},
                                Perm{0, 2, 1}, Perm{1, 2, 0}, Perm{2, 0, 1}};
  // (pq)(i) = p(q(i))
  auto multiply = [&](int a, int b) {
    Perm r{};
    for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
    for (int k = 0; k < 6; ++k)
      if (perms[k] == r) return k;
    return -1;
  };
  CorpusEntry e;
  e.name = signed_grading ? "s3" : "s3_ungraded";
  e.g = make_group(e.name, ids, multiply);
  e.omega = TwoCocycle(e.g);
  if (signed_grading) {
    e.c.orders = {2};
    for (Arrow a = 0; a < e.g.size(); ++a) {
      const std::string& id = e.g.id(a);
      e.c.values.push_back({id.size() == 4 ? 1 : 0});
    }
  } else {
    e.c = Grading::trivial(e.g);
  }
  const std::vector<std::string> a3{"()", "(123)", "(132)"};
  e.s = Subgroupoid::from_ids(e.g, a3);
  return e;
}

CorpusEntry corpus_d4() {
  CorpusEntry e = from_semidirect(gen_dihedral(4));
  e.name = "d4";
  e.g = e.g.renamed("d4");
  return e;
}

CorpusEntry corpus_q8() {
  // Elements as (sign, unit) with unit in {1, i, j, k}.
  const std::array<std::string, 4> unit_names{"1", "i", "j", "k"};
  // unit products: table[a][b] = (sign, unit)
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::string> ids;
  for (int u = 0; u < 4; ++u) {
    ids.push_back(unit_names[u]);
    ids.push_back("-" + unit_names[u]);
  }
  auto multiply = [&](int a, int b) {
    const int ua = a / 2, ub = b / 2;
    int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign[ua][ub];
    return unit[ua][ub] * 2 + (s < 0 ? 1 : 0);
  };
  CorpusEntry e;
  e.name = "q8";
  e.g = make_group("q8", ids, multiply);
  e.omega = TwoCocycle(e.g);
  e.c.orders = {2};
  for (Arrow a = 0; a < e.g.size(); ++a) {
    const std::string& id = e.g.id(a);
    const char last = id.back();
    e.c.values.push_back({last == 'j' || last == 'k' ? 1 : 0});
  }
  const std::vector<std::string> sub{"1", "-1", "i", "-i"};
  e.s = Subgroupoid::from_ids(e.g, sub);
  return e;
}

CorpusEntry corpus_z2_r2() {
  const FiniteGroupoid z2 = make_group("z2", {"0", "1"}, [](int a, int b) { return (a + b) % 2; });
  CorpusEntry e;
  e.name = "z2xr2";
  e.g = direct_product(z2, pair_groupoid(2), "z2xr2");
  e.omega = TwoCocycle(e.g);
  e.c = Grading::trivial(e.g);
  e.s = iso_subgroupoid(e.g);
  return e;
}

CorpusEntry corpus_rotation(int n, int p) { return from_semidirect(gen_rotation(n, p)); }

CorpusEntry corpus_by_name(const std::string& name) {
  if (name == "pauli") return corpus_pauli();
  if (name == "z2z2") return corpus_z2z2();
  if (name == "s3") return corpus_s3(true);
  if (name == "s3_ungraded") return corpus_s3(false);
  if (name == "d4") return corpus_d4();
  if (name == "q8") return corpus_q8();
  if (name == "z2xr2") return corpus_z2_r2();
  int n = 0, p = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "rotation_%d_%d%c", &n, &p, &tail) == 2) return corpus_rotation(n, p);
  throw Error(ErrorCode::Schema, "unknown corpus member \"" + name + "\"");
}

std::vector<CorpusEntry> standard_corpus(int max_rotation) {
  std::vector<CorpusEntry> out{corpus_pauli(), corpus_z2z2(), corpus_s3(true), corpus_d4(), corpus_q8(),
                               corpus_z2_r2()};
  for (int n = 1; n <= max_rotation; ++n)
    for (int p = 0; p < n; ++p) out.push_back(corpus_rotation(n, p));
  return out;
}

}  // namespace weylkit
