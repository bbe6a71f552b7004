#include <gtest/gtest.h>

#include "oracles.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/dual.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

namespace {

/// Brute-force characters of one fibre, as numerators over `e`, in the
/// fibre's position order.
std::set<std::vector<int>> oracle_fibre(const GroupBundle& s, int b, int e) {
  const auto& f = s.fibre(b);
  std::vector<std::vector<int>> mul(f.size(), std::vector<int>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) mul[i][j] = s.position(s.mul(f[i], f[j]));
  return oracle::brute_characters(mul, e);
}

std::set<std::vector<int>> library_fibre(const CharacterBundle& d, int b, int e) {
  std::set<std::vector<int>> out;
  for (int x : d.fibre(b)) {
    std::vector<int> v;
    for (const Phase& p : d.character(x).values) v.push_back(static_cast<int>(p.num() * (e / p.den())));
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Dual, MatchesBruteForceEnumeration) {
  for (const auto& entry : {corpus_z2z2(), corpus_d4(), corpus_q8(), corpus_z2_r2(), corpus_rotation(3, 0),
                            corpus_rotation(4, 1)}) {
    const GroupBundle s = GroupBundle::from_subgroupoid(entry.g, entry.s);
    const CharacterBundle d = dual_bundle(s);
    for (int b = 0; b < s.base_size(); ++b) {
      int e = 1;
      for (int a : s.fibre(b)) e = std::lcm(e, s.order(a));
      EXPECT_EQ(library_fibre(d, b, e), oracle_fibre(s, b, e)) << entry.name;
      EXPECT_EQ(d.fibre(b).size(), s.fibre(b).size());
    }
  }
}

TEST(Dual, WholeAbelianGroups) {
  // Z2 x Z2 and Z3 x Z3 as whole groups.
  for (const auto& [entry, e] : {std::pair{corpus_z2z2(), 2}, std::pair{corpus_rotation(3, 0), 3}}) {
    const GroupBundle s = GroupBundle::from_subgroupoid(entry.g, Subgroupoid::whole(entry.g));
    const CharacterBundle d = dual_bundle(s);
    EXPECT_EQ(d.size(), s.size());
    EXPECT_EQ(library_fibre(d, 0, e), oracle_fibre(s, 0, e));
  }
}

TEST(Dual, TrivialFirstAndIds) {
  const CorpusEntry q8 = corpus_q8();
  const CharacterBundle d = dual_bundle(GroupBundle::from_subgroupoid(q8.g, q8.s));
  const int t = d.trivial(0);
  for (const Phase& p : d.character(t).values) EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(d.id(t), "chi0@1");
}

TEST(Dual, GroupStructure) {
  const CorpusEntry d4 = corpus_d4();
  const GroupBundle s = GroupBundle::from_subgroupoid(d4.g, d4.s);
  const CharacterBundle d = dual_bundle(s);
  for (int x = 0; x < d.size(); ++x)
    for (int y : d.fibre(d.base_of(x)))
      for (int a : s.fibre(d.base_of(x))) {
        EXPECT_EQ(d.pairing(d.mul(x, y), a), d.pairing(x, a) + d.pairing(y, a));
        EXPECT_EQ(d.pairing(d.inv(x), a), -d.pairing(x, a));
      }
  const GroupBundle as_group = d.as_group_bundle();
  EXPECT_EQ(as_group.size(), d.size());
  EXPECT_EQ(as_group.name(1), d.id(1));
}

TEST(Dual, DoubleDualIsomorphism) {
  for (const auto& entry : {corpus_z2_r2(), corpus_d4(), corpus_rotation(6, 0)}) {
    const GroupBundle s = GroupBundle::from_subgroupoid(entry.g, entry.s);
    const CharacterBundle d = dual_bundle(s);
    const CharacterBundle dd = dual_bundle(d.as_group_bundle());
    const std::vector<int> ev = double_dual_iso(d, dd);
    ASSERT_EQ(static_cast<int>(ev.size()), s.size());
    std::set<int> image(ev.begin(), ev.end());
    EXPECT_EQ(static_cast<int>(image.size()), s.size());
    for (int a = 0; a < s.size(); ++a)
      for (int x : d.fibre(s.base_of(a))) EXPECT_EQ(dd.pairing(ev[a], x), d.pairing(x, a));
  }
}

TEST(Dual, Errors) {
  const CorpusEntry s3 = corpus_s3();
  try {
    dual_bundle(GroupBundle::from_subgroupoid(s3.g, Subgroupoid::whole(s3.g)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAbelian);
  }
  const CorpusEntry big = corpus_rotation(4, 0);
  try {
    dual_bundle(GroupBundle::from_subgroupoid(big.g, Subgroupoid::whole(big.g)), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FibreTooLarge);
  }
}
