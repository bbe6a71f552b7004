#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "weylkit/cocycle.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

namespace {

/// Independent cocycle check with plain integer fractions over a common
/// denominator; returns the number of violating triples.
int brute_violations(const FiniteGroupoid& g, const TwoCocycle& w, std::int64_t den) {
  auto val = [&](Arrow a, Arrow b) {
    const Phase p = w(a, b);
    return p.num() * (den / p.den());
  };
  int bad = 0;
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a)))
      for (Arrow c : g.arrows_to(g.source(b))) {
        const std::int64_t lhs = val(a, g.compose(b, c)) + val(b, c);
        const std::int64_t rhs = val(g.compose(a, b), c) + val(a, b);
        if ((lhs - rhs) % den != 0) ++bad;
      }
  return bad;
}

}  // namespace

TEST(Cocycle, RotationTableMatchesFormula) {
  for (int n = 1; n <= 6; ++n)
    for (int p = 0; p < n; ++p) {
      const CorpusEntry e = corpus_rotation(n, p);
      for (int h1 = 0; h1 < n; ++h1)
        for (int k1 = 0; k1 < n; ++k1)
          for (int h2 = 0; h2 < n; ++h2)
            for (int k2 = 0; k2 < n; ++k2) {
              const Arrow a = e.g.at("(" + std::to_string(h1) + "," + std::to_string(k1) + ")");
              const Arrow b = e.g.at("(" + std::to_string(h2) + "," + std::to_string(k2) + ")");
              const auto [num, den] = oracle::rotation_phase(n, p, k1, h2);
              EXPECT_EQ(e.omega(a, b), Phase::of(num, den));
            }
    }
}

TEST(Cocycle, RotationFamilyValid) {
  for (int n = 1; n <= 10; ++n)
    for (int p = 0; p < n; ++p) {
      const CorpusEntry e = corpus_rotation(n, p);
      const CocycleReport r = check_cocycle(e.g, e.omega);
      EXPECT_TRUE(r.valid) << n << "," << p;
      EXPECT_EQ(r.triples_checked, static_cast<std::size_t>(n) * n * n * n * n * n);
    }
}

TEST(Cocycle, MutationDetectedAndAgreesWithBruteForce) {
  std::mt19937 rng(11);
  for (int n : {2, 3, 4, 5}) {
    const CorpusEntry e = corpus_rotation(n, 1);
    for (int trial = 0; trial < 10; ++trial) {
      TwoCocycle w = e.omega;
      const Arrow a = std::uniform_int_distribution<Arrow>(1, e.g.size() - 1)(rng);
      const Arrow b = std::uniform_int_distribution<Arrow>(1, e.g.size() - 1)(rng);
      w.set(e.g, a, b, w(a, b) + Phase::of(1, 2 * n));
      const CocycleReport r = check_cocycle(e.g, w);
      EXPECT_FALSE(r.valid);
      EXPECT_EQ(static_cast<int>(r.violation_count), brute_violations(e.g, w, 2 * n));
      ASSERT_FALSE(r.violations.empty());
    }
  }
}

TEST(Cocycle, UnnormalizedReported) {
  const CorpusEntry e = corpus_z2z2();
  TwoCocycle w = e.omega;
  const Arrow u = e.g.units().front();
  w.set(e.g, u, u, Phase::of(1, 2));
  const CocycleReport r = check_cocycle(e.g, w);
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.unnormalized.size(), 1u);
  EXPECT_EQ(r.unnormalized.front(), u);
}

TEST(Cocycle, UndefinedPair) {
  const FiniteGroupoid g = pair_groupoid(2);
  TwoCocycle w(g);
  try {
    w.set(g, g.at("r01"), g.at("r01"), Phase::of(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedPair);
  }
}

TEST(Cocycle, SymmetryAndUnitIdentity) {
  const CorpusEntry pauli = corpus_pauli();
  std::string witness;
  EXPECT_TRUE(check_symmetric_on(pauli.g, pauli.omega, pauli.s, &witness));
  EXPECT_FALSE(check_symmetric_on(pauli.g, pauli.omega, Subgroupoid::whole(pauli.g), &witness));
  EXPECT_FALSE(witness.empty());
  for (const auto& e : standard_corpus(5)) EXPECT_TRUE(check_unit_identity(e.g, e.omega)) << e.name;
}

TEST(Cocycle, MaximalSymmetricAbelian) {
  // Pauli: the symmetric abelian subgroups inside ker c are exactly Z2 x {0}.
  const CorpusEntry pauli = corpus_pauli();
  const auto found = find_maximal_symmetric_abelian(pauli.g, pauli.omega, pauli.c);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found.front(), pauli.s);

  // S3 ungraded: maximal abelian subgroups are A3 and the three transposition subgroups.
  const CorpusEntry s3 = corpus_s3(false);
  const auto s3_found = find_maximal_symmetric_abelian(s3.g, s3.omega, s3.c);
  EXPECT_EQ(s3_found.size(), 4u);
  EXPECT_NE(std::find(s3_found.begin(), s3_found.end(), s3.s), s3_found.end());

  // Z2 x R2: the isotropy is the only candidate.
  const CorpusEntry zr = corpus_z2_r2();
  const auto zr_found = find_maximal_symmetric_abelian(zr.g, zr.omega, zr.c);
  ASSERT_EQ(zr_found.size(), 1u);
  EXPECT_EQ(zr_found.front(), iso_subgroupoid(zr.g));
}

TEST(Cocycle, SearchCap) {
  const CorpusEntry e = corpus_rotation(4, 0);
  MaximalSearchOptions opt;
  opt.fibre_cap = 2;
  try {
    find_maximal_symmetric_abelian(e.g, e.omega, Grading::trivial(e.g), opt);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::SearchCapExceeded);
  }
}
