#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "weylkit/algebra.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

TwistedAlgebra algebra_of(const CorpusEntry& e) { return TwistedAlgebra(e.g, e.omega); }

TwistedAlgebra weyl_algebra_of(const CorpusEntry& e) {
  const WeylData w = weyl_action(e.g, e.s, e.omega);
  const WeylGroupoid gw = build_weyl_groupoid(w);
  return TwistedAlgebra(gw.groupoid, weyl_twist_cocycle(w, gw, choose_section(w)));
}

std::vector<Element> random_elements(const TwistedAlgebra& alg, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Element> out;
  for (int i = 0; i < count; ++i) {
    Element f(alg.dim());
    for (int a = 0; a < alg.dim(); ++a) f[a] = cplx(n(rng), n(rng));
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST(TwistedAlgebra, PauliAnticommutation) {
  const CorpusEntry e = corpus_pauli();
  const TwistedAlgebra alg = algebra_of(e);
  const Element u = alg.delta(e.g.at("(1,0)")), v = alg.delta(e.g.at("(0,1)"));
  EXPECT_LT((alg.multiply(u, v) + alg.multiply(v, u)).norm(), 1e-14);
  EXPECT_LT((alg.multiply(u, u) - alg.delta(e.g.at("(0,0)"))).norm(), 1e-14);
}

TEST(TwistedAlgebra, RotationCommutationPhase) {
  const CorpusEntry e = corpus_rotation(3, 1);
  const TwistedAlgebra alg = algebra_of(e);
  const Element u = alg.delta(e.g.at("(1,0)")), v = alg.delta(e.g.at("(0,1)"));
  const cplx q = std::polar(1.0, 2 * kPi / 3);
  EXPECT_LT((alg.multiply(v, u) - q * alg.multiply(u, v)).norm(), 1e-14);
}

TEST(TwistedAlgebra, StarIsAnInvolution) {
  for (const auto& e : standard_corpus(4)) {
    const TwistedAlgebra alg = algebra_of(e);
    for (const Element& f : random_elements(alg, 4, 7)) {
      EXPECT_LT((alg.star(alg.star(f)) - f).norm(), 1e-12) << e.name;
      for (const Element& h : random_elements(alg, 2, 9))
        EXPECT_LT((alg.star(alg.multiply(f, h)) - alg.multiply(alg.star(h), alg.star(f))).norm(), 1e-11) << e.name;
    }
  }
}

TEST(TwistedAlgebra, ReducedNorms) {
  const CorpusEntry e = corpus_pauli();
  const TwistedAlgebra alg = algebra_of(e);
  EXPECT_NEAR(reduced_norm(alg, alg.delta(e.g.at("(1,1)"))), 1.0, 1e-12);
  EXPECT_NEAR(reduced_norm(alg, alg.delta(e.g.at("(0,0)"))), 1.0, 1e-12);
  const CorpusEntry z = corpus_z2z2();
  const TwistedAlgebra az = algebra_of(z);
  EXPECT_NEAR(reduced_norm(az, az.delta(z.g.at("(0,0)")) + az.delta(z.g.at("(1,0)"))), 2.0, 1e-12);
}

TEST(TwistedAlgebra, RegularRepresentationIsAStarHomomorphism) {
  for (const auto& e : standard_corpus(5)) {
    const TwistedAlgebra alg = algebra_of(e);
    EXPECT_LE(homomorphism_defect(alg, random_elements(alg, 6, 11)), 1e-12) << e.name;
    EXPECT_LE(associativity_defect(alg, 200, 13), 1e-12) << e.name;
    EXPECT_EQ(grading_violation(alg, e.c), "") << e.name;
  }
}

TEST(TwistedAlgebra, GradingViolationDetected) {
  const CorpusEntry e = corpus_d4();
  Grading shifted = e.c;
  // moves one rotation into the odd degree
  shifted.values[e.g.at("(1,0)")] = {1};
  EXPECT_NE(grading_violation(algebra_of(e), shifted), "");
}

TEST(Wedderburn, TwistedBlocks) {
  EXPECT_EQ(wedderburn_blocks(algebra_of(corpus_pauli()), 1).blocks, (std::vector<int>{2}));
  EXPECT_EQ(wedderburn_blocks(algebra_of(corpus_rotation(3, 1)), 1).blocks, (std::vector<int>{3}));
  EXPECT_EQ(wedderburn_blocks(algebra_of(corpus_rotation(4, 1)), 1).blocks, (std::vector<int>{4}));
}

TEST(Wedderburn, RotationMatchesGcdOracle) {
  for (int n = 1; n <= 6; ++n)
    for (int p = 0; p < n; ++p) {
      const WedderburnResult r = wedderburn_blocks(algebra_of(corpus_rotation(n, p)), 3);
      EXPECT_EQ(r.blocks, oracle::rotation_blocks(n, p)) << n << "," << p;
      EXPECT_EQ(r.center_dim, static_cast<int>(r.blocks.size()));
    }
}

TEST(Wedderburn, GroupAlgebrasMatchConjugacyClasses) {
  for (const auto& e : {corpus_z2z2(), corpus_s3(), corpus_d4(), corpus_q8()}) {
    const WedderburnResult r = wedderburn_blocks(algebra_of(e), 5);
    EXPECT_EQ(r.center_dim, oracle::conjugacy_classes(e.g)) << e.name;
    int sum = 0;
    for (int b : r.blocks) sum += b * b;
    EXPECT_EQ(sum, e.g.size()) << e.name;
  }
  const WedderburnResult s3 = wedderburn_blocks(algebra_of(corpus_s3()), 5);
  EXPECT_EQ(s3.blocks, (std::vector<int>{1, 1, 2}));
}

TEST(Wedderburn, AbelianUntwistedIsAllOnes) {
  const CorpusEntry e = corpus_rotation(3, 0);
  const WedderburnResult r = wedderburn_blocks(algebra_of(e), 2);
  EXPECT_EQ(r.blocks, std::vector<int>(9, 1));
}

TEST(Wedderburn, PairGroupoidIsAMatrixAlgebra) {
  const CorpusEntry e = corpus_z2_r2();
  EXPECT_EQ(wedderburn_blocks(algebra_of(e), 2).blocks, (std::vector<int>{2, 2}));
}

TEST(Wedderburn, SeedIndependent) {
  const TwistedAlgebra alg = algebra_of(corpus_d4());
  const auto first = wedderburn_blocks(alg, 1).blocks;
  for (std::uint64_t seed = 2; seed < 8; ++seed) EXPECT_EQ(wedderburn_blocks(alg, seed).blocks, first);
}

TEST(Commutant, D4RotationsAreMaximalAbelian) {
  const CorpusEntry e = corpus_d4();
  const CommutantReport r = commutant_check(algebra_of(e), e.c, e.s);
  EXPECT_EQ(r.a0_dim, 4);
  EXPECT_EQ(r.commutant_dim, 4);
  EXPECT_TRUE(r.maximal_abelian());
}

TEST(Commutant, D4CentreIsNotMaximal) {
  const CorpusEntry e = corpus_d4();
  const std::vector<std::string> centre{"(0,0)", "(2,0)"};
  const CommutantReport r = commutant_check(algebra_of(e), e.c, Subgroupoid::from_ids(e.g, centre));
  EXPECT_TRUE(r.d_in_a0);
  EXPECT_TRUE(r.d_commutative);
  EXPECT_GT(r.commutant_dim, r.d_dim);
  EXPECT_FALSE(r.maximal_abelian());
  EXPECT_FALSE(r.witness.empty());
}

TEST(Commutant, CorpusCartanPairs) {
  for (const auto& e : {corpus_pauli(), corpus_z2z2(), corpus_s3(), corpus_q8(), corpus_z2_r2()})
    EXPECT_TRUE(commutant_check(algebra_of(e), e.c, e.s).maximal_abelian()) << e.name;
}

TEST(Expectation, CorpusPasses) {
  for (const auto& e : standard_corpus(4)) {
    const WeylData w = weyl_action(e.g, e.s, e.omega);
    const ExpectationReport r = expectation_checks(algebra_of(e), w, 100, 20240917);
    EXPECT_TRUE(r.pass()) << e.name << " min " << r.min_value << " form " << r.form_min_eigenvalue;
    EXPECT_EQ(r.trials, 100);
  }
}

TEST(Expectation, UnitIndicatorIsOneEverywhere) {
  const CorpusEntry e = corpus_q8();
  const WeylData w = weyl_action(e.g, e.s, e.omega);
  std::vector<cplx> f(e.g.size(), 0.0);
  f[e.g.at("1")] = 1.0;
  for (cplx v : conditional_expectation(w, f)) EXPECT_NEAR(std::abs(v - cplx(1.0)), 0.0, 1e-14);
}

TEST(Expectation, ConventionMismatchOnTwistedS) {
  const FiniteGroupoid z2 = make_group("z2", {"0", "1"}, [](int a, int b) { return (a + b) % 2; });
  TwoCocycle w(z2);
  w.set(z2, z2.at("1"), z2.at("1"), Phase::of(1, 2));
  const WeylData wd = weyl_action(z2, Subgroupoid::whole(z2), w);
  try {
    expectation_checks(TwistedAlgebra(z2, w), wd, 50, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConventionMismatch);
  }
}

TEST(Compare, WeylTwistMatchesOriginal) {
  for (const auto& e : standard_corpus(5)) {
    const AlgebraComparison c = compare_algebras(algebra_of(e), weyl_algebra_of(e), 17);
    EXPECT_TRUE(c.pass()) << e.name;
    EXPECT_EQ(c.left.blocks, c.right.blocks) << e.name;
  }
}

TEST(Compare, DifferentTwistFails) {
  const AlgebraComparison c = compare_algebras(algebra_of(corpus_rotation(4, 1)), weyl_algebra_of(corpus_rotation(4, 0)), 17);
  EXPECT_TRUE(c.dims_equal);
  EXPECT_FALSE(c.blocks_equal);
  EXPECT_FALSE(c.pass());
}
