#include <gtest/gtest.h>

#include "ibdt/forge.hpp"
#include "ibdt/oracle.hpp"
#include "support.hpp"

namespace ibdt {
namespace {

using testing::lits;

TEST(Oracle, SmallExamples) {
  CnfFormula f{2};
  f.add_clause(lits({1, 2}));
  f.add_clause(lits({-1}));
  for (OracleKind kind : {OracleKind::BruteForce, OracleKind::Dpll}) {
    auto v = decide(f, OracleConfig{kind, kDefaultBruteForceCap});
    ASSERT_TRUE(v.sat());
    EXPECT_TRUE(satisfies(f, *v.model));
    EXPECT_FALSE((*v.model)[1]);
    EXPECT_TRUE((*v.model)[2]);
  }
  f.add_clause(lits({-2}));
  EXPECT_FALSE(brute_force_sat(f).sat());
  EXPECT_FALSE(dpll_sat(f).sat());
  EXPECT_FALSE(dpll_sat(f).model);
}

TEST(Oracle, EmptyFormulaAndEmptyClause) {
  EXPECT_TRUE(dpll_sat(CnfFormula{3}).sat());
  EXPECT_TRUE(brute_force_sat(CnfFormula{0}).sat());
  CnfFormula f{1};
  f.add_clause(require_clause({}));
  EXPECT_FALSE(dpll_sat(f).sat());
  EXPECT_FALSE(brute_force_sat(f).sat());
}

TEST(Oracle, BruteForceIsLexicographicFirst) {
  CnfFormula f{3};
  f.add_clause(lits({2, 3}));
  auto v = brute_force_sat(f);
  ASSERT_TRUE(v.sat());
  EXPECT_EQ(*v.model, (Assignment{false, false, false, true}));
}

TEST(Oracle, BruteForceCap) {
  EXPECT_THROW(brute_force_sat(CnfFormula{27}), std::length_error);
  EXPECT_NO_THROW(brute_force_sat(CnfFormula{4}, 4));
  EXPECT_THROW(brute_force_sat(CnfFormula{5}, 4), std::length_error);
}

TEST(Oracle, AgreesWithNaiveEnumeration) {
  std::mt19937_64 rng{17};
  int sat = 0, unsat = 0;
  for (int i = 0; i < 600; ++i) {
    Variable n = 3 + rng() % 8;
    CnfFormula f = testing::random_formula(rng, n, 2 + rng() % (5 * n), 1, 3);
    const bool expect = testing::naive_sat(f);
    auto d = dpll_sat(f);
    auto b = brute_force_sat(f);
    ASSERT_EQ(d.sat(), expect);
    ASSERT_EQ(b.sat(), expect);
    if (expect) {
      ASSERT_TRUE(satisfies(f, *d.model));
      ASSERT_TRUE(satisfies(f, *b.model));
      ++sat;
    } else {
      ++unsat;
    }
  }
  EXPECT_GT(sat, 50);
  EXPECT_GT(unsat, 50);
}

TEST(Oracle, DominanceAndEntailment) {
  CnfFormula chain = build_unit_chain(5);
  EXPECT_TRUE(is_dominant(chain, Literal{1}));
  EXPECT_FALSE(is_dominant(chain, Literal{1, true}));
  CnfFormula open = build_binomial_tree(2, NoClosure{});
  EXPECT_FALSE(is_dominant(open, open.lit(Root{})));
  EXPECT_EQ(is_dominant(open, open.lit(Root{})), testing::naive_dominant(open, open.lit(Root{})));

  CnfFormula f{3};
  f.add_clause(lits({1, 2}));
  f.add_clause(lits({-2, 3}));
  EXPECT_TRUE(entails(f, lits({1, 3})));
  EXPECT_FALSE(entails(f, lits({3})));
  EXPECT_TRUE(entails(f, lits({1, 2})));
}

TEST(Oracle, DominanceMatchesNaiveOnRandomFormulas) {
  std::mt19937_64 rng{29};
  for (int i = 0; i < 300; ++i) {
    CnfFormula f = testing::random_formula(rng, 6, 4 + rng() % 14, 1, 3);
    Literal l{static_cast<Variable>(1 + rng() % 6), (rng() & 1) != 0};
    ASSERT_EQ(is_dominant(f, l), testing::naive_dominant(f, l));
    Clause c = testing::random_clause(rng, 6, 1 + rng() % 3);
    ASSERT_EQ(entails(f, c), testing::naive_entails(f, c));
  }
}

TEST(Oracle, BothPolaritiesForcedMeansUnsat) {
  std::mt19937_64 rng{31};
  for (int i = 0; i < 200; ++i) {
    CnfFormula f = testing::random_formula(rng, 5, 3 + rng() % 15, 1, 3);
    for (Variable v = 1; v <= 5; ++v) {
      if (entails(f, require_clause({Literal{v}})) && entails(f, require_clause({Literal{v, true}}))) {
        ASSERT_FALSE(dpll_sat(f).sat());
      }
    }
  }
}

TEST(Oracle, Statistics) {
  auto v = dpll_sat(compose_two_trees(2, Closing::Matched));
  EXPECT_FALSE(v.sat());
  EXPECT_GT(v.stats.nodes, 0u);
  auto again = dpll_sat(compose_two_trees(2, Closing::Matched));
  EXPECT_EQ(again.stats.nodes, v.stats.nodes);
  EXPECT_EQ(again.stats.propagations, v.stats.propagations);
}

}  // namespace
}  // namespace ibdt
