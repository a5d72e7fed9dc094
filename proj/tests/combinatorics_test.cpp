#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "ibdt/combinatorics.hpp"
#include "support.hpp"

namespace ibdt {
namespace {

// Pascal recurrence: arrivals at leaf row r of depth k.
std::vector<BigInt> pascal_row(std::uint32_t k) {
  std::vector<BigInt> row{1};
  for (std::uint32_t level = 1; level <= k; ++level) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t r = 0; r < row.size(); ++r) {
      next[r] += row[r];
      next[r + 1] += row[r];
    }
    row = std::move(next);
  }
  return row;
}

TEST(DepthFormulas, Examples) {
  EXPECT_EQ(binary_depth_for(7), 2u);
  EXPECT_EQ(binary_depth_for(15), 3u);
  EXPECT_EQ(binary_depth_for(1), 0u);
  EXPECT_EQ(binary_depth_for(14), 2u);
  EXPECT_EQ(binary_leaf_paths(15), 8);
  EXPECT_EQ(binomial_var_count(3), 10u);
  EXPECT_EQ(binomial_var_count(4), 15u);
  EXPECT_EQ(binomial_depth_for(10), 3u);
  EXPECT_EQ(binomial_depth_for(14), 3u);
  EXPECT_EQ(binomial_depth_for(15), 4u);
  EXPECT_EQ(binomial_depth_for(1), 0u);
  EXPECT_THROW(binary_depth_for(0), std::invalid_argument);
  EXPECT_THROW(binomial_depth_for(0), std::invalid_argument);
  EXPECT_THROW(binomial_var_count(std::uint64_t{1} << 40), std::overflow_error);
}

TEST(DepthFormulas, InverseOfTheCounts) {
  for (std::uint64_t k = 1; k <= 2000; ++k) {
    const std::uint64_t n = binomial_var_count(k);
    ASSERT_EQ(binomial_depth_for(n), k);
    ASSERT_EQ(binomial_depth_for(n + k + 1), k);  // one short of the next count
    ASSERT_EQ(binomial_depth_for(n - 1), k - 1);
  }
  for (std::uint32_t k = 1; k <= 40; ++k) {
    const std::uint64_t full = (std::uint64_t{2} << k) - 1;
    ASSERT_EQ(binary_depth_for(full), k);
    ASSERT_EQ(binary_depth_for(full - 1), k - 1);
  }
}

TEST(DepthFormulas, Monotone) {
  std::uint64_t prev_bin = 0, prev_binom = 0;
  for (std::uint64_t n = 1; n <= 50000; ++n) {
    ASSERT_GE(binary_depth_for(n), prev_bin);
    ASSERT_GE(binomial_depth_for(n), prev_binom);
    ASSERT_GE(binomial_depth_for(n), binary_depth_for(n));
    prev_bin = binary_depth_for(n);
    prev_binom = binomial_depth_for(n);
  }
  EXPECT_EQ(binomial_depth_for(~std::uint64_t{0}), 6074000998u);
}

TEST(Isqrt, Exact) {
  using u128 = unsigned __int128;
  for (u128 x : {u128{0}, u128{1}, u128{99}, u128{100}, (u128{1} << 100) - 1}) {
    u128 s = isqrt(x);
    EXPECT_LE(s * s, x);
    EXPECT_GT((s + 1) * (s + 1), x);
  }
}

TEST(PathCounts, MatchPascal) {
  for (std::uint32_t k = 0; k <= 30; ++k) {
    PathReport p = leaf_path_counts(k);
    ASSERT_EQ(p.counts, pascal_row(k));
    ASSERT_EQ(p.reference, p.counts);
    ASSERT_EQ(p.total, BigInt{1} << k);
    for (std::size_t r = 0; r < p.counts.size(); ++r)
      ASSERT_EQ(p.counts[r], p.counts[p.counts.size() - 1 - r]);
  }
  PathReport twenty = leaf_path_counts(20);
  EXPECT_EQ(twenty.total, 1048576);
  EXPECT_EQ(twenty.counts[10], 184756);
  EXPECT_EQ(leaf_path_counts(200).total, BigInt{1} << 200);
}

TEST(PathCounts, LineFormat) {
  EXPECT_EQ(path_line(leaf_path_counts(3)), "1 3 3 1 total 8");
  std::ostringstream out;
  write_path_table(out, leaf_path_counts(2));
  EXPECT_NE(out.str().find("total"), std::string::npos);
}

TEST(Enumeration, WalkerAgreesWithClosedForm) {
  for (std::uint32_t k = 0; k <= 12; ++k) {
    TreeSpec spec;
    spec.k = k;
    PathReport walked = enumerate_paths(spec);
    ASSERT_EQ(walked.counts, pascal_row(k)) << k;
    ASSERT_EQ(walked.total, BigInt{1} << k);
  }
}

TEST(Enumeration, BinaryTreeLeavesAreHitOnce) {
  for (std::uint32_t k = 1; k <= 10; ++k) {
    TreeSpec spec;
    spec.variant = Variant::BinaryTree;
    spec.k = k;
    PathReport walked = enumerate_paths(spec);
    ASSERT_EQ(walked.counts.size(), std::size_t{1} << k);
    for (const BigInt& c : walked.counts) ASSERT_EQ(c, 1);
  }
}

TEST(Enumeration, DepthLimit) {
  TreeSpec spec;
  spec.k = 25;
  EXPECT_THROW(enumerate_paths(spec), std::length_error);
  spec.k = 6;
  EXPECT_THROW(enumerate_paths(spec, 5), std::length_error);
}

TEST(Combinations, Examples) {
  EXPECT_EQ(candidate_combinations(2, 3), 8);
  EXPECT_EQ(candidate_combinations(3, 4), 81);
  EXPECT_EQ(candidate_combinations(10, 30), BigInt{"1000000000000000000000000000000"});
  EXPECT_THROW(candidate_combinations(1, 3), std::invalid_argument);
  EXPECT_THROW(candidate_combinations(3, 0), std::invalid_argument);
}

std::set<Clause> clause_set(const CnfFormula& f) { return {f.clauses().begin(), f.clauses().end()}; }

TEST(Reflection, OpenTreeIsSymmetric) {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    CnfFormula f = build_binomial_tree(k, NoClosure{});
    CnfFormula once = reflect_rows(f);
    EXPECT_EQ(once.var_count(), f.var_count());
    EXPECT_EQ(clause_set(once), clause_set(f));
  }
}

TEST(Reflection, MovesTheClosureRow) {
  for (std::uint32_t k = 1; k <= 4; ++k) {
    for (std::uint32_t row = 1; row <= k + 1; ++row) {
      CnfFormula f = build_binomial_tree(k, ClauseClosure{row});
      CnfFormula mirrored = reflect_rows(f);
      CnfFormula expect = build_binomial_tree(k, ClauseClosure{k + 2 - row});
      ASSERT_EQ(clause_set(mirrored), clause_set(expect)) << k << " " << row;
      EXPECT_EQ(clause_set(reflect_rows(mirrored)), clause_set(f));
    }
  }
  EXPECT_THROW(reflect_rows(build_binomial_tree(3, AliasClosure{1})), std::invalid_argument);
}

TEST(SelectionResolvent, ReachesTheSelectedRow) {
  const std::uint32_t k = 4;
  CnfFormula f = build_binomial_tree(k, NoClosure{});
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<bool> sel;
    std::uint32_t rights = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      sel.push_back(((mask >> i) & 1) != 0);
      rights += sel.back();
    }
    Clause c = selection_resolvent(f, sel);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_TRUE(c.contains(f.lit(Root{})));
    EXPECT_TRUE(c.contains(f.lit(TreeSlot{0, k + 1, rights + 1})));
    EXPECT_TRUE(testing::naive_entails(f, c));
  }
  EXPECT_THROW(selection_resolvent(f, std::vector<bool>(k + 1, false)), std::out_of_range);
  EXPECT_THROW(selection_resolvent(f, {}), std::invalid_argument);
}

}  // namespace
}  // namespace ibdt
