#include <gtest/gtest.h>

#include <sstream>

#include "ibdt/claims.hpp"

namespace ibdt {
namespace {

TEST(Claims, FastChecksPassWithRealGenerators) {
  for (int id : {1, 2, 3, 4, 6, 8, 9}) {
    ClaimResult r = run_claim(id);
    EXPECT_TRUE(r.passed) << id << ": " << r.detail;
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(r.anchor.empty());
    EXPECT_LE(r.seconds, r.limit_seconds);
  }
  EXPECT_THROW(run_claim(0), std::out_of_range);
  EXPECT_THROW(run_claim(kClaimCount + 1), std::out_of_range);
}

TEST(Claims, CorruptedUnitChainFails) {
  ClaimHooks hooks;
  hooks.unit_chain = [](std::uint32_t k) {
    CnfFormula f = build_unit_chain(k);
    CnfFormula broken{f.var_count()};
    broken.atlas() = f.atlas();
    for (std::size_t i = 0; i + 1 < f.clause_count(); ++i) broken.add_clause(f.clauses()[i]);
    return broken;
  };
  EXPECT_FALSE(run_claim(1, hooks).passed);
}

TEST(Claims, SwappedClosingFails) {
  ClaimHooks hooks;
  hooks.compose = [](std::uint32_t k, Closing c) {
    return compose_two_trees(k, c == Closing::Matched ? Closing::Crossed : Closing::Matched);
  };
  ClaimResult r = run_claim(5, hooks);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.anchor, "two-tree");
}

TEST(Claims, WrongPathCountsFail) {
  ClaimHooks hooks;
  hooks.paths = [](const TreeSpec& s) {
    PathReport p = enumerate_paths(s);
    if (!p.counts.empty()) p.counts.back() += 1;
    return p;
  };
  EXPECT_FALSE(run_claim(3, hooks).passed);
}

TEST(Claims, ThrowingGeneratorIsReportedNotPropagated) {
  ClaimHooks hooks;
  hooks.pair_chain = [](std::uint32_t) -> CnfFormula { throw std::runtime_error("boom"); };
  ClaimResult r = run_claim(2, hooks);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.detail.find("boom"), std::string::npos);
}

TEST(Claims, UnentailedRedundancyFails) {
  ClaimHooks hooks;
  hooks.redundancy = [](const CnfFormula& f, NodePos, std::uint32_t, std::uint64_t) {
    return std::vector<Clause>{require_clause({f.lit(Root{}, true)})};
  };
  EXPECT_FALSE(run_claim(7, hooks).passed);
}

TEST(Claims, ReportFormat) {
  ClaimResult r;
  r.id = 4;
  r.anchor = "depth-formulas";
  r.title = "depth formulas";
  r.passed = true;
  r.detail = "ok";
  r.seconds = 0.25;
  r.limit_seconds = 5;
  std::ostringstream out;
  write_claims_report(out, {r});
  EXPECT_EQ(out.str().rfind("PASS  4 depth-formulas (", 0), 0u);
  EXPECT_NE(out.str().find("ok"), std::string::npos);
}

}  // namespace
}  // namespace ibdt
