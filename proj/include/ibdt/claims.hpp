#pragma once

// The acceptance checklist. Each check rebuilds its instances
// through ClaimHooks so a harness can substitute a faulty generator.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ibdt/combinatorics.hpp"
#include "ibdt/forge.hpp"
#include "ibdt/formula.hpp"

namespace ibdt {

struct ClaimHooks {
  std::function<CnfFormula(std::uint32_t)> unit_chain = build_unit_chain;
  std::function<CnfFormula(std::uint32_t)> pair_chain = build_pair_chain;
  std::function<CnfFormula(const TreeSpec&)> binomial_tree =
      static_cast<CnfFormula (*)(const TreeSpec&)>(build_binomial_tree);
  std::function<CnfFormula(std::uint32_t, Closing)> compose = compose_two_trees;
  std::function<std::vector<Clause>(const CnfFormula&, NodePos, std::uint32_t, std::uint64_t)>
      redundancy = gen_redundancy_clauses;
  std::function<PathReport(const TreeSpec&)> paths = [](const TreeSpec& s) {
    return enumerate_paths(s);
  };
};

struct ClaimResult {
  int id = 0;
  std::string title;
  std::string anchor;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr int kClaimCount = 11;

/// Runs check `id` (1..kClaimCount). A check that throws is reported failed.
ClaimResult run_claim(int id, const ClaimHooks& hooks = {});
std::vector<ClaimResult> run_claims(const ClaimHooks& hooks = {});

/// One line per check: "PASS|FAIL <id> <anchor> (<seconds>s / <limit>s): <detail>".
void write_claims_report(std::ostream& out, const std::vector<ClaimResult>& results);

}  // namespace ibdt
