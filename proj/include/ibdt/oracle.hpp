#pragma once

// Ground-truth satisfiability: exhaustive enumeration and a plain DPLL.

#include <cstdint>
#include <optional>
#include <vector>

#include "ibdt/formula.hpp"

namespace ibdt {

enum class SatStatus { Sat, Unsat };
const char* to_string(SatStatus status);

/// model[v] is the value of variable v; index 0 is unused.
using Assignment = std::vector<bool>;

struct OracleStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
};

struct OracleVerdict {
  SatStatus status = SatStatus::Unsat;
  std::optional<Assignment> model;
  OracleStats stats;

  [[nodiscard]] bool sat() const { return status == SatStatus::Sat; }
};

bool satisfies(const CnfFormula& formula, const Assignment& model);

constexpr Variable kDefaultBruteForceCap = 26;

/// Enumerates assignments in lexicographic order (x1 most significant, false
/// before true) and returns the first model. Throws std::length_error when the
/// formula has more than `var_cap` variables.
OracleVerdict brute_force_sat(const CnfFormula& formula, Variable var_cap = kDefaultBruteForceCap);

/// Backtracking search with unit propagation and pure-literal elimination.
/// Branches on the lowest unassigned variable, true first.
OracleVerdict dpll_sat(const CnfFormula& formula);

enum class OracleKind { BruteForce, Dpll };

struct OracleConfig {
  OracleKind kind = OracleKind::Dpll;
  Variable brute_force_cap = kDefaultBruteForceCap;
};

OracleVerdict decide(const CnfFormula& formula, const OracleConfig& config = {});

/// Satisfiable, and unsatisfiable once ~lit is added as a unit.
bool is_dominant(const CnfFormula& formula, Literal lit, const OracleConfig& config = {});

/// formula together with the negation of every literal of `clause` is unsatisfiable.
bool entails(const CnfFormula& formula, const Clause& clause, const OracleConfig& config = {});

}  // namespace ibdt
