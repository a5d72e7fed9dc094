#pragma once

// Resolution rule, given-clause saturation with a replayable trace, and the
// decision-chain view of a recorded derivation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ibdt/formula.hpp"

namespace ibdt {

using ClauseId = std::uint32_t;

/// Resolvent of c1 and c2 on `var`. Throws std::invalid_argument unless var
/// occurs with opposite polarities in the two parents.
ClauseOrTautology resolve(const Clause& c1, const Clause& c2, Variable var);

struct ResolutionStep {
  ClauseId left = 0;
  ClauseId right = 0;
  Variable var = 0;
  ClauseId result = 0;
  friend bool operator==(const ResolutionStep&, const ResolutionStep&) = default;
};

struct Budget {
  std::size_t max_clauses = 1'000'000;
  std::uint64_t max_steps = 10'000'000;
  /// Resolvents wider than this are not stored. Unset means the variable count.
  std::optional<std::size_t> max_width;

  /// Defaults, overridden by IBDT_MAX_CLAUSES / IBDT_MAX_STEPS / IBDT_MAX_WIDTH.
  static Budget from_environment();
};

enum class SaturationStatus {
  EmptyDerived,
  Saturated,
  BudgetExhausted,
  /// Every requested target clause is in the store; the run stopped early.
  TargetsDerived,
};

const char* to_string(SaturationStatus status);

struct SaturationCounters {
  std::uint64_t steps = 0;               // resolve() applications
  std::uint64_t added = 0;               // novel resolvents stored
  std::uint64_t tautologies = 0;         // resolvents discarded as tautologies
  std::uint64_t duplicates = 0;          // resolvents already in the store
  std::uint64_t width_discarded = 0;     // resolvents above the width cap
  friend bool operator==(const SaturationCounters&, const SaturationCounters&) = default;
};

struct SaturationResult {
  SaturationStatus status = SaturationStatus::Saturated;
  /// Original clauses first (ids 0..original_count-1), then derived clauses.
  std::vector<Clause> store;
  std::size_t original_count = 0;
  /// trace[i] produced store[original_count + i].
  std::vector<ResolutionStep> trace;
  SaturationCounters counters;

  [[nodiscard]] bool is_original(ClauseId id) const { return id < original_count; }
  [[nodiscard]] std::optional<ClauseId> find(const Clause& clause) const;
  /// Derivation step of a derived clause; nullptr for originals.
  [[nodiscard]] const ResolutionStep* derivation(ClauseId id) const;
  [[nodiscard]] std::size_t derived_count() const { return store.size() - original_count; }

  friend bool operator==(const SaturationResult&, const SaturationResult&) = default;
};

enum class Schedule {
  Fifo,
  /// Narrowest unprocessed clause first, ties by id.
  ShortestFirst,
};

struct SaturateOptions {
  Budget budget;
  Schedule schedule = Schedule::Fifo;
  /// Stop with TargetsDerived as soon as all of these are in the store.
  std::vector<Clause> targets;
};

/// Repeatedly resolves every complementary pair, discarding tautologies and
/// repeats, until the empty clause appears, nothing new can be derived, or a
/// budget runs out. Clauses are taken in FIFO order (or by width under
/// Schedule::ShortestFirst); each one is resolved against every clause taken
/// before it, on every clashing variable.
SaturationResult saturate(const CnfFormula& formula, const SaturateOptions& options = {});
inline SaturationResult saturate(const CnfFormula& formula, const Budget& budget) {
  return saturate(formula, SaturateOptions{budget, Schedule::Fifo, {}});
}

/// Re-executes `trace` from the formula's clauses and returns the rebuilt
/// store. Throws std::runtime_error if a step does not reproduce its recorded id.
std::vector<Clause> replay(const CnfFormula& formula, std::span<const ResolutionStep> trace);

struct DecisionChain {
  /// Resolved variables in left-to-right post order of the recorded derivation.
  std::vector<Variable> resolved;
  /// Variables of the derived clause.
  std::vector<Variable> connected;

  [[nodiscard]] bool is_generalized_unit() const { return connected.size() == 1; }
  [[nodiscard]] bool is_generalized_empty() const { return connected.empty(); }
};

/// Throws std::out_of_range for an unknown id.
DecisionChain decision_chain_of(const SaturationResult& result, ClauseId id);

/// Ids of every clause in the derivation of `id` (including itself), ascending.
std::vector<ClauseId> ancestry_of(const SaturationResult& result, ClauseId id);

enum class DominanceVerdict { Dominant, NotShown, BudgetExhausted };
const char* to_string(DominanceVerdict verdict);

/// Dominant iff saturation stores the unit clause {lit} within the budget.
DominanceVerdict is_dominant_by_resolution(const CnfFormula& formula, Literal lit,
                                           const Budget& budget = {},
                                           Schedule schedule = Schedule::Fifo);

/// One line per step: "<left> <right> <var> -> <result> : <literals>".
void write_trace(std::ostream& out, const SaturationResult& result);
/// Graphviz description of the derivation of `id`; edges carry the resolved variable.
void write_chain_dot(std::ostream& out, const SaturationResult& result, ClauseId id,
                     const Atlas* atlas = nullptr);

}  // namespace ibdt
