#pragma once

// Literals, canonical clauses, the variable-name atlas and the CNF container.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ibdt {

using Variable = std::uint32_t;

class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Variable var, bool negated = false)
      : code_{var * 2u + (negated ? 1u : 0u)} {}

  static Literal from_dimacs(int value);

  [[nodiscard]] constexpr Variable var() const { return code_ >> 1; }
  [[nodiscard]] constexpr bool negated() const { return (code_ & 1u) != 0; }
  /// Dense index (2 * var + polarity), used for occurrence tables.
  [[nodiscard]] constexpr std::uint32_t code() const { return code_; }
  [[nodiscard]] int to_dimacs() const;

  constexpr Literal operator~() const { return Literal{var(), !negated()}; }

  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  std::uint32_t code_ = 0;
};

struct Tautology {
  Variable var = 0;  // a variable occurring with both polarities
  friend bool operator==(const Tautology&, const Tautology&) = default;
};

class Clause;
using ClauseOrTautology = std::variant<Clause, Tautology>;

/// Sorted by variable, duplicate-free and never tautological. The only way to
/// obtain a non-empty Clause is through make_clause or resolve.
class Clause {
 public:
  Clause() = default;

  [[nodiscard]] std::span<const Literal> literals() const { return lits_; }
  [[nodiscard]] std::size_t size() const { return lits_.size(); }
  [[nodiscard]] bool empty() const { return lits_.empty(); }
  [[nodiscard]] bool is_unit() const { return lits_.size() == 1; }
  [[nodiscard]] bool contains(Literal lit) const;
  [[nodiscard]] std::optional<Literal> find_var(Variable var) const;
  [[nodiscard]] Variable max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }
  [[nodiscard]] std::size_t hash() const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  friend ClauseOrTautology make_clause(std::vector<Literal> lits);
  friend class ClauseAccess;
  explicit Clause(std::vector<Literal> sorted) : lits_{std::move(sorted)} {}
  std::vector<Literal> lits_;
};

ClauseOrTautology make_clause(std::vector<Literal> lits);
inline ClauseOrTautology make_clause(std::span<const Literal> lits) {
  return make_clause(std::vector<Literal>(lits.begin(), lits.end()));
}
inline ClauseOrTautology make_clause(std::initializer_list<Literal> lits) {
  return make_clause(std::vector<Literal>(lits));
}

/// make_clause for callers that know the input is not tautological; throws
/// std::invalid_argument otherwise.
Clause require_clause(std::vector<Literal> lits);
inline Clause require_clause(std::initializer_list<Literal> lits) {
  return require_clause(std::vector<Literal>(lits));
}

inline bool is_tautology(const ClauseOrTautology& r) {
  return std::holds_alternative<Tautology>(r);
}

struct ClauseHash {
  std::size_t operator()(const Clause& c) const { return c.hash(); }
};

/// Literals as signed DIMACS integers, space separated ("1 -3").
std::string to_string(const Clause& clause);

// ---------------------------------------------------------------------------
// Structured variable names

struct Root {
  friend auto operator<=>(const Root&, const Root&) = default;
};
/// x_{step,slot} of the pair chain; the unit chain uses slot 1.
struct ChainPair {
  std::uint32_t step = 2;
  std::uint32_t slot = 1;
  friend auto operator<=>(const ChainPair&, const ChainPair&) = default;
};
/// Pair-boundary variable of a binomial tree. `tree` separates the namespaces
/// of composed or attached trees; tree 0 is the primary tree.
struct TreeSlot {
  std::uint32_t tree = 0;
  std::uint32_t boundary = 2;
  std::uint32_t row = 1;
  friend auto operator<=>(const TreeSlot&, const TreeSlot&) = default;
};
/// Vertex of a perfect binary tree: depth >= 1, index in [0, 2^depth).
struct BinarySlot {
  std::uint32_t depth = 1;
  std::uint64_t index = 0;
  friend auto operator<=>(const BinarySlot&, const BinarySlot&) = default;
};
struct Fresh {
  std::uint32_t tag = 0;
  friend auto operator<=>(const Fresh&, const Fresh&) = default;
};

using VarName = std::variant<Root, ChainPair, TreeSlot, BinarySlot, Fresh>;

/// Throws std::invalid_argument if a name violates its range invariants.
void validate(const VarName& name);
/// Short human-readable form: x1_1, x3_2, t1:x4_2, b2.3, z1.
std::string display_name(const VarName& name);
/// Serialized form used by "c var" comment lines.
std::string atlas_text(const VarName& name);
/// Inverse of atlas_text; nullopt on malformed input.
std::optional<VarName> parse_atlas_text(std::string_view text);

/// Injective map between structured names and variable ids. Ids are handed
/// out in registration order starting at 1.
class Atlas {
 public:
  Variable register_name(const VarName& name);
  /// Binds an explicit id (used when reading DIMACS comments).
  void bind(Variable id, const VarName& name);

  [[nodiscard]] std::optional<Variable> find(const VarName& name) const;
  [[nodiscard]] const VarName* name_of(Variable id) const;
  [[nodiscard]] std::size_t size() const { return by_name_.size(); }
  [[nodiscard]] bool empty() const { return by_name_.empty(); }
  [[nodiscard]] Variable max_id() const { return static_cast<Variable>(by_id_.size()); }

  /// (id, name) pairs in ascending id order.
  [[nodiscard]] std::vector<std::pair<Variable, VarName>> entries() const;

  friend bool operator==(const Atlas& a, const Atlas& b) { return a.by_name_ == b.by_name_; }

 private:
  std::vector<std::optional<VarName>> by_id_;  // index id - 1
  std::map<VarName, Variable> by_name_;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(Variable var_count) : var_count_{var_count} {}

  /// Appends unless an identical clause is already present. Throws if a
  /// literal references a variable above var_count().
  bool add_clause(const Clause& clause);
  void set_var_count(Variable count);
  void set_meta(const std::string& key, std::string value);
  [[nodiscard]] std::optional<std::string> meta(std::string_view key) const;

  [[nodiscard]] Variable var_count() const { return var_count_; }
  [[nodiscard]] std::span<const Clause> clauses() const { return clauses_; }
  [[nodiscard]] std::size_t clause_count() const { return clauses_.size(); }
  [[nodiscard]] bool contains(const Clause& clause) const;
  [[nodiscard]] const Atlas& atlas() const { return atlas_; }
  Atlas& atlas() { return atlas_; }
  [[nodiscard]] const Metadata& metadata() const { return metadata_; }

  /// Atlas lookup that throws std::out_of_range when the name is absent.
  [[nodiscard]] Variable var(const VarName& name) const;
  [[nodiscard]] Literal lit(const VarName& name, bool negated = false) const {
    return Literal{var(name), negated};
  }

  /// Copy with extra clauses appended (duplicates skipped).
  [[nodiscard]] CnfFormula with_clauses(std::span<const Clause> extra) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&);

 private:
  Variable var_count_ = 0;
  std::vector<Clause> clauses_;
  std::map<Clause, std::size_t> index_;
  Atlas atlas_;
  Metadata metadata_;
};

}  // namespace ibdt
