#pragma once

// Deterministic generators for the decision-chain and decision-tree instance
// families, plus the rewrites applied to them (closure, substitution,
// implicit decision clauses, redundancy clauses).
//
// Binomial tree schema: node (l, r), 1 <= r <= l <= k, is entered by
// TreeSlot(l, r) (the root literal at l = 1) and pairs TreeSlot(l+1, r) with
// TreeSlot(l+1, r+1). Each node emits the node clause (E v a v b) and the two
// switching clauses (E v a v ~b), (E v ~a v b), where E is the negated entry
// variable, or the root literal itself at level 1.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ibdt/formula.hpp"

namespace ibdt {

/// Literal over a structured name, used before ids are assigned.
struct NamedLiteral {
  VarName name;
  bool negated = false;
  NamedLiteral operator~() const { return {name, !negated}; }
  friend auto operator<=>(const NamedLiteral&, const NamedLiteral&) = default;
};

enum class Variant { UnitChain, PairChain, BinaryTree, BinomialTree, MultiBranching };

struct NoClosure {
  friend bool operator==(const NoClosure&, const NoClosure&) = default;
};
/// The leaf slot at `row` of the last boundary becomes the root literal.
struct AliasClosure {
  std::uint32_t row = 1;
  friend bool operator==(const AliasClosure&, const AliasClosure&) = default;
};
/// Adds (~leaf(row) v root) instead of aliasing.
struct ClauseClosure {
  std::uint32_t row = 1;
  friend bool operator==(const ClauseClosure&, const ClauseClosure&) = default;
};
using Closure = std::variant<NoClosure, AliasClosure, ClauseClosure>;

struct Substitution {
  TreeSlot slot;
  NamedLiteral replacement;
};

struct NodePos {
  std::uint32_t level = 1;
  std::uint32_t row = 1;
  std::uint32_t tree = 0;
  friend auto operator<=>(const NodePos&, const NodePos&) = default;
};

struct ImplicitNode {
  NodePos node;
  TreeSlot via;
};

struct Redundancy {
  std::uint32_t count = 0;  // per node with descendants
  std::uint64_t seed = 0;
};

struct TreeSpec {
  Variant variant = Variant::BinomialTree;
  std::uint32_t k = 1;
  /// Depth of the attached subtrees (MultiBranching only).
  std::uint32_t sub_k = 1;
  Closure closure = NoClosure{};
  std::vector<Substitution> substitutions;
  std::vector<ImplicitNode> implicit_nodes;
  Redundancy redundancy;
  bool root_negated = false;
};

constexpr std::uint32_t kMaxTreeDepth = 1000;
constexpr std::uint32_t kMaxBinaryDepth = 20;

CnfFormula build_unit_chain(std::uint32_t k);
CnfFormula build_pair_chain(std::uint32_t k);
CnfFormula build_binary_tree(std::uint32_t k, Closure closure = NoClosure{});
CnfFormula build_binomial_tree(const TreeSpec& spec);
inline CnfFormula build_binomial_tree(std::uint32_t k, Closure closure) {
  TreeSpec spec;
  spec.k = k;
  spec.closure = closure;
  return build_binomial_tree(spec);
}

enum class Closing { Matched, Crossed };
/// Tree A entered by x1_1, tree B (tree tag 1) entered by ~x1_1. Matched: each
/// tree's first leaf carries its own root literal; Crossed: they are swapped.
CnfFormula compose_two_trees(std::uint32_t k, Closing closing);

/// Binomial top tree whose level k_top pairs are pairwise disjoint; each of
/// the 2*k_top pair variables enters its own binomial subtree of depth k_sub
/// (tree tags 1..2*k_top). A closure applies to the leaves of subtree 1.
CnfFormula build_multi_branching(std::uint32_t k_top, std::uint32_t k_sub,
                                 Closure closure = NoClosure{});

/// Dispatches on spec.variant.
CnfFormula build_instance(const TreeSpec& spec);

/// Removes the two switching clauses of `node` and aliases the descendant
/// slot `via` to the node's other pair variable, so the node stays a decision
/// clause only through its descendants. Throws std::invalid_argument if `via`
/// does not descend from the node, or the node's clauses are not present.
CnfFormula make_implicit(const CnfFormula& formula, NodePos node, TreeSlot via);

/// The node's two switching clauses dropped and nothing else changed.
CnfFormula remove_switching_clauses(const CnfFormula& formula, NodePos node);

/// Up to `count` distinct clauses (E v u v w) with u, w drawn from variables on
/// the node's descendant boundaries, none already in the formula. Fewer are
/// returned only when the candidate pool is smaller than `count`.
std::vector<Clause> gen_redundancy_clauses(const CnfFormula& formula, NodePos node,
                                           std::uint32_t count, std::uint64_t seed);

struct NodeLayout {
  NodePos pos;
  VarName entry;
  VarName left;
  VarName right;
};

/// Node table of the tree described by `spec` before closure or substitution
/// (BinomialTree and BinaryTree). The walker in combinatorics follows it.
std::vector<NodeLayout> tree_layout(const TreeSpec& spec);

std::string closure_text(const Closure& closure);
/// Parses "none", "alias:R" or "clause:R".
std::optional<Closure> parse_closure(std::string_view text);
/// "B:R=LIT" with LIT one of root, -root, zN, -zN (tree 0).
std::optional<Substitution> parse_substitution(std::string_view text);
std::string substitution_text(const Substitution& s);

}  // namespace ibdt
