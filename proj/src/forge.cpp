#include "ibdt/forge.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace ibdt {

namespace {

using NamedClause = std::vector<NamedLiteral>;

NamedLiteral pos(VarName n) { return {std::move(n), false}; }
NamedLiteral neg(VarName n) { return {std::move(n), true}; }

// Clause list over structured names; ids are assigned by finalize().
class NamedCnf {
 public:
  void add(NamedClause c) { clauses_.push_back(std::move(c)); }

  void emit_node(const NamedLiteral& entry, const VarName& left, const VarName& right) {
    add({entry, pos(left), pos(right)});
    add({entry, pos(left), neg(right)});
    add({entry, neg(left), pos(right)});
  }

  [[nodiscard]] bool mentions(const VarName& name) const {
    for (const auto& c : clauses_) {
      for (const auto& l : c) {
        if (l.name == name) return true;
      }
    }
    return false;
  }

  void substitute(const VarName& from, const NamedLiteral& to) {
    for (auto& c : clauses_) {
      for (auto& l : c) {
        if (l.name == from) l = NamedLiteral{to.name, to.negated != l.negated};
      }
    }
  }

  void erase(const NamedClause& target) {
    auto same = [&](const NamedClause& c) {
      return std::is_permutation(c.begin(), c.end(), target.begin(), target.end());
    };
    clauses_.erase(std::remove_if(clauses_.begin(), clauses_.end(), same), clauses_.end());
  }

  [[nodiscard]] std::size_t distinct_names() const {
    std::set<VarName> names;
    for (const auto& c : clauses_) {
      for (const auto& l : c) names.insert(l.name);
    }
    return names.size();
  }

  struct Finalized {
    CnfFormula formula;
    std::size_t tautologies = 0;
    std::size_t duplicates = 0;
  };

  // Names in `preferred` that still occur are registered first, in that
  // order; the rest follow in order of first appearance.
  [[nodiscard]] Finalized finalize(const std::vector<VarName>& preferred) const {
    Finalized out;
    Atlas& atlas = out.formula.atlas();
    for (const VarName& n : preferred) {
      if (mentions(n)) atlas.register_name(n);
    }
    for (const auto& c : clauses_) {
      for (const auto& l : c) atlas.register_name(l.name);
    }
    out.formula.set_var_count(atlas.max_id());
    for (const auto& c : clauses_) {
      std::vector<Literal> lits;
      for (const auto& l : c) lits.emplace_back(*atlas.find(l.name), l.negated);
      auto made = make_clause(std::move(lits));
      if (auto* clause = std::get_if<Clause>(&made)) {
        if (!out.formula.add_clause(*clause)) ++out.duplicates;
      } else {
        ++out.tautologies;
      }
    }
    return out;
  }

  static NamedCnf from_formula(const CnfFormula& formula) {
    NamedCnf cnf;
    for (const Clause& c : formula.clauses()) {
      NamedClause nc;
      for (Literal l : c) {
        const VarName* n = formula.atlas().name_of(l.var());
        if (!n) throw std::invalid_argument("variable " + std::to_string(l.var()) + " has no name");
        nc.push_back({*n, l.negated()});
      }
      cnf.add(std::move(nc));
    }
    return cnf;
  }

 private:
  std::vector<NamedClause> clauses_;
};

NamedLiteral root_literal(bool negated) { return {Root{}, negated}; }

// Levels 1..k of a binomial tree in namespace `tree`; `first_entry` is the
// literal occupying the entry position of node (1, 1).
void emit_binomial(NamedCnf& cnf, std::uint32_t tree, std::uint32_t k,
                   const NamedLiteral& first_entry) {
  for (std::uint32_t level = 1; level <= k; ++level) {
    for (std::uint32_t row = 1; row <= level; ++row) {
      NamedLiteral entry = level == 1 ? first_entry : neg(TreeSlot{tree, level, row});
      cnf.emit_node(entry, TreeSlot{tree, level + 1, row}, TreeSlot{tree, level + 1, row + 1});
    }
  }
}

std::uint32_t closure_row(const Closure& c) {
  if (auto* a = std::get_if<AliasClosure>(&c)) return a->row;
  if (auto* cc = std::get_if<ClauseClosure>(&c)) return cc->row;
  return 0;
}

void apply_closure(NamedCnf& cnf, const Closure& closure, const VarName& leaf,
                   const NamedLiteral& root) {
  if (std::holds_alternative<AliasClosure>(closure)) {
    cnf.substitute(leaf, root);
  } else if (std::holds_alternative<ClauseClosure>(closure)) {
    cnf.add({neg(leaf), root});
  }
}

void stamp_counts(CnfFormula& f, std::size_t named_vars, std::size_t tautologies,
                  std::size_t duplicates) {
  std::size_t width2 = 0;
  std::size_t other = 0;
  for (const Clause& c : f.clauses()) {
    if (c.size() == 2) ++width2;
    if (c.size() != 2 && c.size() != 3) ++other;
  }
  f.set_meta("named_vars", std::to_string(named_vars));
  f.set_meta("vars", std::to_string(f.var_count()));
  f.set_meta("clauses", std::to_string(f.clause_count()));
  f.set_meta("width2_clauses", std::to_string(width2));
  f.set_meta("other_width_clauses", std::to_string(other));
  f.set_meta("tautologies_dropped", std::to_string(tautologies));
  f.set_meta("duplicates_dropped", std::to_string(duplicates));
}

CnfFormula finish(const NamedCnf& cnf, Metadata meta) {
  auto done = cnf.finalize({Root{}});
  for (auto& [k, v] : meta) done.formula.set_meta(k, std::move(v));
  stamp_counts(done.formula, cnf.distinct_names(), done.tautologies, done.duplicates);
  return std::move(done.formula);
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

struct LocatedNode {
  Literal entry;   // as it appears in the node clause
  Variable left;
  Variable right;
  std::uint32_t last_boundary;
};

LocatedNode locate_node(const CnfFormula& f, NodePos node) {
  require(node.level >= 1 && node.row >= 1 && node.row <= node.level,
          "node position needs 1 <= row <= level");
  const Atlas& atlas = f.atlas();
  auto left = atlas.find(TreeSlot{node.tree, node.level + 1, node.row});
  auto right = atlas.find(TreeSlot{node.tree, node.level + 1, node.row + 1});
  require(left && right, "node pair variables not present in the formula");
  std::optional<Variable> entry;
  if (node.level == 1) {
    entry = atlas.find(TreeSlot{node.tree, 1, 1});
    if (!entry) entry = atlas.find(Root{});
  } else {
    entry = atlas.find(TreeSlot{node.tree, node.level, node.row});
  }
  require(entry.has_value(), "node entry variable not present in the formula");

  std::optional<Literal> entry_lit;
  for (const Clause& c : f.clauses()) {
    auto e = c.find_var(*entry);
    if (c.size() == 3 && e && c.contains(Literal{*left}) && c.contains(Literal{*right})) {
      entry_lit = *e;
      break;
    }
  }
  require(entry_lit.has_value(), "node clause not found in the formula");

  std::uint32_t last = 0;
  for (const auto& [id, name] : atlas.entries()) {
    if (auto* s = std::get_if<TreeSlot>(&name); s && s->tree == node.tree)
      last = std::max(last, s->boundary);
  }
  return LocatedNode{*entry_lit, *left, *right, last};
}

void rewrite_metadata(CnfFormula& out, const CnfFormula& in) {
  for (const auto& [k, v] : in.metadata()) {
    if (!out.meta(k)) out.set_meta(k, v);
  }
}

std::vector<VarName> atlas_order(const CnfFormula& f) {
  std::vector<VarName> names;
  for (auto& [id, n] : f.atlas().entries()) names.push_back(n);
  return names;
}

std::string node_text(NodePos n) {
  std::string s = std::to_string(n.level) + ":" + std::to_string(n.row);
  if (n.tree != 0) s = "t" + std::to_string(n.tree) + "/" + s;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

CnfFormula build_unit_chain(std::uint32_t k) {
  require(k >= 2, "unit chain needs k >= 2");
  require(k <= 1'000'000, "unit chain depth too large");
  auto x = [](std::uint32_t i) -> VarName {
    if (i == 1) return Root{};
    return ChainPair{i, 1};
  };
  NamedCnf cnf;
  cnf.add({pos(x(1)), pos(x(2))});
  for (std::uint32_t i = 2; i < k; ++i) cnf.add({neg(x(i)), pos(x(i + 1))});
  cnf.add({neg(x(k)), pos(x(1))});
  return finish(cnf, {{"family", "unit-chain"}, {"k", std::to_string(k)}});
}

CnfFormula build_pair_chain(std::uint32_t k) {
  require(k >= 2, "pair chain needs k >= 2");
  require(k <= 1'000'000, "pair chain depth too large");
  NamedCnf cnf;
  for (std::uint32_t i = 2; i <= k; ++i) {
    NamedLiteral entry = i == 2 ? root_literal(false) : neg(ChainPair{i - 1, 1});
    cnf.emit_node(entry, ChainPair{i, 1}, ChainPair{i, 2});
  }
  // Closing triple: its pair (x_{k+1,1}, x_{1,1}) reduces to (~x_{k,1} v x_{1,1}).
  cnf.emit_node(neg(ChainPair{k, 1}), ChainPair{k + 1, 1}, Root{});
  return finish(cnf, {{"family", "pair-chain"}, {"k", std::to_string(k)}});
}

CnfFormula build_binary_tree(std::uint32_t k, Closure closure) {
  require(k >= 1, "binary tree needs k >= 1");
  require(k <= kMaxBinaryDepth, "binary tree depth above " + std::to_string(kMaxBinaryDepth));
  const std::uint64_t leaves = std::uint64_t{1} << k;
  if (auto row = closure_row(closure)) require(row <= leaves, "closure row outside leaf range");
  TreeSpec spec;
  spec.variant = Variant::BinaryTree;
  spec.k = k;
  NamedCnf cnf;
  for (const NodeLayout& n : tree_layout(spec)) {
    NamedLiteral entry = n.pos.level == 1 ? root_literal(false) : neg(n.entry);
    cnf.emit_node(entry, n.left, n.right);
  }
  if (auto row = closure_row(closure))
    apply_closure(cnf, closure, BinarySlot{k, row - 1}, root_literal(false));
  return finish(cnf, {{"family", "binary-tree"},
                      {"k", std::to_string(k)},
                      {"closure", closure_text(closure)},
                      {"closed_form_vars", std::to_string(2 * leaves - 1)}});
}

CnfFormula build_binomial_tree(const TreeSpec& spec) {
  require(spec.variant == Variant::BinomialTree, "spec variant must be BinomialTree");
  const std::uint32_t k = spec.k;
  require(k >= 1, "binomial tree needs k >= 1");
  require(k <= kMaxTreeDepth, "binomial tree depth above " + std::to_string(kMaxTreeDepth));
  if (auto row = closure_row(spec.closure))
    require(row >= 1 && row <= k + 1, "closure row outside 1.." + std::to_string(k + 1));

  const NamedLiteral root = root_literal(spec.root_negated);
  NamedCnf cnf;
  emit_binomial(cnf, 0, k, root);
  if (auto row = closure_row(spec.closure))
    apply_closure(cnf, spec.closure, TreeSlot{0, k + 1, row}, root);
  const std::size_t named = cnf.distinct_names();

  std::string subs_text;
  for (const Substitution& s : spec.substitutions) {
    require(s.slot.tree == 0 && s.slot.boundary >= 2 && s.slot.boundary <= k + 1 &&
                s.slot.row >= 1 && s.slot.row <= s.slot.boundary && cnf.mentions(s.slot),
            "substitution of a nonexistent slot " + display_name(s.slot));
    validate(s.replacement.name);
    cnf.substitute(s.slot, s.replacement);
    if (!subs_text.empty()) subs_text += ';';
    subs_text += substitution_text(s);
  }

  Metadata meta{{"family", "binomial-tree"},
                {"k", std::to_string(k)},
                {"closure", closure_text(spec.closure)},
                {"root", spec.root_negated ? "negative" : "positive"},
                {"substitutions", subs_text.empty() ? "none" : subs_text},
                {"closed_form_vars", std::to_string(static_cast<std::uint64_t>(k + 1) * (k + 2) / 2)}};
  auto done = cnf.finalize({Root{}});
  CnfFormula formula = std::move(done.formula);
  for (auto& [key, v] : meta) formula.set_meta(key, std::move(v));
  stamp_counts(formula, named, done.tautologies, done.duplicates);

  std::string implicit_text;
  for (const ImplicitNode& imp : spec.implicit_nodes) {
    formula = make_implicit(formula, imp.node, imp.via);
    if (!implicit_text.empty()) implicit_text += ';';
    implicit_text += node_text(imp.node) + "@" + std::to_string(imp.via.boundary) + ":" +
                     std::to_string(imp.via.row);
  }
  formula.set_meta("implicit", implicit_text.empty() ? "none" : implicit_text);

  if (spec.redundancy.count > 0) {
    std::vector<Clause> extra;
    for (std::uint32_t level = 1; level + 1 <= k; ++level) {
      for (std::uint32_t row = 1; row <= level; ++row) {
        std::uint64_t node_seed = mix(spec.redundancy.seed ^ mix((std::uint64_t{level} << 32) | row));
        auto more = gen_redundancy_clauses(formula, NodePos{level, row, 0},
                                           spec.redundancy.count, node_seed);
        extra.insert(extra.end(), more.begin(), more.end());
      }
    }
    formula = formula.with_clauses(extra);
  }
  formula.set_meta("redundancy", std::to_string(spec.redundancy.count));
  formula.set_meta("seed", std::to_string(spec.redundancy.seed));
  formula.set_meta("vars", std::to_string(formula.var_count()));
  formula.set_meta("clauses", std::to_string(formula.clause_count()));
  return formula;
}

CnfFormula compose_two_trees(std::uint32_t k, Closing closing) {
  require(k >= 2, "two-tree composition needs k >= 2");
  require(k <= kMaxTreeDepth, "binomial tree depth above " + std::to_string(kMaxTreeDepth));
  const NamedLiteral pos_root = root_literal(false);
  const NamedLiteral neg_root = root_literal(true);
  NamedCnf cnf;
  emit_binomial(cnf, 0, k, pos_root);
  emit_binomial(cnf, 1, k, neg_root);
  const bool matched = closing == Closing::Matched;
  cnf.substitute(TreeSlot{0, k + 1, 1}, matched ? pos_root : neg_root);
  cnf.substitute(TreeSlot{1, k + 1, 1}, matched ? neg_root : pos_root);
  return finish(cnf, {{"family", matched ? "compose-matched" : "compose-crossed"},
                      {"k", std::to_string(k)}});
}

CnfFormula build_multi_branching(std::uint32_t k_top, std::uint32_t k_sub, Closure closure) {
  require(k_top >= 2, "multi-branching needs k_top >= 2");
  require(k_sub >= 1, "multi-branching needs k_sub >= 1");
  require(k_top <= 200 && k_sub <= 200, "multi-branching depths too large");
  if (auto row = closure_row(closure))
    require(row <= k_sub + 1, "closure row outside subtree leaf range");
  const NamedLiteral root = root_literal(false);
  NamedCnf cnf;
  emit_binomial(cnf, 0, k_top - 1, root);
  // Level k_top: disjoint pairs, each variable entering subtree 2r-1 or 2r.
  for (std::uint32_t row = 1; row <= k_top; ++row) {
    cnf.emit_node(neg(TreeSlot{0, k_top, row}), TreeSlot{2 * row - 1, 1, 1},
                  TreeSlot{2 * row, 1, 1});
  }
  for (std::uint32_t t = 1; t <= 2 * k_top; ++t) emit_binomial(cnf, t, k_sub, neg(TreeSlot{t, 1, 1}));
  if (auto row = closure_row(closure))
    apply_closure(cnf, closure, TreeSlot{1, k_sub + 1, row}, root);

  const std::uint64_t top_nodes = static_cast<std::uint64_t>(k_top) * (k_top + 1) / 2;
  const std::uint64_t sub_nodes = static_cast<std::uint64_t>(k_sub) * (k_sub + 1) / 2;
  const std::uint64_t expected =
      3 * top_nodes + 2ull * k_top * 3 * sub_nodes +
      (std::holds_alternative<ClauseClosure>(closure) ? 1 : 0);
  return finish(cnf, {{"family", "multi-branching"},
                      {"k", std::to_string(k_top)},
                      {"k_sub", std::to_string(k_sub)},
                      {"closure", closure_text(closure)},
                      {"subtrees", std::to_string(2 * k_top)},
                      {"expected_clauses", std::to_string(expected)}});
}

CnfFormula build_instance(const TreeSpec& spec) {
  switch (spec.variant) {
    case Variant::UnitChain: return build_unit_chain(spec.k);
    case Variant::PairChain: return build_pair_chain(spec.k);
    case Variant::BinaryTree: return build_binary_tree(spec.k, spec.closure);
    case Variant::BinomialTree: return build_binomial_tree(spec);
    case Variant::MultiBranching: return build_multi_branching(spec.k, spec.sub_k, spec.closure);
  }
  throw std::invalid_argument("unknown variant");
}

// ---------------------------------------------------------------------------

CnfFormula remove_switching_clauses(const CnfFormula& formula, NodePos node) {
  LocatedNode located = locate_node(formula, node);
  const Atlas& atlas = formula.atlas();
  const Literal a{located.left, false};
  const Literal b{located.right, false};
  std::vector<Clause> keep;
  const Clause sw1 = require_clause({located.entry, a, ~b});
  const Clause sw2 = require_clause({located.entry, ~a, b});
  require(formula.contains(sw1) && formula.contains(sw2), "node switching clauses not present");
  for (const Clause& c : formula.clauses()) {
    if (c != sw1 && c != sw2) keep.push_back(c);
  }
  CnfFormula out{formula.var_count()};
  out.atlas() = atlas;
  for (Clause& c : keep) out.add_clause(std::move(c));
  rewrite_metadata(out, formula);
  out.set_meta("clauses", std::to_string(out.clause_count()));
  return out;
}

CnfFormula make_implicit(const CnfFormula& formula, NodePos node, TreeSlot via) {
  LocatedNode located = locate_node(formula, node);
  require(via.tree == node.tree, "via slot belongs to another tree");
  require(via.boundary >= node.level + 2 && via.boundary <= located.last_boundary,
          "via slot must lie on a boundary below the node's children");
  const std::uint32_t lo = node.row;
  const std::uint32_t hi = node.row + (via.boundary - node.level);
  require(via.row >= lo && via.row <= hi, "via slot is not a descendant of the node");
  require(formula.atlas().find(via).has_value(), "via slot not present in the formula");

  const Atlas& atlas = formula.atlas();
  const VarName& entry_name = *atlas.name_of(located.entry.var());
  const VarName& left = *atlas.name_of(located.left);
  const VarName& right = *atlas.name_of(located.right);
  NamedLiteral entry{entry_name, located.entry.negated()};
  const Literal a{located.left, false};
  const Literal b{located.right, false};
  require(formula.contains(require_clause({located.entry, a, ~b})) &&
              formula.contains(require_clause({located.entry, ~a, b})),
          "node switching clauses not present");

  NamedCnf cnf = NamedCnf::from_formula(formula);
  cnf.erase({entry, pos(left), neg(right)});
  cnf.erase({entry, neg(left), pos(right)});
  // Rows below the right child route back to the left pair variable; the
  // leftmost row can only reach the left child, so it routes to the right one.
  const VarName& target = via.row > node.row ? left : right;
  cnf.substitute(via, pos(target));

  auto done = cnf.finalize(atlas_order(formula));
  CnfFormula out = std::move(done.formula);
  rewrite_metadata(out, formula);
  std::size_t prior_taut = 0;
  if (auto t = formula.meta("tautologies_dropped")) prior_taut = std::stoul(*t);
  out.set_meta("tautologies_dropped", std::to_string(prior_taut + done.tautologies));
  out.set_meta("vars", std::to_string(out.var_count()));
  out.set_meta("clauses", std::to_string(out.clause_count()));
  return out;
}

std::vector<Clause> gen_redundancy_clauses(const CnfFormula& formula, NodePos node,
                                           std::uint32_t count, std::uint64_t seed) {
  require(count >= 1, "redundancy count must be >= 1");
  LocatedNode located = locate_node(formula, node);
  require(node.level + 2 <= located.last_boundary, "node at leaf level has no child nodes");

  std::vector<Variable> pool;
  for (std::uint32_t b = node.level + 1; b <= located.last_boundary; ++b) {
    for (std::uint32_t r = node.row; r <= node.row + (b - node.level); ++r) {
      if (auto id = formula.atlas().find(TreeSlot{node.tree, b, r})) pool.push_back(*id);
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Clause> candidates;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (pool[i] == located.entry.var() || pool[j] == located.entry.var()) continue;
      Clause c = require_clause({located.entry, Literal{pool[i]}, Literal{pool[j]}});
      if (!formula.contains(c)) candidates.push_back(std::move(c));
    }
  }
  require(!candidates.empty(), "node has no descendant variables to draw from");

  std::mt19937_64 rng{seed};
  for (std::size_t i = candidates.size() - 1; i > 0; --i) {
    std::swap(candidates[i], candidates[uniform_below(rng, i + 1)]);
  }
  if (candidates.size() > count) candidates.resize(count);
  return candidates;
}

std::vector<NodeLayout> tree_layout(const TreeSpec& spec) {
  std::vector<NodeLayout> nodes;
  if (spec.variant == Variant::BinomialTree) {
    require(spec.k >= 1 && spec.k <= kMaxTreeDepth, "binomial depth out of range");
    for (std::uint32_t level = 1; level <= spec.k; ++level) {
      for (std::uint32_t row = 1; row <= level; ++row) {
        VarName entry = level == 1 ? VarName{Root{}} : VarName{TreeSlot{0, level, row}};
        nodes.push_back({NodePos{level, row, 0}, entry, TreeSlot{0, level + 1, row},
                         TreeSlot{0, level + 1, row + 1}});
      }
    }
  } else if (spec.variant == Variant::BinaryTree) {
    require(spec.k >= 1 && spec.k <= kMaxBinaryDepth, "binary depth out of range");
    for (std::uint32_t depth = 0; depth < spec.k; ++depth) {
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << depth); ++j) {
        VarName entry = depth == 0 ? VarName{Root{}} : VarName{BinarySlot{depth, j}};
        nodes.push_back({NodePos{depth + 1, static_cast<std::uint32_t>(j + 1), 0}, entry,
                         BinarySlot{depth + 1, 2 * j}, BinarySlot{depth + 1, 2 * j + 1}});
      }
    }
  } else {
    throw std::invalid_argument("layout is defined for binomial and binary trees");
  }
  return nodes;
}

// ---------------------------------------------------------------------------

std::string closure_text(const Closure& closure) {
  if (auto* a = std::get_if<AliasClosure>(&closure)) return "alias:" + std::to_string(a->row);
  if (auto* c = std::get_if<ClauseClosure>(&closure)) return "clause:" + std::to_string(c->row);
  return "none";
}

namespace {

bool parse_u32(std::string_view s, std::uint32_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Closure> parse_closure(std::string_view text) {
  if (text == "none") return Closure{NoClosure{}};
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::uint32_t row = 0;
  if (!parse_u32(text.substr(colon + 1), row) || row == 0) return std::nullopt;
  auto kind = text.substr(0, colon);
  if (kind == "alias") return Closure{AliasClosure{row}};
  if (kind == "clause") return Closure{ClauseClosure{row}};
  return std::nullopt;
}

std::optional<Substitution> parse_substitution(std::string_view text) {
  auto colon = text.find(':');
  auto eq = text.find('=');
  if (colon == std::string_view::npos || eq == std::string_view::npos || eq < colon)
    return std::nullopt;
  Substitution s;
  if (!parse_u32(text.substr(0, colon), s.slot.boundary) ||
      !parse_u32(text.substr(colon + 1, eq - colon - 1), s.slot.row))
    return std::nullopt;
  auto lit = text.substr(eq + 1);
  bool negated = !lit.empty() && lit.front() == '-';
  if (negated) lit.remove_prefix(1);
  if (lit == "root") {
    s.replacement = {Root{}, negated};
  } else if (lit.size() > 1 && lit.front() == 'z') {
    std::uint32_t tag = 0;
    if (!parse_u32(lit.substr(1), tag)) return std::nullopt;
    s.replacement = {Fresh{tag}, negated};
  } else {
    return std::nullopt;
  }
  try {
    validate(s.slot);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return s;
}

std::string substitution_text(const Substitution& s) {
  std::string lit;
  if (std::holds_alternative<Root>(s.replacement.name)) {
    lit = "root";
  } else if (auto* f = std::get_if<Fresh>(&s.replacement.name)) {
    lit = "z" + std::to_string(f->tag);
  } else {
    lit = display_name(s.replacement.name);
  }
  return std::to_string(s.slot.boundary) + ":" + std::to_string(s.slot.row) + "=" +
         (s.replacement.negated ? "-" : "") + lit;
}

}  // namespace ibdt
