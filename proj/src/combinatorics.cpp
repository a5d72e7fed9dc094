#include "ibdt/combinatorics.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <optional>
#include <stdexcept>

#include "ibdt/resolution.hpp"

namespace ibdt {

std::uint32_t binary_depth_for(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("binary_depth_for needs n >= 1");
  // floor(log2(n + 1)); n + 1 may wrap only at UINT64_MAX, where log2 is 64.
  std::uint32_t log = n == ~std::uint64_t{0} ? 64u : static_cast<std::uint32_t>(std::bit_width(n + 1) - 1);
  return log >= 1 ? log - 1 : 0;
}

BigInt binary_leaf_paths(std::uint64_t n) { return BigInt{1} << binary_depth_for(n); }

std::uint64_t binomial_var_count(std::uint64_t k) {
  unsigned __int128 v = static_cast<unsigned __int128>(k + 1) * (k + 2) / 2;
  if (k >= ~std::uint64_t{0} - 2 || v > ~std::uint64_t{0})
    throw std::overflow_error("binomial_var_count overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t isqrt(unsigned __int128 x) {
  auto s = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return static_cast<std::uint64_t>(s);
}

std::uint64_t binomial_depth_for(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("binomial_depth_for needs n >= 1");
  unsigned __int128 disc = static_cast<unsigned __int128>(n) * 8 + 1;
  std::uint64_t s = isqrt(disc);
  return s >= 3 ? (s - 3) / 2 : 0;
}

PathReport leaf_path_counts(std::uint32_t k) {
  PathReport report;
  report.k = k;
  BigInt c = 1;
  for (std::uint32_t i = 0; i <= k; ++i) {
    report.counts.push_back(c);
    c = c * (k - i) / (i + 1);
  }
  report.reference = report.counts;
  for (const BigInt& v : report.counts) report.total += v;
  return report;
}

namespace {

std::uint64_t leaf_row(const VarName& name) {
  if (auto* s = std::get_if<TreeSlot>(&name)) return s->row;
  if (auto* b = std::get_if<BinarySlot>(&name)) return b->index + 1;
  throw std::logic_error("leaf is not a tree slot");
}

}  // namespace

PathReport enumerate_paths(const TreeSpec& spec, std::uint32_t depth_limit) {
  if (spec.k > depth_limit)
    throw std::length_error("enumeration of 2^" + std::to_string(spec.k) +
                            " paths exceeds the depth limit " + std::to_string(depth_limit) +
                            "; use leaf_path_counts for the closed form");
  if (spec.variant == Variant::BinomialTree && spec.k == 0) return leaf_path_counts(0);
  const auto layout = tree_layout(spec);
  std::map<VarName, std::size_t> entered_by;
  for (std::size_t i = 0; i < layout.size(); ++i) entered_by.emplace(layout[i].entry, i);

  // Resolve each node's two selections to the next node (or leaf row) once.
  struct Edge {
    bool leaf;
    std::uint64_t target;  // node index or leaf row
  };
  std::vector<std::array<Edge, 2>> edges(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const VarName* picks[2] = {&layout[i].left, &layout[i].right};
    for (int side = 0; side < 2; ++side) {
      auto it = entered_by.find(*picks[side]);
      edges[i][side] = it == entered_by.end() ? Edge{true, leaf_row(*picks[side])}
                                              : Edge{false, it->second};
    }
  }
  auto start = entered_by.find(Root{});
  if (start == entered_by.end()) throw std::logic_error("layout has no root node");

  const std::uint64_t rows = spec.variant == Variant::BinaryTree ? (std::uint64_t{1} << spec.k)
                                                                 : spec.k + 1;
  std::vector<std::uint64_t> tally(rows, 0);
  // Depth-first walk; the stack holds (node, next side to try).
  std::vector<std::pair<std::size_t, int>> stack{{start->second, 0}};
  while (!stack.empty()) {
    auto& [node, side] = stack.back();
    if (side == 2) {
      stack.pop_back();
      continue;
    }
    const Edge e = edges[node][side++];
    if (e.leaf) {
      ++tally.at(e.target - 1);
    } else {
      stack.emplace_back(e.target, 0);
    }
  }

  PathReport report;
  report.k = spec.k;
  for (auto v : tally) {
    report.counts.emplace_back(v);
    report.total += v;
  }
  if (spec.variant == Variant::BinaryTree) {
    report.reference.assign(rows, BigInt{1});
  } else {
    report.reference = leaf_path_counts(spec.k).counts;
  }
  return report;
}

BigInt candidate_combinations(std::uint64_t m, std::uint32_t k) {
  if (m < 2) throw std::invalid_argument("candidate_combinations needs m >= 2");
  if (k < 1) throw std::invalid_argument("candidate_combinations needs k >= 1");
  return boost::multiprecision::pow(BigInt{m}, k);
}

CnfFormula reflect_rows(const CnfFormula& formula) {
  const Atlas& atlas = formula.atlas();
  std::vector<Variable> image(static_cast<std::size_t>(formula.var_count()) + 1, 0);
  for (const auto& [id, name] : atlas.entries()) {
    VarName mirrored = name;
    if (auto* s = std::get_if<TreeSlot>(&mirrored); s && s->tree == 0) s->row = s->boundary + 1 - s->row;
    auto target = atlas.find(mirrored);
    if (!target) throw std::invalid_argument("mirror image of " + display_name(name) + " is absent");
    image[id] = *target;
  }
  CnfFormula out{formula.var_count()};
  out.atlas() = atlas;
  for (const Clause& c : formula.clauses()) {
    std::vector<Literal> lits;
    for (Literal l : c) {
      if (image[l.var()] == 0) throw std::invalid_argument("variable without a name");
      lits.emplace_back(image[l.var()], l.negated());
    }
    out.add_clause(require_clause(std::move(lits)));
  }
  return out;
}

Clause selection_resolvent(const CnfFormula& formula, const std::vector<bool>& selections) {
  if (selections.empty()) throw std::invalid_argument("need at least one selection");
  auto need = [&](const Clause& c) -> const Clause& {
    if (!formula.contains(c)) throw std::invalid_argument("decision clause missing: " + to_string(c));
    return c;
  };
  const Variable root = formula.var(Root{});
  std::optional<Literal> root_lit;
  for (const Clause& c : formula.clauses()) {
    if (auto l = c.find_var(root); l && c.size() == 3) {
      root_lit = *l;
      break;
    }
  }
  if (!root_lit) throw std::invalid_argument("no root node clause");

  std::uint32_t row = 1;
  std::optional<Clause> acc;
  for (std::uint32_t level = 1; level <= selections.size(); ++level) {
    Literal entry = level == 1 ? *root_lit : ~formula.lit(TreeSlot{0, level, row});
    Literal a = formula.lit(TreeSlot{0, level + 1, row});
    Literal b = formula.lit(TreeSlot{0, level + 1, row + 1});
    const bool right = selections[level - 1];
    Clause node = need(require_clause({entry, a, b}));
    Clause sw = right ? need(require_clause({entry, ~a, b})) : need(require_clause({entry, a, ~b}));
    Clause decision = std::get<Clause>(resolve(node, sw, right ? a.var() : b.var()));
    acc = acc ? std::get<Clause>(resolve(*acc, decision, entry.var())) : decision;
    if (right) ++row;
  }
  return *acc;
}

std::string path_line(const PathReport& report) {
  std::ostringstream out;
  for (const BigInt& c : report.counts) out << c << ' ';
  out << "total " << report.total;
  return out.str();
}

void write_path_table(std::ostream& out, const PathReport& report) {
  out << "k = " << report.k << "\nrow\tpaths\treference\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    out << (i + 1) << '\t' << report.counts[i] << '\t' << report.reference[i] << '\n';
  }
  out << "total\t" << report.total << '\n';
}

}  // namespace ibdt
