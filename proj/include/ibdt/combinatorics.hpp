#pragma once

// Depth/size formulas for binary and binomial decision trees, exact path
// counts, and an explicit walker over generated tree layouts.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ibdt/forge.hpp"
#include "ibdt/formula.hpp"

namespace ibdt {

using BigInt = boost::multiprecision::cpp_int;

/// floor(log2(n + 1)) - 1, floored at 0. Throws for n < 1.
std::uint32_t binary_depth_for(std::uint64_t n);
/// 2^k for k = binary_depth_for(n).
BigInt binary_leaf_paths(std::uint64_t n);

/// (k + 1)(k + 2) / 2. Throws std::overflow_error past 64 bits.
std::uint64_t binomial_var_count(std::uint64_t k);
/// floor((isqrt(8n + 1) - 3) / 2), floored at 0. Throws for n < 1.
std::uint64_t binomial_depth_for(std::uint64_t n);

/// Exact floor(sqrt(x)).
std::uint64_t isqrt(unsigned __int128 x);

struct PathReport {
  std::uint32_t k = 0;
  std::vector<BigInt> counts;      // arrivals per leaf row, row 1 first
  BigInt total;
  std::vector<BigInt> reference;   // closed-form value per row

  friend bool operator==(const PathReport&, const PathReport&) = default;
};

/// C(k, r - 1) for r = 1..k+1; the total is 2^k.
PathReport leaf_path_counts(std::uint32_t k);

constexpr std::uint32_t kDefaultEnumerationLimit = 24;

/// Walks every left/right selection sequence through tree_layout(spec),
/// following entry variables node to node, and tallies the leaf row reached.
/// Throws std::length_error when spec.k exceeds `depth_limit`.
PathReport enumerate_paths(const TreeSpec& spec,
                           std::uint32_t depth_limit = kDefaultEnumerationLimit);

/// m^k. Throws for m < 2 or k < 1.
BigInt candidate_combinations(std::uint64_t m, std::uint32_t k);

/// Mirror image r -> b + 1 - r of every tree-0 slot on boundary b.
CnfFormula reflect_rows(const CnfFormula& formula);

/// Resolvent of the decision path picked by `selections` (false = left) from
/// the root of a BinomialTree formula: each node clause is reduced by its
/// switching clause and chained. Returns (root v reached slot) as a clause.
Clause selection_resolvent(const CnfFormula& formula, const std::vector<bool>& selections);

/// "1 3 3 1 total 8"
std::string path_line(const PathReport& report);
void write_path_table(std::ostream& out, const PathReport& report);

}  // namespace ibdt
