#pragma once

#include <vector>

#include "ibdt/formula.hpp"

namespace ibdt {

// Library-internal constructor bypass for code that already produces sorted,
// duplicate-free, non-tautological literal sequences.
class ClauseAccess {
 public:
  static Clause from_sorted(std::vector<Literal> lits) { return Clause{std::move(lits)}; }
};

}  // namespace ibdt
