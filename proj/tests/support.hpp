#pragma once

// Reference oracles for the tests. They share nothing with the library's
// solvers beyond reading clauses: plain recursion over every assignment.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "ibdt/formula.hpp"

namespace ibdt::testing {

inline bool clause_holds(const Clause& c, const std::vector<bool>& val) {
  for (Literal l : c) {
    if (val[l.var()] == !l.negated()) return true;
  }
  return false;
}

inline bool all_hold(const CnfFormula& f, const std::vector<bool>& val) {
  for (const Clause& c : f.clauses()) {
    if (!clause_holds(c, val)) return false;
  }
  return true;
}

/// Calls `visit` on every model; stops early when it returns false.
inline void each_model(const CnfFormula& f, const std::function<bool(const std::vector<bool>&)>& visit) {
  std::vector<bool> val(f.var_count() + 1, false);
  bool go = true;
  std::function<void(Variable)> rec = [&](Variable v) {
    if (!go) return;
    if (v > f.var_count()) {
      if (all_hold(f, val)) go = visit(val);
      return;
    }
    for (bool b : {false, true}) {
      val[v] = b;
      rec(v + 1);
    }
  };
  rec(1);
}

inline bool naive_sat(const CnfFormula& f) {
  bool found = false;
  each_model(f, [&](const std::vector<bool>&) {
    found = true;
    return false;
  });
  return found;
}

inline std::uint64_t model_count(const CnfFormula& f) {
  std::uint64_t n = 0;
  each_model(f, [&](const std::vector<bool>&) {
    ++n;
    return true;
  });
  return n;
}

/// Satisfiable, and every model makes `lit` true.
inline bool naive_dominant(const CnfFormula& f, Literal lit) {
  bool any = false;
  bool forced = true;
  each_model(f, [&](const std::vector<bool>& val) {
    any = true;
    if (val[lit.var()] == lit.negated()) forced = false;
    return forced;
  });
  return any && forced;
}

inline bool naive_entails(const CnfFormula& f, const Clause& c) {
  bool ok = true;
  each_model(f, [&](const std::vector<bool>& val) {
    ok = clause_holds(c, val);
    return ok;
  });
  return ok;
}

inline Clause random_clause(std::mt19937_64& rng, Variable n, std::size_t width) {
  std::vector<Literal> lits;
  while (lits.size() < width) {
    Variable v = 1 + static_cast<Variable>(rng() % n);
    bool seen = false;
    for (Literal l : lits) seen |= l.var() == v;
    if (!seen) lits.emplace_back(v, (rng() & 1) != 0);
  }
  return require_clause(std::move(lits));
}

/// m clauses over n variables with widths in [lo, hi].
inline CnfFormula random_formula(std::mt19937_64& rng, Variable n, std::size_t m, std::size_t lo,
                                 std::size_t hi) {
  CnfFormula f{n};
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t w = lo + rng() % (hi - lo + 1);
    f.add_clause(random_clause(rng, n, std::min<std::size_t>(w, n)));
  }
  return f;
}

inline Clause lits(std::initializer_list<int> dimacs) {
  std::vector<Literal> out;
  for (int d : dimacs) out.push_back(Literal::from_dimacs(d));
  return require_clause(std::move(out));
}

}  // namespace ibdt::testing
