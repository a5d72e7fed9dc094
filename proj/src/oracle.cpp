#include "ibdt/oracle.hpp"

#include <stdexcept>
#include <string>

namespace ibdt {

const char* to_string(SatStatus status) { return status == SatStatus::Sat ? "Sat" : "Unsat"; }

bool satisfies(const CnfFormula& formula, const Assignment& model) {
  if (model.size() < static_cast<std::size_t>(formula.var_count()) + 1) return false;
  for (const Clause& c : formula.clauses()) {
    bool ok = false;
    for (Literal l : c) {
      if (model[l.var()] != l.negated()) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

OracleVerdict checked(OracleVerdict v, const CnfFormula& formula) {
  if (v.sat() && (!v.model || !satisfies(formula, *v.model)))
    throw std::logic_error("oracle produced a model that does not satisfy the formula");
  return v;
}

}  // namespace

OracleVerdict brute_force_sat(const CnfFormula& formula, Variable var_cap) {
  const Variable n = formula.var_count();
  if (n > var_cap || n >= 63)
    throw std::length_error("brute force limited to " + std::to_string(var_cap) +
                            " variables, formula has " + std::to_string(n));
  OracleVerdict verdict;
  for (const Clause& c : formula.clauses()) {
    if (c.empty()) return verdict;
  }

  // Binary counting where x1 is the most significant bit visits assignments in
  // lexicographic order with about two flips per increment. Each clause keeps
  // a count of true literals; `falsified` counts clauses with none.
  std::vector<std::vector<std::uint32_t>> watch(2 * (static_cast<std::size_t>(n) + 1));
  std::vector<std::uint32_t> true_count(formula.clause_count(), 0);
  std::uint64_t falsified = 0;
  for (std::uint32_t ci = 0; ci < formula.clause_count(); ++ci) {
    for (Literal l : formula.clauses()[ci]) {
      watch[l.code()].push_back(ci);
      if (l.negated()) ++true_count[ci];  // all variables start false
    }
    if (true_count[ci] == 0) ++falsified;
  }
  Assignment value(static_cast<std::size_t>(n) + 1, false);

  auto flip = [&](Variable v) {
    const bool now_true = !value[v];
    value[v] = now_true;
    Literal gained{v, !now_true};
    Literal lost{v, now_true};
    for (auto ci : watch[gained.code()]) {
      if (true_count[ci]++ == 0) --falsified;
    }
    for (auto ci : watch[lost.code()]) {
      if (--true_count[ci] == 0) ++falsified;
    }
  };

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0;; ++m) {
    ++verdict.stats.nodes;
    if (falsified == 0) {
      verdict.status = SatStatus::Sat;
      verdict.model = value;
      return checked(std::move(verdict), formula);
    }
    if (m + 1 == total) break;
    // Increment: trailing true variables (from x_n upward) become false, the
    // next one becomes true.
    Variable v = n;
    while (value[v]) {
      flip(v);
      --v;
    }
    flip(v);
  }
  return verdict;
}

namespace {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& formula)
      : formula_{formula},
        n_{formula.var_count()},
        value_(static_cast<std::size_t>(n_) + 1, kUnassigned),
        occurs_(2 * (static_cast<std::size_t>(n_) + 1)),
        true_count_(formula.clause_count(), 0),
        false_count_(formula.clause_count(), 0),
        live_occ_(2 * (static_cast<std::size_t>(n_) + 1), 0) {
    for (std::uint32_t ci = 0; ci < formula.clause_count(); ++ci) {
      for (Literal l : formula.clauses()[ci]) {
        occurs_[l.code()].push_back(ci);
        ++live_occ_[l.code()];
      }
      if (formula.clauses()[ci].size() == 1) queue_.push_back(ci);
    }
    unsatisfied_ = formula.clause_count();
  }

  OracleVerdict run() {
    OracleVerdict verdict;
    for (const Clause& c : formula_.clauses()) {
      if (c.empty()) return verdict;
    }
    bool sat = search();
    verdict.stats = stats_;
    if (sat) {
      verdict.status = SatStatus::Sat;
      Assignment model(static_cast<std::size_t>(n_) + 1, false);
      for (Variable v = 1; v <= n_; ++v) model[v] = value_[v] == kTrue;
      verdict.model = std::move(model);
    }
    return verdict;
  }

 private:
  static constexpr signed char kUnassigned = -1;
  static constexpr signed char kFalse = 0;
  static constexpr signed char kTrue = 1;

  // Makes `lit` true; returns false on conflict. The assignment is recorded on
  // the trail even when it conflicts so undo() stays symmetric.
  bool assign(Literal lit) {
    value_[lit.var()] = lit.negated() ? kFalse : kTrue;
    trail_.push_back(lit);
    ++stats_.propagations;
    bool ok = true;
    for (auto ci : occurs_[lit.code()]) {
      if (true_count_[ci]++ == 0) {
        --unsatisfied_;
        for (Literal l : formula_.clauses()[ci]) --live_occ_[l.code()];
      }
    }
    for (auto ci : occurs_[(~lit).code()]) {
      ++false_count_[ci];
      const Clause& c = formula_.clauses()[ci];
      if (true_count_[ci] == 0) {
        if (false_count_[ci] == c.size()) {
          ok = false;
        } else if (false_count_[ci] + 1 == c.size()) {
          queue_.push_back(ci);
        }
      }
    }
    return ok;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Literal lit = trail_.back();
      trail_.pop_back();
      for (auto ci : occurs_[(~lit).code()]) --false_count_[ci];
      for (auto ci : occurs_[lit.code()]) {
        if (--true_count_[ci] == 0) {
          ++unsatisfied_;
          for (Literal l : formula_.clauses()[ci]) ++live_occ_[l.code()];
        }
      }
      value_[lit.var()] = kUnassigned;
    }
  }

  // Unit propagation and pure-literal elimination to a fixpoint.
  bool simplify() {
    for (;;) {
      while (!queue_.empty()) {
        auto ci = queue_.back();
        queue_.pop_back();
        if (true_count_[ci] > 0) continue;
        std::optional<Literal> unit;
        for (Literal l : formula_.clauses()[ci]) {
          if (value_[l.var()] == kUnassigned) {
            unit = l;
            break;
          }
        }
        if (!unit) {
          queue_.clear();
          return false;
        }
        if (!assign(*unit)) {
          queue_.clear();
          return false;
        }
      }
      bool assigned_pure = false;
      for (Variable v = 1; v <= n_; ++v) {
        if (value_[v] != kUnassigned) continue;
        auto pos = live_occ_[Literal{v, false}.code()];
        auto neg = live_occ_[Literal{v, true}.code()];
        if ((pos == 0) == (neg == 0)) continue;
        assign(Literal{v, pos == 0});
        assigned_pure = true;
      }
      // Pure assignments only satisfy clauses, so they never queue units.
      if (!assigned_pure) return true;
    }
  }

  bool search() {
    ++stats_.nodes;
    if (!simplify()) return false;
    if (unsatisfied_ == 0) return true;
    Variable v = 1;
    while (v <= n_ && value_[v] != kUnassigned) ++v;
    if (v > n_) return false;
    for (bool negated : {false, true}) {
      std::size_t mark = trail_.size();
      if (assign(Literal{v, negated}) && search()) return true;
      queue_.clear();
      undo_to(mark);
    }
    return false;
  }

  const CnfFormula& formula_;
  Variable n_;
  std::vector<signed char> value_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::uint32_t> false_count_;
  std::vector<std::uint32_t> live_occ_;
  std::size_t unsatisfied_ = 0;
  std::vector<Literal> trail_;
  std::vector<std::uint32_t> queue_;
  OracleStats stats_;
};

}  // namespace

OracleVerdict dpll_sat(const CnfFormula& formula) {
  Dpll solver{formula};
  return checked(solver.run(), formula);
}

OracleVerdict decide(const CnfFormula& formula, const OracleConfig& config) {
  return config.kind == OracleKind::BruteForce ? brute_force_sat(formula, config.brute_force_cap)
                                               : dpll_sat(formula);
}

bool is_dominant(const CnfFormula& formula, Literal lit, const OracleConfig& config) {
  if (lit.var() == 0 || lit.var() > formula.var_count())
    throw std::invalid_argument("literal variable not in formula");
  if (!decide(formula, config).sat()) return false;
  std::vector<Clause> unit{require_clause({~lit})};
  return !decide(formula.with_clauses(unit), config).sat();
}

bool entails(const CnfFormula& formula, const Clause& clause, const OracleConfig& config) {
  if (clause.max_var() > formula.var_count())
    throw std::invalid_argument("clause variable not in formula");
  std::vector<Clause> units;
  for (Literal l : clause) units.push_back(require_clause({~l}));
  return !decide(formula.with_clauses(units), config).sat();
}

}  // namespace ibdt
