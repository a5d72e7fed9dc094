#include "ibdt/resolution.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "clause_access.hpp"

namespace ibdt {

ClauseOrTautology resolve(const Clause& c1, const Clause& c2, Variable var) {
  auto l1 = c1.find_var(var);
  auto l2 = c2.find_var(var);
  if (!l1 || !l2 || l1->negated() == l2->negated()) {
    throw std::invalid_argument("variable " + std::to_string(var) +
                                " does not clash between the parents");
  }
  auto a = c1.literals();
  auto b = c2.literals();
  std::vector<Literal> out;
  out.reserve(a.size() + b.size() - 2);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && a[i].var() == var) {
      ++i;
      continue;
    }
    if (j < b.size() && b[j].var() == var) {
      ++j;
      continue;
    }
    if (j == b.size() || (i < a.size() && a[i].var() < b[j].var())) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].var() < a[i].var()) {
      out.push_back(b[j++]);
    } else {
      if (a[i] != b[j]) return Tautology{a[i].var()};
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return ClauseAccess::from_sorted(std::move(out));
}

namespace {

template <class T>
void env_override(const char* name, T& field) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (!std::isdigit(static_cast<unsigned char>(raw[0])) || *end != '\0' || errno == ERANGE || v == 0)
    throw std::invalid_argument(std::string{name} + " must be a positive integer");
  field = static_cast<T>(v);
}

}  // namespace

Budget Budget::from_environment() {
  Budget b;
  env_override("IBDT_MAX_CLAUSES", b.max_clauses);
  env_override("IBDT_MAX_STEPS", b.max_steps);
  std::size_t width = 0;
  env_override("IBDT_MAX_WIDTH", width);
  if (width > 0) b.max_width = width;
  return b;
}

const char* to_string(SaturationStatus status) {
  switch (status) {
    case SaturationStatus::EmptyDerived: return "EmptyDerived";
    case SaturationStatus::Saturated: return "Saturated";
    case SaturationStatus::BudgetExhausted: return "BudgetExhausted";
    case SaturationStatus::TargetsDerived: return "TargetsDerived";
  }
  return "?";
}

const char* to_string(DominanceVerdict verdict) {
  switch (verdict) {
    case DominanceVerdict::Dominant: return "Dominant";
    case DominanceVerdict::NotShown: return "NotShown";
    case DominanceVerdict::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

std::optional<ClauseId> SaturationResult::find(const Clause& clause) const {
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store[i] == clause) return static_cast<ClauseId>(i);
  }
  return std::nullopt;
}

const ResolutionStep* SaturationResult::derivation(ClauseId id) const {
  if (id < original_count || id >= store.size()) return nullptr;
  return &trace[id - original_count];
}

namespace {

// Hash set of store indices, so each clause is held once.
struct StoreHash {
  const std::vector<Clause>* store;
  std::size_t operator()(ClauseId id) const { return (*store)[id].hash(); }
};
struct StoreEq {
  const std::vector<Clause>* store;
  bool operator()(ClauseId a, ClauseId b) const { return (*store)[a] == (*store)[b]; }
};

}  // namespace

SaturationResult saturate(const CnfFormula& formula, const SaturateOptions& options) {
  const Budget& budget = options.budget;
  if (budget.max_clauses == 0 || budget.max_steps == 0 ||
      (budget.max_width && *budget.max_width == 0))
    throw std::invalid_argument("saturation budgets must be positive");
  const std::size_t width_cap = budget.max_width.value_or(formula.var_count());

  SaturationResult result;
  auto& store = result.store;
  store.assign(formula.clauses().begin(), formula.clauses().end());
  result.original_count = store.size();

  std::unordered_set<ClauseId, StoreHash, StoreEq> known(store.size() * 2 + 16,
                                                         StoreHash{&store}, StoreEq{&store});
  for (ClauseId i = 0; i < store.size(); ++i) known.insert(i);

  std::size_t targets_missing = 0;
  std::vector<Clause> targets;
  for (const Clause& t : options.targets) {
    if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
  }
  std::vector<char> target_found(targets.size(), 0);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    target_found[t] = formula.contains(targets[t]);
    if (!target_found[t]) ++targets_missing;
  }

  for (const Clause& c : store) {
    if (c.empty()) {
      result.status = SaturationStatus::EmptyDerived;
      return result;
    }
  }
  if (!targets.empty() && targets_missing == 0) {
    result.status = SaturationStatus::TargetsDerived;
    return result;
  }

  // occurrences[code] lists processed clauses containing that literal.
  std::vector<std::vector<ClauseId>> occurrences(2 * (static_cast<std::size_t>(formula.var_count()) + 1));
  std::vector<std::pair<ClauseId, Variable>> partners;
  auto& counters = result.counters;

  // Unprocessed clauses wait in id order (FIFO) or by (width, id).
  using Pending = std::pair<std::size_t, ClauseId>;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> by_width;
  ClauseId fifo_next = 0;
  const bool fifo = options.schedule == Schedule::Fifo;
  if (!fifo) {
    for (ClauseId i = 0; i < store.size(); ++i) by_width.emplace(store[i].size(), i);
  }

  for (;;) {
    ClauseId given;
    if (fifo) {
      if (fifo_next >= store.size()) break;
      given = fifo_next++;
    } else {
      if (by_width.empty()) break;
      given = by_width.top().second;
      by_width.pop();
    }
    partners.clear();
    for (Literal l : store[given]) {
      for (ClauseId p : occurrences[(~l).code()]) partners.emplace_back(p, l.var());
    }
    std::sort(partners.begin(), partners.end());

    for (auto [partner, var] : partners) {
      if (counters.steps >= budget.max_steps) {
        result.status = SaturationStatus::BudgetExhausted;
        return result;
      }
      ++counters.steps;
      auto made = resolve(store[partner], store[given], var);
      auto* clause = std::get_if<Clause>(&made);
      if (!clause) {
        ++counters.tautologies;
        continue;
      }
      if (clause->size() > width_cap) {
        ++counters.width_discarded;
        continue;
      }
      store.push_back(std::move(*clause));
      auto id = static_cast<ClauseId>(store.size() - 1);
      if (!known.insert(id).second) {
        store.pop_back();
        ++counters.duplicates;
        continue;
      }
      if (store.size() > budget.max_clauses) {
        known.erase(id);
        store.pop_back();
        result.status = SaturationStatus::BudgetExhausted;
        return result;
      }
      ++counters.added;
      if (!fifo) by_width.emplace(store[id].size(), id);
      result.trace.push_back(ResolutionStep{partner, given, var, id});
      if (store.back().empty()) {
        result.status = SaturationStatus::EmptyDerived;
        return result;
      }
      if (targets_missing > 0) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (!target_found[t] && targets[t] == store.back()) {
            target_found[t] = 1;
            if (--targets_missing == 0) {
              result.status = SaturationStatus::TargetsDerived;
              return result;
            }
          }
        }
      }
    }
    for (Literal l : store[given]) occurrences[l.code()].push_back(given);
  }
  result.status = counters.width_discarded > 0 ? SaturationStatus::BudgetExhausted
                                               : SaturationStatus::Saturated;
  return result;
}

std::vector<Clause> replay(const CnfFormula& formula, std::span<const ResolutionStep> trace) {
  std::vector<Clause> store(formula.clauses().begin(), formula.clauses().end());
  for (const ResolutionStep& step : trace) {
    if (step.left >= store.size() || step.right >= store.size() || step.result != store.size())
      throw std::runtime_error("trace step references ids out of order");
    auto made = resolve(store[step.left], store[step.right], step.var);
    auto* clause = std::get_if<Clause>(&made);
    if (!clause) throw std::runtime_error("trace step yields a tautology");
    store.push_back(std::move(*clause));
  }
  return store;
}

namespace {

// Post-order walk over the recorded derivation, left parent first; each
// clause is visited once.
template <class Visit>
void walk_derivation(const SaturationResult& result, ClauseId root, Visit&& visit) {
  std::vector<char> seen(result.store.size(), 0);
  struct Frame {
    ClauseId id;
    int stage;
  };
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const ResolutionStep* step = result.derivation(f.id);
    if (!step || f.stage == 2) {
      ClauseId id = f.id;
      stack.pop_back();
      if (!seen[id]) {
        seen[id] = 1;
        visit(id, step);
      }
      continue;
    }
    ClauseId next = f.stage == 0 ? step->left : step->right;
    ++f.stage;
    if (!seen[next]) stack.push_back({next, 0});
  }
}

}  // namespace

DecisionChain decision_chain_of(const SaturationResult& result, ClauseId id) {
  if (id >= result.store.size()) throw std::out_of_range("unknown clause id " + std::to_string(id));
  DecisionChain chain;
  walk_derivation(result, id, [&](ClauseId, const ResolutionStep* step) {
    if (step) chain.resolved.push_back(step->var);
  });
  for (Literal l : result.store[id]) chain.connected.push_back(l.var());
  return chain;
}

std::vector<ClauseId> ancestry_of(const SaturationResult& result, ClauseId id) {
  if (id >= result.store.size()) throw std::out_of_range("unknown clause id " + std::to_string(id));
  std::vector<ClauseId> out;
  walk_derivation(result, id, [&](ClauseId c, const ResolutionStep*) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

DominanceVerdict is_dominant_by_resolution(const CnfFormula& formula, Literal lit,
                                           const Budget& budget, Schedule schedule) {
  if (lit.var() == 0 || lit.var() > formula.var_count())
    throw std::invalid_argument("literal variable not in formula");
  SaturateOptions options{budget, schedule, {require_clause({lit})}};
  auto result = saturate(formula, options);
  switch (result.status) {
    case SaturationStatus::TargetsDerived: return DominanceVerdict::Dominant;
    case SaturationStatus::BudgetExhausted: return DominanceVerdict::BudgetExhausted;
    default: return DominanceVerdict::NotShown;
  }
}

void write_trace(std::ostream& out, const SaturationResult& result) {
  for (const ResolutionStep& s : result.trace) {
    out << s.left << ' ' << s.right << ' ' << s.var << " -> " << s.result << " :";
    for (Literal l : result.store[s.result]) out << ' ' << l.to_dimacs();
    out << '\n';
  }
}

namespace {

std::string literal_label(Literal l, const Atlas* atlas) {
  if (atlas) {
    if (const VarName* n = atlas->name_of(l.var()))
      return (l.negated() ? "~" : "") + display_name(*n);
  }
  return std::to_string(l.to_dimacs());
}

}  // namespace

void write_chain_dot(std::ostream& out, const SaturationResult& result, ClauseId id,
                     const Atlas* atlas) {
  if (id >= result.store.size()) throw std::out_of_range("unknown clause id " + std::to_string(id));
  out << "digraph decision_chain {\n  rankdir=TB;\n";
  walk_derivation(result, id, [&](ClauseId c, const ResolutionStep* step) {
    std::string label;
    for (Literal l : result.store[c]) {
      if (!label.empty()) label += " v ";
      label += literal_label(l, atlas);
    }
    if (label.empty()) label = "[]";
    out << "  c" << c << " [label=\"" << c << ": " << label << "\""
        << (step ? "" : ", shape=box") << "];\n";
    if (step) {
      std::string var_label = std::to_string(step->var);
      if (atlas) {
        if (const VarName* n = atlas->name_of(step->var)) var_label = display_name(*n);
      }
      out << "  c" << step->left << " -> c" << c << " [label=\"" << var_label << "\"];\n";
      out << "  c" << step->right << " -> c" << c << " [label=\"" << var_label << "\"];\n";
    }
  });
  out << "}\n";
}

}  // namespace ibdt
