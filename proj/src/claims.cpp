#include "ibdt/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ibdt/bench.hpp"
#include "ibdt/oracle.hpp"
#include "ibdt/resolution.hpp"

namespace ibdt {

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

const OracleConfig kBrute{OracleKind::BruteForce, 30};
const OracleConfig kDpll{OracleKind::Dpll, kDefaultBruteForceCap};

// Check 1: unit chain: the unit clause on x1 appears with a chain of k - 1 resolved
// variables, and both oracles agree x1 is forced.
std::string check_unit_chain(const ClaimHooks& h) {
  for (std::uint32_t k = 2; k <= 8; ++k) {
    CnfFormula f = h.unit_chain(k);
    const Literal x1 = f.lit(Root{});
    auto r = saturate(f);
    auto id = r.find(require_clause({x1}));
    expect(id.has_value(), "k=" + str(k) + ": unit (x1) not derived");
    auto chain = decision_chain_of(r, *id);
    expect(chain.resolved.size() == k - 1,
           "k=" + str(k) + ": chain length " + str(chain.resolved.size()) + ", expected " + str(k - 1));
    expect(chain.is_generalized_unit(), "k=" + str(k) + ": chain is not a generalized unit");
    expect(is_dominant(f, x1, kBrute) && is_dominant(f, x1, kDpll),
           "k=" + str(k) + ": x1 not dominant per oracle");
  }
  return "k=2..8 chains of length k-1, x1 dominant";
}

// Check 2: pair chain: x1_1 dominant, and the first two steps of the chain derive
// (x1_1 v x2_1), (~x2_1 v x3_1) and then (x1_1 v x3_1) from them.
std::string check_pair_chain(const ClaimHooks& h) {
  for (std::uint32_t k = 2; k <= 6; ++k) {
    CnfFormula f = h.pair_chain(k);
    const Literal root = f.lit(Root{});
    expect(decide(f, kBrute).sat(), "k=" + str(k) + ": unsatisfiable");
    expect(is_dominant(f, root, kBrute) && is_dominant(f, root, kDpll),
           "k=" + str(k) + ": x1_1 not dominant");
    if (k < 3) continue;
    const Literal x21 = f.lit(ChainPair{2, 1});
    const Literal x22 = f.lit(ChainPair{2, 2});
    const Literal x31 = f.lit(ChainPair{3, 1});
    const Literal x32 = f.lit(ChainPair{3, 2});
    const Clause first = require_clause({root, x21});
    const Clause second = require_clause({~x21, x31});
    const Clause third = require_clause({root, x31});
    auto r = saturate(f, SaturateOptions{Budget{}, Schedule::Fifo, {first, second, third}});
    expect(r.status == SaturationStatus::TargetsDerived,
           "k=" + str(k) + ": saturation ended " + to_string(r.status));

    auto parents_are = [&](const Clause& c, const Clause& a, const Clause& b, Variable var) {
      auto id = r.find(c);
      if (!id) return false;
      const ResolutionStep* s = r.derivation(*id);
      if (!s || s->var != var) return false;
      const Clause& l = r.store[s->left];
      const Clause& rr = r.store[s->right];
      return (l == a && rr == b) || (l == b && rr == a);
    };
    expect(parents_are(first, require_clause({root, x21, x22}), require_clause({root, x21, ~x22}),
                       x22.var()),
           "k=" + str(k) + ": (x1_1 v x2_1) not derived from its node and switching clause");
    expect(parents_are(second, require_clause({~x21, x31, x32}), require_clause({~x21, x31, ~x32}),
                       x32.var()),
           "k=" + str(k) + ": (~x2_1 v x3_1) not derived from its node and switching clause");
    expect(parents_are(third, first, second, x21.var()),
           "k=" + str(k) + ": (x1_1 v x3_1) not derived from the two reduced clauses");
  }
  return "k=2..6 dominant and satisfiable; three-step derivation reproduced for k=3..6";
}

// Check 3: path counts: the walker against an additive Pascal triangle.
std::string check_paths(const ClaimHooks& h) {
  std::vector<BigInt> pascal{1};
  std::string k3;
  BigInt last_total;
  for (std::uint32_t k = 0; k <= 24; ++k) {
    if (k > 0) {
      std::vector<BigInt> next(pascal.size() + 1, 0);
      for (std::size_t i = 0; i < pascal.size(); ++i) {
        next[i] += pascal[i];
        next[i + 1] += pascal[i];
      }
      pascal = std::move(next);
    }
    TreeSpec spec;
    spec.k = k;
    PathReport rep = h.paths(spec);
    expect(rep.counts == pascal, "k=" + str(k) + ": counts " + path_line(rep));
    expect(rep.total == (BigInt{1} << k), "k=" + str(k) + ": total " + rep.total.str());
    expect(rep.reference == pascal, "k=" + str(k) + ": reference row differs");
    if (k == 3) {
      expect(path_line(rep) == "1 3 3 1 total 8", "k=3 row " + path_line(rep));
      k3 = path_line(rep);
    }
    last_total = rep.total;
  }
  return "k=0..24 rows match Pascal; k=3: " + k3 + "; k=24 total " + last_total.str();
}

// Check 4: depth formulas at exact triangular and geometric points.
std::string check_depths(const ClaimHooks&) {
  for (std::uint64_t k = 0; k <= 1000; ++k) {
    const std::uint64_t n = binomial_var_count(k);
    expect(n == (k + 1) * (k + 2) / 2, "binomial_var_count(" + str(k) + ")");
    expect(binomial_depth_for(n) == k, "binomial_depth_for(" + str(n) + ") != " + str(k));
    if (n > 1) expect(binomial_depth_for(n - 1) == k - 1, "binomial_depth_for(" + str(n - 1) + ")");
  }
  for (std::uint32_t k = 0; k <= 62; ++k) {
    const std::uint64_t n = (std::uint64_t{1} << (k + 1)) - 1;  // 1 + 2 + ... + 2^k
    expect(binary_depth_for(n) == k, "binary_depth_for(" + str(n) + ") != " + str(k));
    expect(binary_leaf_paths(n) == BigInt{(n + 1) / 2}, "2^k != (n+1)/2 at n=" + str(n));
  }
  for (std::uint32_t k = 1; k <= 10; ++k) {
    expect(build_binary_tree(k).var_count() == (1u << (k + 1)) - 1,
           "binary tree k=" + str(k) + " variable count");
  }
  return "binomial round trip k=0..1000; binary 2^k=(n+1)/2 for k=0..62";
}

// Check 5: two-tree composition verdicts.
std::string check_compose(const ClaimHooks& h) {
  std::ostringstream rows;
  for (std::uint32_t k = 2; k <= 8; ++k) {
    CnfFormula matched = h.compose(k, Closing::Matched);
    CnfFormula crossed = h.compose(k, Closing::Crossed);
    if (k <= 4) {
      expect(!decide(matched, kBrute).sat(), "k=" + str(k) + " matched: brute force says Sat");
      expect(decide(crossed, kBrute).sat(), "k=" + str(k) + " crossed: brute force says Unsat");
    }
    expect(!dpll_sat(matched).sat(), "k=" + str(k) + " matched: dpll says Sat");
    expect(dpll_sat(crossed).sat(), "k=" + str(k) + " crossed: dpll says Unsat");
    if (k <= 4) {
      SaturateOptions opt;
      opt.schedule = Schedule::ShortestFirst;
      auto r = saturate(matched, opt);
      expect(r.status == SaturationStatus::EmptyDerived,
             "k=" + str(k) + " matched: saturation ended " + to_string(r.status));
      auto id = r.find(Clause{});
      expect(id && decision_chain_of(r, *id).is_generalized_empty(),
             "k=" + str(k) + " matched: empty clause chain not empty");
      rows << " k=" << k << " empty after " << r.counters.steps << " steps;";
    }
  }
  return "matched Unsat / crossed Sat for k=2..8 (brute force k<=4);" + rows.str() +
         " schedule shortest-first";
}

// Check 6: leaf substitution at k = 3.
std::string check_substitution(const ClaimHooks& h) {
  TreeSpec spec;
  spec.k = 3;
  spec.closure = AliasClosure{1};
  CnfFormula alias = h.binomial_tree(spec);
  const Literal root = alias.lit(Root{});
  expect(is_dominant(alias, root, kBrute), "alias closure: root not dominant");
  spec.closure = NoClosure{};
  CnfFormula open = h.binomial_tree(spec);
  expect(!is_dominant(open, open.lit(Root{}), kBrute), "no closure: root still dominant");
  expect(decide(open, kBrute).sat(), "no closure: unsatisfiable");
  int pairs = 0;
  for (std::uint32_t a = 1; a <= 4; ++a) {
    for (std::uint32_t b = 1; b <= 4; ++b) {
      if (a == b) continue;
      TreeSpec sub = spec;
      sub.substitutions = {{TreeSlot{0, 4, a}, NamedLiteral{Fresh{1}, false}},
                           {TreeSlot{0, 4, b}, NamedLiteral{Fresh{1}, true}}};
      CnfFormula f = h.binomial_tree(sub);
      expect(is_dominant(f, f.lit(Root{}), kBrute) && is_dominant(f, f.lit(Root{}), kDpll),
             "z at row " + str(a) + ", ~z at row " + str(b) + ": root not dominant");
      ++pairs;
    }
  }
  return "alias dominant, none not dominant, z/~z dominant for all " + str(pairs) + " row pairs";
}

// Check 7: redundancy clauses are entailed and keep the verdict.
std::string check_redundancy(const ClaimHooks& h) {
  std::size_t total = 0;
  std::size_t short_nodes = 0;
  for (std::uint32_t k = 3; k <= 4; ++k) {
    for (Closure closure : {Closure{AliasClosure{1}}, Closure{NoClosure{}}}) {
      TreeSpec spec;
      spec.k = k;
      spec.closure = closure;
      CnfFormula f = h.binomial_tree(spec);
      const bool sat = decide(f, kBrute).sat();
      const bool dom = is_dominant(f, f.lit(Root{}), kBrute);
      std::vector<Clause> all;
      for (std::uint32_t level = 1; level + 1 <= k; ++level) {
        for (std::uint32_t row = 1; row <= level; ++row) {
          auto extra = h.redundancy(f, NodePos{level, row, 0}, 20, 1000 * level + row);
          expect(!extra.empty(), "k=" + str(k) + " node " + str(level) + ":" + str(row) + " got none");
          if (extra.size() < 20) ++short_nodes;
          for (const Clause& c : extra) {
            expect(entails(f, c, kBrute), "k=" + str(k) + ": " + to_string(c) + " not entailed");
            all.push_back(c);
          }
        }
      }
      CnfFormula g = f.with_clauses(all);
      expect(decide(g, kBrute).sat() == sat && decide(g, kDpll).sat() == sat,
             "k=" + str(k) + ": verdict changed");
      expect(is_dominant(g, g.lit(Root{}), kBrute) == dom, "k=" + str(k) + ": dominance changed");
      total += all.size();
    }
  }
  return str(total) + " clauses entailed, verdicts unchanged (" + str(short_nodes) +
         " nodes had fewer than 20 candidates)";
}

// Check 8: implicit decision clause at k = 4, node (2,1), alias via slot (5,2).
std::string check_implicit(const ClaimHooks& h) {
  TreeSpec spec;
  spec.k = 4;
  spec.closure = AliasClosure{1};
  CnfFormula base = h.binomial_tree(spec);
  const NodePos node{2, 1, 0};
  CnfFormula implicit = make_implicit(base, node, TreeSlot{0, 5, 2});
  CnfFormula bare = remove_switching_clauses(base, node);
  const Literal x21 = implicit.lit(TreeSlot{0, 2, 1});
  const Literal x31 = implicit.lit(TreeSlot{0, 3, 1});
  const Clause target = require_clause({~x21, x31});
  expect(!implicit.contains(target), "target present before saturation");
  auto r = saturate(implicit, SaturateOptions{Budget{}, Schedule::Fifo, {target}});
  expect(r.status == SaturationStatus::TargetsDerived,
         "(~x2_1 v x3_1) not derived: " + std::string{to_string(r.status)});
  std::set<Clause> used;
  for (ClauseId id : ancestry_of(r, *r.find(target))) {
    if (r.is_original(id)) used.insert(r.store[id]);
  }
  auto slot = [&](std::uint32_t b, std::uint32_t row) { return implicit.lit(TreeSlot{0, b, row}); };
  // Node (2,1) without its switching clauses, node (3,2), and node (4,2) whose
  // slot (5,2) now reads x3_1.
  const std::set<Clause> want{
      require_clause({~x21, x31, slot(3, 2)}),
      require_clause({~slot(3, 2), slot(4, 2), slot(4, 3)}),
      require_clause({~slot(3, 2), slot(4, 2), ~slot(4, 3)}),
      require_clause({~slot(4, 2), x31, slot(5, 3)}),
      require_clause({~slot(4, 2), x31, ~slot(5, 3)}),
  };
  expect(used == want, "derivation did not run through nodes (2,1), (3,2), (4,2)");
  expect(is_dominant(implicit, implicit.lit(Root{}), kBrute), "with alias: root not dominant");
  expect(!is_dominant(bare, bare.lit(Root{}), kBrute), "without alias: root still dominant");
  return "(~x2_1 v x3_1) derived through nodes (2,1), (3,2), (4,2); dominance lost without alias";
}

// Check 9: m^k against repeated multiplication.
std::string check_combinations(const ClaimHooks&) {
  for (std::uint64_t m = 2; m <= 5; ++m) {
    BigInt acc = 1;
    for (std::uint32_t k = 1; k <= 30; ++k) {
      acc *= m;
      expect(candidate_combinations(m, k) == acc, "m=" + str(m) + " k=" + str(k));
    }
  }
  return "m=2..5, k=1..30 exact; 5^30 = " + candidate_combinations(5, 30).str();
}

Clause random_clause(std::mt19937_64& rng, Variable n, std::size_t width) {
  std::vector<Literal> lits;
  while (lits.size() < width) {
    Variable v = 1 + static_cast<Variable>(rng() % n);
    if (std::none_of(lits.begin(), lits.end(), [&](Literal l) { return l.var() == v; }))
      lits.emplace_back(v, (rng() & 1) != 0);
  }
  return require_clause(std::move(lits));
}

CnfFormula random_3cnf(std::mt19937_64& rng, Variable n, std::size_t m) {
  CnfFormula f{n};
  for (std::size_t i = 0; i < m; ++i) f.add_clause(random_clause(rng, n, std::min<Variable>(3, n)));
  return f;
}

// Check 10: soundness, refutation completeness and oracle agreement on random input.
std::string check_engine(const ClaimHooks&) {
  std::mt19937_64 rng{20240601};
  for (int trial = 0; trial < 1000; ++trial) {
    const Variable n = 20;
    const Variable v = 1 + static_cast<Variable>(rng() % n);
    auto side = [&](bool negated) {
      std::vector<Literal> lits{Literal{v, negated}};
      const std::size_t extra = rng() % 5;
      while (lits.size() < extra + 1) {
        Variable u = 1 + static_cast<Variable>(rng() % n);
        if (std::none_of(lits.begin(), lits.end(), [&](Literal l) { return l.var() == u; }))
          lits.emplace_back(u, (rng() & 1) != 0);
      }
      return require_clause(std::move(lits));
    };
    const Clause a = side(false);
    const Clause b = side(true);
    std::vector<Variable> vars;
    for (Literal l : a) vars.push_back(l.var());
    for (Literal l : b) vars.push_back(l.var());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    auto made = resolve(a, b, v);
    const Clause* res = std::get_if<Clause>(&made);
    auto holds = [](const Clause& c, const std::vector<bool>& val) {
      for (Literal l : c)
        if (val[l.var()] != l.negated()) return true;
      return false;
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
      std::vector<bool> val(n + 1, false);
      for (std::size_t i = 0; i < vars.size(); ++i) val[vars[i]] = (mask >> i) & 1;
      if (holds(a, val) && holds(b, val))
        expect(!res || holds(*res, val), "resolvent of " + to_string(a) + " and " + to_string(b) + " unsound");
    }
    if (!res) {
      bool clash = false;
      for (Literal l : a)
        if (l.var() != v && b.contains(~l)) clash = true;
      expect(clash, "tautology reported without a clashing pair");
    }
  }

  int refuted = 0;
  while (refuted < 200) {
    const Variable n = 6 + static_cast<Variable>(rng() % 7);
    CnfFormula f = random_3cnf(rng, n, 6 * n);
    if (dpll_sat(f).sat()) continue;
    expect(!brute_force_sat(f).sat(), "brute force disagrees on an unsat instance");
    SaturateOptions opt;
    opt.schedule = Schedule::ShortestFirst;
    auto r = saturate(f, opt);
    expect(r.status == SaturationStatus::EmptyDerived,
           "unsat 3-CNF with " + str(n) + " vars not refuted: " + to_string(r.status));
    ++refuted;
  }

  int sat = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Variable n = 3 + static_cast<Variable>(rng() % 14);
    const std::size_t m = static_cast<std::size_t>(std::lround(n * (3.0 + (rng() % 300) / 100.0)));
    CnfFormula f = random_3cnf(rng, n, m);
    auto bf = brute_force_sat(f);
    auto dp = dpll_sat(f);
    expect(bf.sat() == dp.sat(), "oracles disagree on trial " + str(trial));
    sat += bf.sat();
  }
  return "1000 resolvents sound; 200 unsat 3-CNFs refuted (shortest-first); 1000 oracle agreements (" +
         str(sat) + " sat)";
}

// Check 11: a bench sweep completes and is well formed.
std::string check_bench(const ClaimHooks&) {
  BenchConfig config;
  config.families = {BenchFamily::BinomialAlias};
  config.k_min = 2;
  config.k_max = 12;
  config.repetitions = 3;
  config.budget.max_clauses = 200'000;
  config.budget.max_steps = 2'000'000;
  auto report = run_sweep(config);
  expect(report.records.size() == 33, "expected 33 records, got " + str(report.records.size()));
  std::ostringstream csv;
  write_csv(csv, report.records);
  std::istringstream back{csv.str()};
  auto parsed = read_csv(back);
  expect(parsed.size() == report.records.size(), "CSV round trip lost rows");
  for (std::size_t i = 0; i < parsed.size(); ++i)
    expect(parsed[i].same_outcome(report.records[i]), "CSV round trip changed row " + str(i));
  std::uint64_t prev_vars = 0, prev_clauses = 0;
  for (const auto& r : report.records) {
    expect(r.error.empty(), "k=" + str(r.k) + " failed: " + r.error);
    expect(r.dpll_verdict == "Sat", "k=" + str(r.k) + " dpll " + r.dpll_verdict);
    expect(r.derived <= config.budget.max_clauses, "derived count above budget");
    expect(r.sat_seconds >= 0 && r.dpll_seconds >= 0, "negative time");
    if (r.repetition != 0) continue;
    expect(r.vars > prev_vars && r.clauses > prev_clauses, "sizes not increasing at k=" + str(r.k));
    prev_vars = r.vars;
    prev_clauses = r.clauses;
  }
  auto unstable = unstable_outcomes(report.records);
  expect(unstable.empty(), unstable.empty() ? "" : unstable.front());
  std::ostringstream out;
  for (const auto& f : report.fits) {
    expect(f.valid() && std::isfinite(f.exponent) && std::isfinite(f.residual),
           "no fit for " + f.metric);
    out << ' ' << f.metric << " exponent " << std::fixed << std::setprecision(2) << f.exponent
        << " residual " << f.residual;
  }
  return "33 rows, sizes increasing, repetitions stable;" + out.str();
}

struct ClaimSpec {
  const char* title;
  const char* anchor;
  double limit;
  std::string (*run)(const ClaimHooks&);
};

const ClaimSpec kClaims[kClaimCount] = {
    {"unit chain derives (x1) in k-1 steps, x1 dominant", "unit-chain", 1.0, check_unit_chain},
    {"pair chain is equivalent to x1_1", "pair-chain", 10.0, check_pair_chain},
    {"binomial leaf path counts", "path-counts", 30.0, check_paths},
    {"depth formulas", "depth-formulas", 5.0, check_depths},
    {"two-tree composition verdicts", "two-tree", 60.0, check_compose},
    {"leaf substitution and dominance", "leaf-substitution", 10.0, check_substitution},
    {"redundancy clauses are entailed", "redundancy", 60.0, check_redundancy},
    {"implicit decision clause", "implicit-node", 30.0, check_implicit},
    {"candidate combination counts", "combinations", 5.0, check_combinations},
    {"engine soundness, completeness, oracle agreement", "engine", 60.0, check_engine},
    {"bench sweep report", "bench", 300.0, check_bench},
};

}  // namespace

ClaimResult run_claim(int id, const ClaimHooks& hooks) {
  if (id < 1 || id > kClaimCount) throw std::out_of_range("no check " + std::to_string(id));
  const ClaimSpec& spec = kClaims[id - 1];
  ClaimResult result;
  result.id = id;
  result.title = spec.title;
  result.anchor = spec.anchor;
  result.limit_seconds = spec.limit;
  auto start = std::chrono::steady_clock::now();
  try {
    result.detail = spec.run(hooks);
    result.passed = true;
  } catch (const std::exception& e) {
    result.detail = e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.passed && result.seconds > result.limit_seconds) {
    result.passed = false;
    result.detail += "; exceeded time limit";
  }
  return result;
}

std::vector<ClaimResult> run_claims(const ClaimHooks& hooks) {
  std::vector<ClaimResult> out;
  for (int id = 1; id <= kClaimCount; ++id) out.push_back(run_claim(id, hooks));
  return out;
}

void write_claims_report(std::ostream& out, const std::vector<ClaimResult>& results) {
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << std::setw(2) << r.id << ' ' << r.anchor << " ("
        << std::fixed << std::setprecision(3) << r.seconds << "s / " << std::setprecision(0)
        << r.limit_seconds << "s): " << r.title << ": " << r.detail << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

}  // namespace ibdt
