#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ibdt/bench.hpp"
#include "ibdt/claims.hpp"
#include "ibdt/combinatorics.hpp"
#include "ibdt/dimacs.hpp"
#include "ibdt/forge.hpp"
#include "ibdt/oracle.hpp"
#include "ibdt/resolution.hpp"

namespace ibdt::cli {

namespace {

namespace fs = std::filesystem;

/// Bad flags or parameters; exits with kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  // instance selection
  std::string input;
  std::string family;
  std::uint32_t k = 0;
  std::uint32_t k_sub = 1;
  std::string closure = "none";
  std::string closing = "matched";
  std::vector<std::string> substitutions;
  std::vector<std::string> implicit;
  std::uint32_t redundancy = 0;
  std::uint64_t seed = 0;
  bool root_negated = false;

  // budgets
  std::size_t max_clauses = 0;
  std::uint64_t max_steps = 0;
  std::size_t max_width = 0;
  std::string schedule = "fifo";

  std::string output;
  int verbosity = 0;
};

const char* const kEnvHelp =
    "Environment:\n"
    "  IBDT_MAX_CLAUSES  default saturation clause budget (1000000)\n"
    "  IBDT_MAX_STEPS    default saturation step budget (10000000)\n"
    "  IBDT_MAX_WIDTH    default resolvent width cap (variable count)\n"
    "Flags override the environment.\n"
    "Exit codes: 0 ok, 1 failure, 2 usage error, 10 satisfiable, 20 unsatisfiable.";

void add_instance_options(CLI::App* sub, CliConfig& c, bool with_input) {
  if (with_input) {
    sub->add_option("-i,--input", c.input, "DIMACS file to read instead of generating one")
        ->check(CLI::ExistingFile);
  }
  sub->add_option("--family", c.family, "unit-chain, pair-chain, binary, binomial, compose or multi")
      ->check(CLI::IsMember({"unit-chain", "pair-chain", "binary", "binomial", "compose", "multi"}));
  sub->add_option("--k", c.k, "depth in selection steps");
  sub->add_option("--k-sub", c.k_sub, "subtree depth (multi)");
  sub->add_option("--closure", c.closure, "none, alias:ROW or clause:ROW");
  sub->add_option("--closing", c.closing, "matched or crossed (compose)")
      ->check(CLI::IsMember({"matched", "crossed"}));
  sub->add_option("--subst", c.substitutions, "leaf substitution B:R=root|-root|zN|-zN (repeatable)");
  sub->add_option("--implicit", c.implicit, "implicit node L:R@B:R (repeatable)");
  sub->add_option("--redundancy", c.redundancy, "redundancy clauses per node");
  sub->add_option("--seed", c.seed, "redundancy seed");
  sub->add_flag("--root-negated", c.root_negated, "use ~x1_1 as the root literal");
}

void add_budget_options(CLI::App* sub, CliConfig& c) {
  sub->add_option("--max-clauses", c.max_clauses, "saturation clause budget")->check(CLI::PositiveNumber);
  sub->add_option("--max-steps", c.max_steps, "saturation step budget")->check(CLI::PositiveNumber);
  sub->add_option("--max-width", c.max_width, "resolvent width cap")->check(CLI::PositiveNumber);
  sub->add_option("--schedule", c.schedule, "fifo or shortest")
      ->check(CLI::IsMember({"fifo", "shortest"}));
}

Budget budget_of(const CliConfig& c) {
  Budget b;
  try {
    b = Budget::from_environment();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.max_clauses) b.max_clauses = c.max_clauses;
  if (c.max_steps) b.max_steps = c.max_steps;
  if (c.max_width) b.max_width = c.max_width;
  return b;
}

Schedule schedule_of(const CliConfig& c) {
  return c.schedule == "shortest" ? Schedule::ShortestFirst : Schedule::Fifo;
}

std::uint32_t parse_u32(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || v > 0xffffffffUL) throw UsageError("bad " + what + ": " + s);
  return static_cast<std::uint32_t>(v);
}

/// "L:R@B:R"
ImplicitNode parse_implicit(const std::string& text) {
  auto at = text.find('@');
  auto c1 = text.find(':');
  auto c2 = text.find(':', at == std::string::npos ? 0 : at);
  if (at == std::string::npos || c1 == std::string::npos || c1 > at || c2 == std::string::npos)
    throw UsageError("bad --implicit value " + text + " (want L:R@B:R)");
  ImplicitNode n;
  n.node.level = parse_u32(text.substr(0, c1), "implicit level");
  n.node.row = parse_u32(text.substr(c1 + 1, at - c1 - 1), "implicit row");
  n.via.boundary = parse_u32(text.substr(at + 1, c2 - at - 1), "implicit boundary");
  n.via.row = parse_u32(text.substr(c2 + 1), "implicit row");
  return n;
}

Closure closure_of(const CliConfig& c) {
  auto closure = parse_closure(c.closure);
  if (!closure) throw UsageError("bad --closure value " + c.closure);
  return *closure;
}

CnfFormula generate(const CliConfig& c) {
  if (c.family.empty()) throw UsageError("--family is required");
  if (c.k == 0) throw UsageError("--k is required and must be positive");
  try {
    if (c.family == "compose")
      return compose_two_trees(c.k, c.closing == "crossed" ? Closing::Crossed : Closing::Matched);
    TreeSpec spec;
    spec.k = c.k;
    spec.sub_k = c.k_sub;
    spec.closure = closure_of(c);
    spec.root_negated = c.root_negated;
    spec.redundancy = Redundancy{c.redundancy, c.seed};
    for (const auto& s : c.substitutions) {
      auto sub = parse_substitution(s);
      if (!sub) throw UsageError("bad --subst value " + s);
      spec.substitutions.push_back(*sub);
    }
    for (const auto& s : c.implicit) spec.implicit_nodes.push_back(parse_implicit(s));
    const bool tree_only = !spec.substitutions.empty() || !spec.implicit_nodes.empty() ||
                           spec.redundancy.count > 0 || spec.root_negated;
    if (c.family == "unit-chain") {
      spec.variant = Variant::UnitChain;
    } else if (c.family == "pair-chain") {
      spec.variant = Variant::PairChain;
    } else if (c.family == "binary") {
      spec.variant = Variant::BinaryTree;
    } else if (c.family == "multi") {
      spec.variant = Variant::MultiBranching;
    }
    if (spec.variant != Variant::BinomialTree && tree_only)
      throw UsageError("--subst, --implicit, --redundancy and --root-negated need --family binomial");
    return build_instance(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CnfFormula load(const CliConfig& c) {
  if (!c.input.empty()) {
    if (!c.family.empty()) throw UsageError("--input and --family are exclusive");
    return parse_dimacs(read_file(c.input));
  }
  return generate(c);
}

void check_output_path(const std::string& path) {
  if (path.empty() || path == "-") return;
  fs::path p{path};
  fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path{"."};
  if (!fs::is_directory(dir)) throw UsageError("output directory does not exist: " + dir.string());
  if (fs::is_directory(p)) throw UsageError("output path is a directory: " + path);
}

/// Writes to a sibling temporary file and renames it, so a failed run never
/// leaves a partial file behind.
void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  fs::path tmp = path + ".tmp";
  {
    std::ofstream f{tmp, std::ios::binary};
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.close();
    if (!f) {
      fs::remove(tmp);
      throw std::runtime_error("write to " + path + " failed");
    }
  }
  fs::rename(tmp, path);
}

std::string literals_text(const Clause& c) {
  std::string s;
  for (Literal l : c) s += (s.empty() ? "" : " ") + std::to_string(l.to_dimacs());
  return s.empty() ? "[]" : s;
}

int cmd_generate(const CliConfig& c, std::ostream& out) {
  check_output_path(c.output);
  CnfFormula f = generate(c);
  write_output(c.output, write_dimacs(f), out);
  return kExitOk;
}

int cmd_solve(const CliConfig& c, const std::string& oracle, Variable cap, std::ostream& out) {
  CnfFormula f = load(c);
  OracleConfig config{oracle == "brute" ? OracleKind::BruteForce : OracleKind::Dpll, cap};
  OracleVerdict v;
  try {
    v = decide(f, config);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  out << "c oracle " << oracle << " nodes " << v.stats.nodes << " propagations "
      << v.stats.propagations << '\n';
  if (!v.sat()) {
    out << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  out << "s SATISFIABLE\nv";
  for (Variable i = 1; i <= f.var_count(); ++i) out << ' ' << ((*v.model)[i] ? "" : "-") << i;
  out << " 0\n";
  return kExitSat;
}

struct SaturateFlags {
  std::string trace;
  std::string dot;
  std::string dot_clause;
  std::vector<std::string> targets;
};

Clause clause_from_text(const std::string& text, Variable n) {
  std::istringstream in{text};
  std::vector<Literal> lits;
  int v = 0;
  while (in >> v) {
    if (v == 0) break;
    Literal l = Literal::from_dimacs(v);
    if (l.var() > n) throw UsageError("clause literal " + std::to_string(v) + " above variable count");
    lits.push_back(l);
  }
  if (!in.eof() && v != 0) throw UsageError("bad clause text: " + text);
  auto made = make_clause(std::move(lits));
  if (is_tautology(made)) throw UsageError("clause is a tautology: " + text);
  return std::get<Clause>(made);
}

int cmd_saturate(const CliConfig& c, const SaturateFlags& s, std::ostream& out) {
  check_output_path(s.trace);
  check_output_path(s.dot);
  CnfFormula f = load(c);
  SaturateOptions options;
  options.budget = budget_of(c);
  options.schedule = schedule_of(c);
  for (const auto& t : s.targets) options.targets.push_back(clause_from_text(t, f.var_count()));
  std::optional<Clause> dot_target;
  if (!s.dot_clause.empty()) dot_target = clause_from_text(s.dot_clause, f.var_count());

  SaturationResult r = saturate(f, options);
  std::ostringstream report;
  report << "status " << to_string(r.status) << '\n'
         << "original " << r.original_count << '\n'
         << "derived " << r.derived_count() << '\n'
         << "steps " << r.counters.steps << '\n'
         << "tautologies " << r.counters.tautologies << '\n'
         << "duplicates " << r.counters.duplicates << '\n'
         << "width_discarded " << r.counters.width_discarded << '\n';
  std::optional<ClauseId> focus;
  for (ClauseId id = 0; id < r.store.size(); ++id) {
    const Clause& cl = r.store[id];
    if (cl.size() > 1) continue;
    if (!focus || cl.empty()) focus = id;
    DecisionChain chain = decision_chain_of(r, id);
    report << (cl.empty() ? "empty" : "unit") << ' ' << id << " : " << literals_text(cl) << " chain";
    for (Variable v : chain.resolved) report << ' ' << v;
    report << '\n';
  }
  if (c.verbosity > 0) {
    for (ClauseId id = static_cast<ClauseId>(r.original_count); id < r.store.size(); ++id)
      report << "clause " << id << " : " << literals_text(r.store[id]) << '\n';
  }
  if (!s.trace.empty()) {
    std::ostringstream trace;
    write_trace(trace, r);
    if (s.trace == "-") {
      report << trace.str();
    } else {
      write_output(s.trace, trace.str(), out);
    }
  }
  if (!s.dot.empty()) {
    if (dot_target) {
      focus = r.find(*dot_target);
      if (!focus) throw std::runtime_error("clause " + s.dot_clause + " was not derived");
    }
    if (!focus) throw std::runtime_error("no unit or empty clause to draw; use --dot-clause");
    std::ostringstream dot;
    write_chain_dot(dot, r, *focus, &f.atlas());
    write_output(s.dot, dot.str(), out);
  }
  out << report.str();
  return kExitOk;
}

struct AnalyzeFlags {
  bool paths = false;
  bool closed_form = false;
  bool table = false;
  std::optional<std::uint64_t> depth_for;
  std::optional<std::uint64_t> var_count;
  std::optional<std::uint64_t> combinations;
};

int cmd_analyze(const CliConfig& c, const AnalyzeFlags& a, std::ostream& out) {
  bool did = false;
  try {
    if (a.paths) {
      did = true;
      PathReport rep;
      const bool binary = c.family == "binary";
      if (binary && a.closed_form) throw UsageError("--closed-form covers binomial trees only");
      if (!binary && (a.closed_form || c.k > kDefaultEnumerationLimit)) {
        rep = leaf_path_counts(c.k);
      } else {
        TreeSpec spec;
        spec.k = c.k;
        if (binary) spec.variant = Variant::BinaryTree;
        rep = enumerate_paths(spec);
      }
      if (a.table) {
        write_path_table(out, rep);
      } else {
        out << path_line(rep) << '\n';
      }
    }
    if (a.depth_for) {
      did = true;
      out << "n " << *a.depth_for << " binary_depth " << binary_depth_for(*a.depth_for)
          << " binary_leaf_paths " << binary_leaf_paths(*a.depth_for) << " binomial_depth "
          << binomial_depth_for(*a.depth_for) << '\n';
    }
    if (a.var_count) {
      did = true;
      out << "k " << *a.var_count << " binomial_vars " << binomial_var_count(*a.var_count) << '\n';
    }
    if (a.combinations) {
      did = true;
      out << "m " << *a.combinations << " k " << c.k << " combinations "
          << candidate_combinations(*a.combinations, c.k) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::overflow_error& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  if (!did) throw UsageError("analyze needs --paths, --depth-for, --var-count or --combinations");
  return kExitOk;
}

int cmd_verify(const std::vector<int>& only, std::ostream& out) {
  std::vector<ClaimResult> results;
  if (only.empty()) {
    results = run_claims();
  } else {
    for (int id : only) {
      if (id < 1 || id > kClaimCount) throw UsageError("no check " + std::to_string(id));
      results.push_back(run_claim(id));
    }
  }
  write_claims_report(out, results);
  std::string failing;
  for (const auto& r : results) {
    if (!r.passed) failing += (failing.empty() ? "" : ", ") + r.anchor;
  }
  if (!failing.empty()) {
    out << "failing: " << failing << '\n';
    return kExitFailure;
  }
  out << "all " << results.size() << " checks passed\n";
  return kExitOk;
}

struct BenchFlags {
  std::vector<std::string> families{"binomial-alias"};
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 8;
  std::uint32_t repetitions = 1;
  unsigned jobs = 1;
  std::string csv;
  std::string svg;
  bool no_dpll = false;
};

int cmd_bench(const CliConfig& c, const BenchFlags& b, std::ostream& out) {
  check_output_path(b.csv);
  check_output_path(b.svg);
  BenchConfig config;
  for (const auto& name : b.families) {
    if (name == "all") {
      auto all = all_families();
      config.families.insert(config.families.end(), all.begin(), all.end());
      continue;
    }
    auto fam = parse_family(name);
    if (!fam) throw UsageError("unknown bench family " + name);
    config.families.push_back(*fam);
  }
  config.k_min = b.k_min;
  config.k_max = b.k_max;
  config.repetitions = b.repetitions;
  config.jobs = b.jobs;
  config.seed = c.seed;
  config.redundancy = c.redundancy;
  config.budget = budget_of(c);
  config.schedule = schedule_of(c);
  config.run_dpll = !b.no_dpll;
  BenchReport report;
  try {
    report = run_sweep(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!b.csv.empty()) {
    std::ostringstream csv;
    write_csv(csv, report.records);
    write_output(b.csv, csv.str(), out);
  }
  if (!b.svg.empty()) {
    std::ostringstream svg;
    write_svg(svg, report.records);
    write_output(b.svg, svg.str(), out);
  }
  write_summary(out, report);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-tree SAT instances: generation, resolution, oracles and sweeps", "ibdt"};
  app.footer(kEnvHelp);
  app.require_subcommand(1, 1);
  CliConfig config;
  app.add_flag("-v,--verbose", config.verbosity, "more output (repeatable)");

  auto* gen = app.add_subcommand("generate", "write a generated instance as DIMACS");
  add_instance_options(gen, config, false);
  gen->add_option("-o,--output", config.output, "output file (default stdout)");

  std::string oracle = "dpll";
  Variable cap = kDefaultBruteForceCap;
  auto* solve = app.add_subcommand("solve", "decide satisfiability; exit 10 (sat) or 20 (unsat)");
  add_instance_options(solve, config, true);
  solve->add_option("--oracle", oracle, "dpll or brute")->check(CLI::IsMember({"dpll", "brute"}));
  solve->add_option("--brute-cap", cap, "variable cap for brute force");

  SaturateFlags sat_flags;
  auto* sat = app.add_subcommand("saturate", "run resolution saturation");
  add_instance_options(sat, config, true);
  add_budget_options(sat, config);
  sat->add_option("--trace", sat_flags.trace, "write the proof trace to a file ('-' for stdout)");
  sat->add_option("--dot", sat_flags.dot, "write the decision chain graph of one clause");
  sat->add_option("--dot-clause", sat_flags.dot_clause, "DIMACS literals of the clause to draw");
  sat->add_option("--target", sat_flags.targets, "stop once these clauses are derived (repeatable)");

  AnalyzeFlags an_flags;
  auto* an = app.add_subcommand("analyze", "closed-form counts and path enumeration");
  an->add_flag("--paths", an_flags.paths, "leaf path counts per row for depth --k");
  an->add_option("--k", config.k, "depth");
  an->add_option("--family", config.family, "binomial or binary (with --paths)")
      ->check(CLI::IsMember({"binomial", "binary"}));
  an->add_flag("--closed-form", an_flags.closed_form, "skip enumeration");
  an->add_flag("--table", an_flags.table, "print a row table");
  an->add_option("--depth-for", an_flags.depth_for, "depths reachable with n variables");
  an->add_option("--var-count", an_flags.var_count, "binomial variable count for depth k");
  an->add_option("--combinations", an_flags.combinations, "m^k candidate combinations for m");

  std::vector<int> only;
  auto* ver = app.add_subcommand("verify", "run the acceptance checklist; exit 0 iff all pass");
  ver->add_option("--only", only, "run only these check ids");

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "scaling sweep with CSV and summary output");
  bench->add_option("--families", bench_flags.families, "bench families, or 'all'")->delimiter(',');
  bench->add_option("--k-min", bench_flags.k_min, "first depth");
  bench->add_option("--k-max", bench_flags.k_max, "last depth");
  bench->add_option("--repetitions", bench_flags.repetitions, "runs per configuration");
  bench->add_option("--jobs", bench_flags.jobs, "parallel workers");
  bench->add_option("--seed", config.seed, "seed recorded in each row and used for redundancy");
  bench->add_option("--redundancy", config.redundancy, "redundancy clauses per node (binomial)");
  bench->add_option("--csv", bench_flags.csv, "CSV output file");
  bench->add_option("--svg", bench_flags.svg, "scatter plot output file");
  bench->add_flag("--no-dpll", bench_flags.no_dpll, "skip the DPLL column");
  add_budget_options(bench, config);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(config, out);
    if (*solve) return cmd_solve(config, oracle, cap, out);
    if (*sat) return cmd_saturate(config, sat_flags, out);
    if (*an) return cmd_analyze(config, an_flags, out);
    if (*ver) return cmd_verify(only, out);
    if (*bench) return cmd_bench(config, bench_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ibdt::cli
