#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ibdt/bench.hpp"
#include "ibdt/oracle.hpp"

namespace ibdt {
namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.families = {BenchFamily::UnitChain, BenchFamily::BinomialAlias, BenchFamily::ComposeMatched};
  c.k_min = 2;
  c.k_max = 3;
  c.budget.max_clauses = 20000;
  c.budget.max_steps = 200000;
  c.schedule = Schedule::ShortestFirst;
  c.repetitions = 2;
  return c;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Families, NamesRoundTrip) {
  for (BenchFamily f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_EQ(all_families().size(), 8u);
  EXPECT_FALSE(parse_family("nope"));
  EXPECT_EQ(family_name(BenchFamily::ComposeCrossed), "compose-crossed");
}

TEST(Families, InstancesMatchTheirKind) {
  EXPECT_FALSE(dpll_sat(bench_instance(BenchFamily::ComposeMatched, 3)).sat());
  EXPECT_TRUE(dpll_sat(bench_instance(BenchFamily::ComposeCrossed, 3)).sat());
  CnfFormula alias = bench_instance(BenchFamily::BinomialAlias, 4);
  EXPECT_TRUE(is_dominant(alias, alias.lit(Root{})));
  CnfFormula none = bench_instance(BenchFamily::BinomialNone, 4);
  EXPECT_FALSE(is_dominant(none, none.lit(Root{})));
  EXPECT_GT(bench_instance(BenchFamily::BinomialAlias, 4, 2, 9).clause_count(), alias.clause_count());
  EXPECT_EQ(bench_instance(BenchFamily::MultiBranching, 3).meta("family"), "multi-branching");
}

TEST(Sweep, OneRecordPerKeyInOrder) {
  BenchReport r = run_sweep(small_config());
  ASSERT_EQ(r.records.size(), 3u * 2 * 2);
  EXPECT_EQ(r.records[0].family, "unit-chain");
  EXPECT_EQ(r.records[0].k, 2u);
  EXPECT_EQ(r.records[1].repetition, 1u);
  EXPECT_EQ(r.records[2].k, 3u);
  for (const BenchRecord& rec : r.records) {
    EXPECT_TRUE(rec.error.empty()) << rec.error;
    EXPECT_GT(rec.vars, 0u);
    EXPECT_GE(rec.sat_seconds, 0.0);
  }
  EXPECT_EQ(r.records.back().sat_status, "EmptyDerived");
  EXPECT_EQ(r.records.back().dpll_verdict, "Unsat");
  EXPECT_TRUE(unstable_outcomes(r.records).empty());
}

TEST(Sweep, DeterministicAcrossRunsAndJobs) {
  BenchConfig c = small_config();
  BenchReport a = run_sweep(c);
  c.jobs = 2;
  BenchReport b = run_sweep(c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_TRUE(a.records[i].same_outcome(b.records[i])) << i;
}

TEST(Sweep, RejectsBadConfigs) {
  BenchConfig c = small_config();
  c.k_min = 5;
  c.k_max = 4;
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
  c = small_config();
  c.families.clear();
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
  c = small_config();
  c.budget.max_steps = 0;
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
  c = small_config();
  c.repetitions = 0;
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
}

TEST(Sweep, GeneratorFailuresBecomeErrorRows) {
  BenchConfig c;
  c.families = {BenchFamily::MultiBranching};
  c.k_min = 1;
  c.k_max = 2;
  c.budget.max_steps = 10;
  c.run_dpll = false;
  BenchReport r = run_sweep(c);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_FALSE(r.records[0].error.empty());
  EXPECT_TRUE(r.records[1].error.empty());
  EXPECT_EQ(r.records[1].dpll_verdict, "skipped");
}

TEST(Csv, LayoutAndRoundTrip) {
  BenchReport r = run_sweep(small_config());
  std::ostringstream out;
  write_csv(out, r.records);
  const std::string text = out.str();
  EXPECT_EQ(count_lines(text), r.records.size() + 1);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line))
    EXPECT_EQ(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')), kBenchColumns - 1);
  EXPECT_EQ(text.substr(0, text.find(',')), kBenchHeader[0]);

  std::istringstream in(text);
  auto back = read_csv(in);
  ASSERT_EQ(back.size(), r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_TRUE(back[i].same_outcome(r.records[i]));
    EXPECT_NEAR(back[i].sat_seconds, r.records[i].sat_seconds, 1e-6);
  }
}

TEST(Csv, QuotesErrorText) {
  BenchRecord rec;
  rec.family = "unit-chain";
  rec.k = 1;
  rec.error = "bad, \"quoted\" input";
  std::ostringstream out;
  write_csv(out, {rec});
  std::istringstream in(out.str());
  auto back = read_csv(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].error, rec.error);
}

TEST(Csv, MalformedInput) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_csv(bad_header), std::runtime_error);
  std::ostringstream out;
  write_csv(out, {BenchRecord{}});
  std::string text = out.str();
  text.insert(text.size() - 1, ",extra");
  std::istringstream extra(text);
  EXPECT_THROW(read_csv(extra), std::runtime_error);
}

TEST(Csv, ExportErrors) {
  EXPECT_THROW(export_csv({}, "/tmp/never.csv"), std::invalid_argument);
  const std::filesystem::path bad = "/nonexistent-dir/x/out.csv";
  try {
    export_csv({BenchRecord{}}, bad);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
  auto path = std::filesystem::temp_directory_path() / "ibdt_bench_test.csv";
  export_csv({BenchRecord{}}, path);
  std::ifstream in(path);
  EXPECT_EQ(read_csv(in).size(), 1u);
  std::filesystem::remove(path);
}

TEST(Fit, RecoversSyntheticExponents) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {10.0, 20.0, 40.0, 80.0, 160.0}) pts.emplace_back(x, 3.0 * std::pow(x, 2.5));
  ExponentFit f = fit_exponent(pts);
  EXPECT_EQ(f.points, 5u);
  EXPECT_NEAR(f.exponent, 2.5, 1e-9);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
  EXPECT_NEAR(f.residual, 0.0, 1e-9);
  pts.emplace_back(0.0, 5.0);
  pts.emplace_back(5.0, 0.0);
  EXPECT_EQ(fit_exponent(pts).points, 5u);
  EXPECT_FALSE(fit_exponent({{1.0, 1.0}}).valid());
}

TEST(Fit, PerFamilyMetricsAndCensoring) {
  std::vector<BenchRecord> recs;
  for (std::uint32_t k = 2; k <= 5; ++k) {
    BenchRecord r;
    r.family = "binomial-alias";
    r.k = k;
    r.vars = 10 * k;
    r.derived = 7 * k * k;
    r.dpll_nodes = k;
    r.sat_status = k == 5 ? "BudgetExhausted" : "Saturated";
    recs.push_back(r);
    r.repetition = 1;
    r.derived = 1;
    recs.push_back(r);
  }
  auto fits = fit_all(recs);
  ASSERT_EQ(fits.size(), 2u);
  EXPECT_EQ(fits[0].metric, "derived");
  EXPECT_NEAR(fits[0].exponent, 2.0, 1e-9);
  EXPECT_EQ(fits[0].points, 4u);
  EXPECT_EQ(fits[0].censored, 1u);
  EXPECT_NEAR(fits[1].exponent, 1.0, 1e-9);
  EXPECT_FALSE(unstable_outcomes(recs).empty());
}

TEST(Report, SummaryAndSvg) {
  BenchReport r = run_sweep(small_config());
  std::ostringstream sum, svg;
  write_summary(sum, r);
  write_svg(svg, r.records);
  EXPECT_NE(sum.str().find("binomial-alias"), std::string::npos);
  EXPECT_EQ(svg.str().rfind("<svg", 0), 0u);
  EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace ibdt
