#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ibdt/dimacs.hpp"
#include "ibdt/forge.hpp"

namespace ibdt {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ibdt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_NE(run({"--help"}).out.find("IBDT_MAX_CLAUSES"), std::string::npos);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--family", "nope", "--k", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--family", "binomial", "--k", "3", "--closure", "alias:9"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--family", "binomial", "--k", "3", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"saturate", "--family", "unit-chain", "--k", "3", "--max-steps", "0"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--only", "12"}).code, cli::kExitUsage);
}

TEST(Cli, GenerateMatchesLibraryAndIsDeterministic) {
  Outcome a = run({"generate", "--family", "binomial", "--k", "4", "--closure", "alias:1"});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, write_dimacs(build_binomial_tree(4, AliasClosure{1})));
  EXPECT_EQ(run({"generate", "--family", "binomial", "--k", "4", "--closure", "alias:1"}).out, a.out);
  Outcome r = run({"generate", "--family", "binomial", "--k", "4", "--redundancy", "2", "--seed", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("c meta redundancy 2"), std::string::npos);
  Outcome imp = run({"generate", "--family", "binomial", "--k", "4", "--closure", "alias:1", "--implicit",
                 "2:1@5:2"});
  ASSERT_EQ(imp.code, cli::kExitOk) << imp.err;
  TreeSpec spec;
  spec.k = 4;
  spec.closure = AliasClosure{1};
  spec.implicit_nodes = {{NodePos{2, 1, 0}, TreeSlot{0, 5, 2}}};
  EXPECT_EQ(imp.out, write_dimacs(build_binomial_tree(spec)));
  EXPECT_EQ(run({"generate", "--family", "unit-chain", "--k", "3"}).out, write_dimacs(build_unit_chain(3)));
}

TEST_F(CliFiles, SolveExitCodes) {
  ASSERT_EQ(run({"generate", "--family", "compose", "--k", "3", "--closing", "matched", "-o", path("m.cnf")}).code,
            cli::kExitOk);
  ASSERT_EQ(run({"generate", "--family", "compose", "--k", "3", "--closing", "crossed", "-o", path("c.cnf")}).code,
            cli::kExitOk);
  Outcome m = run({"solve", "-i", path("m.cnf")});
  EXPECT_EQ(m.code, cli::kExitUnsat);
  EXPECT_NE(m.out.find("s UNSATISFIABLE"), std::string::npos);
  Outcome c = run({"solve", "-i", path("c.cnf"), "--oracle", "brute"});
  EXPECT_EQ(c.code, cli::kExitSat);
  EXPECT_NE(c.out.find("s SATISFIABLE\nv "), std::string::npos);
  EXPECT_EQ(run({"solve", "-i", path("missing.cnf")}).code, cli::kExitUsage);
  std::ofstream(path("bad.cnf")) << "p cnf 2 1\n1 5 0\n";
  Outcome bad = run({"solve", "-i", path("bad.cnf")});
  EXPECT_EQ(bad.code, cli::kExitFailure);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
}

TEST_F(CliFiles, NoPartialOutputOnFailure) {
  const std::string out = path("never.cnf");
  EXPECT_EQ(run({"generate", "--family", "binomial", "--k", "3", "--closure", "alias:9", "-o", out}).code,
            cli::kExitUsage);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(run({"generate", "--family", "binomial", "--k", "3", "-o", path("no/such/dir/x.cnf")}).code,
            cli::kExitOk);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 0);
}

TEST_F(CliFiles, SaturateTraceAndDot) {
  Outcome r = run({"saturate", "--family", "unit-chain", "--k", "3", "--trace", "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("status Saturated"), std::string::npos);
  EXPECT_NE(r.out.find("unit 5 : 1 chain 2 3"), std::string::npos);
  EXPECT_NE(r.out.find("2 3 3 -> 5 : 1\n"), std::string::npos);
  Outcome d = run({"saturate", "--family", "unit-chain", "--k", "3", "--dot", path("g.dot"), "--trace",
               path("t.txt")});
  ASSERT_EQ(d.code, cli::kExitOk) << d.err;
  EXPECT_NE(slurp(path("g.dot")).find("digraph"), std::string::npos);
  EXPECT_EQ(slurp(path("t.txt")), "0 1 2 -> 3 : 1 3\n1 2 3 -> 4 : 1 -2\n2 3 3 -> 5 : 1\n");
  Outcome t = run({"saturate", "--family", "pair-chain", "--k", "4", "--target", "1 2"});
  EXPECT_EQ(t.code, cli::kExitOk) << t.err;
  EXPECT_EQ(run({"saturate", "--family", "unit-chain", "--k", "3", "--target", "1 -1"}).code, cli::kExitUsage);
}

TEST(Cli, SaturateSchedulesAndBudgets) {
  Outcome s = run({"saturate", "--family", "compose", "--k", "3", "--closing", "matched", "--schedule", "shortest"});
  EXPECT_NE(s.out.find("status EmptyDerived"), std::string::npos) << s.out << s.err;
  Outcome b = run({"saturate", "--family", "compose", "--k", "3", "--closing", "matched", "--max-steps", "100"});
  EXPECT_NE(b.out.find("status BudgetExhausted"), std::string::npos);
  EXPECT_NE(b.out.find("steps 100\n"), std::string::npos);
  ::setenv("IBDT_MAX_STEPS", "77", 1);
  Outcome e = run({"saturate", "--family", "compose", "--k", "3", "--closing", "matched"});
  ::unsetenv("IBDT_MAX_STEPS");
  EXPECT_NE(e.out.find("steps 77\n"), std::string::npos) << e.out;
  ::setenv("IBDT_MAX_CLAUSES", "-4", 1);
  Outcome bad = run({"saturate", "--family", "unit-chain", "--k", "3"});
  ::unsetenv("IBDT_MAX_CLAUSES");
  EXPECT_EQ(bad.code, cli::kExitUsage);
}

TEST(Cli, Analyze) {
  Outcome p = run({"analyze", "--paths", "--k", "3"});
  EXPECT_EQ(p.code, cli::kExitOk);
  EXPECT_NE(p.out.find("1 3 3 1 total 8"), std::string::npos);
  EXPECT_NE(run({"analyze", "--paths", "--k", "40", "--closed-form"}).out.find("total 1099511627776"),
            std::string::npos);
  Outcome deep = run({"analyze", "--paths", "--k", "40"});
  EXPECT_EQ(deep.code, cli::kExitOk);
  EXPECT_NE(deep.out.find("total 1099511627776"), std::string::npos);
  EXPECT_EQ(run({"analyze", "--paths", "--k", "30", "--family", "binary"}).code, cli::kExitUsage);
  EXPECT_NE(run({"analyze", "--var-count", "3"}).out.find("binomial_vars 10"), std::string::npos);
  EXPECT_NE(run({"analyze", "--depth-for", "15"}).out.find("binary_depth 3"), std::string::npos);
  EXPECT_EQ(run({"analyze"}).code, cli::kExitUsage);
}

TEST(Cli, VerifySubset) {
  Outcome v = run({"verify", "--only", "1", "3", "9"});
  EXPECT_EQ(v.code, cli::kExitOk) << v.out;
  EXPECT_NE(v.out.find("PASS  1 unit-chain"), std::string::npos);
  EXPECT_NE(v.out.find("all 3 checks passed"), std::string::npos);
}

TEST_F(CliFiles, BenchWritesCsv) {
  Outcome b = run({"bench", "--families", "unit-chain,pair-chain", "--k-min", "2", "--k-max", "4", "--csv",
               path("b.csv"), "--svg", path("b.svg"), "--no-dpll"});
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  std::string csv = slurp(path("b.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.rfind("family,k,", 0), 0u);
  EXPECT_NE(slurp(path("b.svg")).find("</svg>"), std::string::npos);
  EXPECT_EQ(run({"bench", "--families", "bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bench", "--families", "unit-chain", "--k-min", "5", "--k-max", "4"}).code, cli::kExitUsage);
}

}  // namespace
}  // namespace ibdt
