#pragma once

// Scaling sweeps over the instance families: saturation and DPLL per
// (family, k, repetition), CSV export, and log-log exponent fits.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibdt/formula.hpp"
#include "ibdt/resolution.hpp"

namespace ibdt {

enum class BenchFamily {
  BinomialAlias,
  BinomialNone,
  ComposeMatched,
  ComposeCrossed,
  PairChain,
  UnitChain,
  BinaryTree,
  MultiBranching,
};

std::string_view family_name(BenchFamily family);
std::optional<BenchFamily> parse_family(std::string_view name);
std::vector<BenchFamily> all_families();

/// The instance a sweep measures for (family, k). Redundancy applies to the
/// binomial families only. Throws std::invalid_argument for k out of range.
CnfFormula bench_instance(BenchFamily family, std::uint32_t k, std::uint32_t redundancy = 0,
                          std::uint64_t seed = 0);

struct BenchRecord {
  std::string family;
  std::uint32_t k = 0;
  std::uint64_t vars = 0;
  std::uint64_t clauses = 0;
  std::string sat_status;
  std::uint64_t sat_steps = 0;
  std::uint64_t derived = 0;
  double sat_seconds = 0;
  std::string dpll_verdict;
  std::uint64_t dpll_nodes = 0;
  double dpll_seconds = 0;
  std::uint64_t seed = 0;
  std::uint32_t repetition = 0;
  /// Empty unless this run failed; the other result fields are then unset.
  std::string error;

  /// Everything except the two timing fields.
  [[nodiscard]] bool same_outcome(const BenchRecord& other) const;
};

inline constexpr std::size_t kBenchColumns = 14;
extern const char* const kBenchHeader[kBenchColumns];

struct BenchConfig {
  std::vector<BenchFamily> families;
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 8;
  Budget budget;
  Schedule schedule = Schedule::Fifo;
  std::uint32_t repetitions = 1;
  std::uint64_t seed = 0;
  std::uint32_t redundancy = 0;
  unsigned jobs = 1;
  bool run_dpll = true;
};

struct ExponentFit {
  std::string family;
  std::string metric;      // "derived" or "dpll_nodes"
  std::size_t points = 0;
  std::size_t censored = 0;  // points whose saturation hit the budget
  double exponent = 0;     // slope of log(metric) against log(vars)
  double intercept = 0;
  double residual = 0;     // root-mean-square residual in log space
  [[nodiscard]] bool valid() const { return points >= 2; }
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<ExponentFit> fits;
};

/// One record per (family, k, repetition), ordered by that key regardless of
/// `jobs`. Failing runs are recorded in the row's error field. Throws
/// std::invalid_argument for empty ranges or non-positive budgets.
BenchReport run_sweep(const BenchConfig& config);

/// Least-squares fit of log(y) = intercept + exponent * log(x) over points
/// with x > 0 and y > 0.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);
std::vector<ExponentFit> fit_all(const std::vector<BenchRecord>& records);

/// Descriptions of repetitions whose outcome differs from repetition 0.
std::vector<std::string> unstable_outcomes(const std::vector<BenchRecord>& records);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws std::invalid_argument for an empty record list and
/// std::runtime_error naming the path on I/O failure.
void export_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);
/// Parses the output of write_csv. Throws std::runtime_error on malformed rows.
std::vector<BenchRecord> read_csv(std::istream& in);

void write_summary(std::ostream& out, const BenchReport& report);
/// Log-log scatter of derived clauses and DPLL nodes against variable count.
void write_svg(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace ibdt
