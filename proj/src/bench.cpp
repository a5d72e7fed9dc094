#include "ibdt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ibdt/forge.hpp"
#include "ibdt/oracle.hpp"

namespace ibdt {

namespace {

struct FamilyInfo {
  BenchFamily family;
  std::string_view name;
};

constexpr FamilyInfo kFamilies[] = {
    {BenchFamily::BinomialAlias, "binomial-alias"},
    {BenchFamily::BinomialNone, "binomial-none"},
    {BenchFamily::ComposeMatched, "compose-matched"},
    {BenchFamily::ComposeCrossed, "compose-crossed"},
    {BenchFamily::PairChain, "pair-chain"},
    {BenchFamily::UnitChain, "unit-chain"},
    {BenchFamily::BinaryTree, "binary-tree"},
    {BenchFamily::MultiBranching, "multi-branching"},
};

}  // namespace

const char* const kBenchHeader[kBenchColumns] = {
    "family",       "k",         "vars",        "clauses",      "sat_status",
    "sat_steps",    "derived",   "sat_seconds", "dpll_verdict", "dpll_nodes",
    "dpll_seconds", "seed",      "repetition",  "error",
};

std::string_view family_name(BenchFamily family) {
  for (const auto& f : kFamilies) {
    if (f.family == family) return f.name;
  }
  return "?";
}

std::optional<BenchFamily> parse_family(std::string_view name) {
  for (const auto& f : kFamilies) {
    if (f.name == name) return f.family;
  }
  return std::nullopt;
}

std::vector<BenchFamily> all_families() {
  std::vector<BenchFamily> out;
  for (const auto& f : kFamilies) out.push_back(f.family);
  return out;
}

CnfFormula bench_instance(BenchFamily family, std::uint32_t k, std::uint32_t redundancy,
                          std::uint64_t seed) {
  TreeSpec spec;
  spec.k = k;
  spec.redundancy = Redundancy{redundancy, seed};
  switch (family) {
    case BenchFamily::BinomialAlias:
      spec.closure = AliasClosure{1};
      return build_binomial_tree(spec);
    case BenchFamily::BinomialNone:
      return build_binomial_tree(spec);
    case BenchFamily::ComposeMatched: return compose_two_trees(k, Closing::Matched);
    case BenchFamily::ComposeCrossed: return compose_two_trees(k, Closing::Crossed);
    case BenchFamily::PairChain: return build_pair_chain(k);
    case BenchFamily::UnitChain: return build_unit_chain(k);
    case BenchFamily::BinaryTree: return build_binary_tree(k);
    case BenchFamily::MultiBranching: return build_multi_branching(k, 2, AliasClosure{1});
  }
  throw std::invalid_argument("unknown family");
}

bool BenchRecord::same_outcome(const BenchRecord& o) const {
  return family == o.family && k == o.k && vars == o.vars && clauses == o.clauses &&
         sat_status == o.sat_status && sat_steps == o.sat_steps && derived == o.derived &&
         dpll_verdict == o.dpll_verdict && dpll_nodes == o.dpll_nodes && seed == o.seed &&
         error == o.error;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Task {
  BenchFamily family;
  std::uint32_t k;
  std::uint32_t repetition;
};

BenchRecord run_one(const BenchConfig& config, const Task& task) {
  BenchRecord rec;
  rec.family = std::string{family_name(task.family)};
  rec.k = task.k;
  rec.seed = config.seed;
  rec.repetition = task.repetition;
  try {
    CnfFormula f = bench_instance(task.family, task.k, config.redundancy, config.seed);
    rec.vars = f.var_count();
    rec.clauses = f.clause_count();

    SaturateOptions options;
    options.budget = config.budget;
    options.schedule = config.schedule;
    auto start = Clock::now();
    SaturationResult sat = saturate(f, options);
    rec.sat_seconds = seconds_since(start);
    rec.sat_status = to_string(sat.status);
    rec.sat_steps = sat.counters.steps;
    rec.derived = sat.derived_count();

    if (config.run_dpll) {
      start = Clock::now();
      OracleVerdict v = dpll_sat(f);
      rec.dpll_seconds = seconds_since(start);
      rec.dpll_verdict = to_string(v.status);
      rec.dpll_nodes = v.stats.nodes;
    } else {
      rec.dpll_verdict = "skipped";
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

BenchReport run_sweep(const BenchConfig& config) {
  if (config.families.empty()) throw std::invalid_argument("sweep needs at least one family");
  if (config.k_min > config.k_max) throw std::invalid_argument("empty k range");
  if (config.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  if (config.budget.max_clauses == 0 || config.budget.max_steps == 0 ||
      (config.budget.max_width && *config.budget.max_width == 0))
    throw std::invalid_argument("budgets must be positive");

  std::vector<Task> tasks;
  for (BenchFamily fam : config.families) {
    for (std::uint32_t k = config.k_min; k <= config.k_max; ++k) {
      for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) tasks.push_back({fam, k, rep});
    }
  }

  BenchReport report;
  report.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      report.records[i] = run_one(config, tasks[i]);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.fits = fit_all(report.records);
  return report;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  ExponentFit fit;
  std::vector<std::pair<double, double>> logs;
  for (auto [x, y] : points) {
    if (x > 0 && y > 0) logs.emplace_back(std::log(x), std::log(y));
  }
  fit.points = logs.size();
  if (logs.size() < 2) return fit;
  double mx = 0, my = 0;
  for (auto [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= logs.size();
  my /= logs.size();
  double sxx = 0, sxy = 0;
  for (auto [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) {
    fit.points = 1;
    return fit;
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0;
  for (auto [x, y] : logs) {
    double r = y - (fit.intercept + fit.exponent * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / logs.size());
  return fit;
}

std::vector<ExponentFit> fit_all(const std::vector<BenchRecord>& records) {
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.family) == order.end()) order.push_back(r.family);
  }
  std::vector<ExponentFit> fits;
  for (const auto& family : order) {
    for (std::string metric : {"derived", "dpll_nodes"}) {
      std::vector<std::pair<double, double>> pts;
      std::size_t censored = 0;
      for (const auto& r : records) {
        if (r.family != family || !r.error.empty() || r.repetition != 0) continue;
        if (metric == "dpll_nodes" && r.dpll_verdict == "skipped") continue;
        double y = metric == "derived" ? static_cast<double>(r.derived)
                                       : static_cast<double>(r.dpll_nodes);
        pts.emplace_back(static_cast<double>(r.vars), y);
        if (metric == "derived" && r.sat_status == "BudgetExhausted" && y > 0) ++censored;
      }
      ExponentFit fit = fit_exponent(pts);
      fit.family = family;
      fit.metric = metric;
      fit.censored = censored;
      fits.push_back(fit);
    }
  }
  return fits;
}

std::vector<std::string> unstable_outcomes(const std::vector<BenchRecord>& records) {
  std::map<std::pair<std::string, std::uint32_t>, const BenchRecord*> first;
  for (const auto& r : records) {
    if (r.repetition == 0) first.emplace(std::pair{r.family, r.k}, &r);
  }
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (r.repetition == 0) continue;
    auto it = first.find({r.family, r.k});
    if (it == first.end()) {
      out.push_back(r.family + " k=" + std::to_string(r.k) + ": no repetition 0");
    } else if (!it->second->same_outcome(r)) {
      out.push_back(r.family + " k=" + std::to_string(r.k) + " repetition " +
                    std::to_string(r.repetition) + " differs from repetition 0");
    }
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string seconds_text(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(6) << s;
  return o.str();
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

template <class T>
T parse_number(const std::string& s, std::size_t line_no, const char* column) {
  std::istringstream in{s};
  T v{};
  in >> v;
  if (!in || in.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  for (std::size_t i = 0; i < kBenchColumns; ++i) out << (i ? "," : "") << kBenchHeader[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv_field(r.family) << ',' << r.k << ',' << r.vars << ',' << r.clauses << ','
        << csv_field(r.sat_status) << ',' << r.sat_steps << ',' << r.derived << ','
        << seconds_text(r.sat_seconds) << ',' << csv_field(r.dpll_verdict) << ','
        << r.dpll_nodes << ',' << seconds_text(r.dpll_seconds) << ',' << r.seed << ','
        << r.repetition << ',' << csv_field(r.error) << '\n';
  }
}

void export_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("no records to export");
  std::ofstream out{path, std::ios::binary};
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, records);
  out.close();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error("line 1: missing header");
  auto header = split_csv_line(line, line_no);
  if (header.size() != kBenchColumns) throw std::runtime_error("line 1: wrong column count");
  for (std::size_t i = 0; i < kBenchColumns; ++i) {
    if (header[i] != kBenchHeader[i]) throw std::runtime_error("line 1: unexpected column " + header[i]);
  }
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_csv_line(line, line_no);
    if (f.size() != kBenchColumns)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kBenchColumns) + " columns, found " +
                               std::to_string(f.size()));
    BenchRecord r;
    r.family = f[0];
    r.k = parse_number<std::uint32_t>(f[1], line_no, "k");
    r.vars = parse_number<std::uint64_t>(f[2], line_no, "vars");
    r.clauses = parse_number<std::uint64_t>(f[3], line_no, "clauses");
    r.sat_status = f[4];
    r.sat_steps = parse_number<std::uint64_t>(f[5], line_no, "sat_steps");
    r.derived = parse_number<std::uint64_t>(f[6], line_no, "derived");
    r.sat_seconds = parse_number<double>(f[7], line_no, "sat_seconds");
    r.dpll_verdict = f[8];
    r.dpll_nodes = parse_number<std::uint64_t>(f[9], line_no, "dpll_nodes");
    r.dpll_seconds = parse_number<double>(f[10], line_no, "dpll_seconds");
    r.seed = parse_number<std::uint64_t>(f[11], line_no, "seed");
    r.repetition = parse_number<std::uint32_t>(f[12], line_no, "repetition");
    r.error = f[13];
    out.push_back(std::move(r));
  }
  return out;
}

void write_summary(std::ostream& out, const BenchReport& report) {
  std::size_t failed = 0;
  for (const auto& r : report.records) failed += !r.error.empty();
  out << "records " << report.records.size() << " (failed " << failed << ")\n";
  for (const auto& r : report.records) {
    if (r.repetition != 0) continue;
    out << r.family << " k=" << r.k << " vars=" << r.vars << " clauses=" << r.clauses;
    if (!r.error.empty()) {
      out << " error: " << r.error << '\n';
      continue;
    }
    out << " saturation=" << r.sat_status << " derived=" << r.derived
        << " dpll=" << r.dpll_verdict << " nodes=" << r.dpll_nodes << '\n';
  }
  auto unstable = unstable_outcomes(report.records);
  out << "unstable repetitions " << unstable.size() << '\n';
  for (const auto& u : unstable) out << "  " << u << '\n';
  out << "log-log fits against variable count\n";
  for (const auto& f : report.fits) {
    out << "  " << f.family << ' ' << f.metric << ": ";
    if (!f.valid()) {
      out << "insufficient points (" << f.points << ")\n";
      continue;
    }
    out << std::fixed << std::setprecision(3) << "exponent " << f.exponent << " residual "
        << f.residual << " points " << f.points;
    out.unsetf(std::ios::floatfield);
    if (f.censored) out << " (" << f.censored << " budget-capped)";
    out << '\n';
  }
}

void write_svg(std::ostream& out, const std::vector<BenchRecord>& records) {
  constexpr double W = 640, H = 420, L = 60, R = 20, T = 20, B = 50;
  struct Pt {
    double x, y;
    bool nodes;
  };
  std::vector<Pt> pts;
  for (const auto& r : records) {
    if (!r.error.empty() || r.repetition != 0 || r.vars == 0) continue;
    if (r.derived > 0) pts.push_back({std::log10(double(r.vars)), std::log10(double(r.derived)), false});
    if (r.dpll_nodes > 0) pts.push_back({std::log10(double(r.vars)), std::log10(double(r.dpll_nodes)), true});
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = y0 = std::numeric_limits<double>::max();
    x1 = y1 = std::numeric_limits<double>::lowest();
    for (const auto& p : pts) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    if (x1 - x0 < 1e-9) x1 = x0 + 1;
    if (y1 - y0 < 1e-9) y1 = y0 + 1;
  }
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
      << "\" text-anchor=\"middle\">log10 variables (" << x0 << " .. " << x1 << ")</text>\n";
  out << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 15 "
      << (T + H - B) / 2 << ")\" text-anchor=\"middle\">log10 count (" << y0 << " .. " << y1
      << ")</text>\n";
  for (const auto& p : pts) {
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\""
        << (p.nodes ? "#d62728" : "#1f77b4") << "\"/>\n";
  }
  out << "<text x=\"" << L + 10 << "\" y=\"" << T + 10 << "\" fill=\"#1f77b4\">derived clauses</text>\n";
  out << "<text x=\"" << L + 10 << "\" y=\"" << T + 26 << "\" fill=\"#d62728\">dpll nodes</text>\n";
  out << "</svg>\n";
}

}  // namespace ibdt
