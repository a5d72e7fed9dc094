#include "ibdt/formula.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ibdt {

Literal Literal::from_dimacs(int value) {
  if (value == 0) throw std::invalid_argument("literal 0 is a clause terminator");
  auto var = static_cast<Variable>(value < 0 ? -static_cast<long long>(value) : value);
  return Literal{var, value < 0};
}

int Literal::to_dimacs() const {
  int v = static_cast<int>(var());
  return negated() ? -v : v;
}

bool Clause::contains(Literal lit) const {
  return std::binary_search(lits_.begin(), lits_.end(), lit);
}

std::optional<Literal> Clause::find_var(Variable var) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), Literal{var, false});
  if (it != lits_.end() && it->var() == var) return *it;
  return std::nullopt;
}

std::size_t Clause::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Literal l : lits_) {
    h ^= l.code();
    h *= 0x100000001b3ull;
  }
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

ClauseOrTautology make_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lits[i].var() == lits[i - 1].var()) return Tautology{lits[i].var()};
  }
  for (Literal l : lits) {
    if (l.var() == 0) throw std::invalid_argument("variable ids start at 1");
  }
  return Clause{std::move(lits)};
}

Clause require_clause(std::vector<Literal> lits) {
  auto r = make_clause(std::move(lits));
  if (auto* t = std::get_if<Tautology>(&r)) {
    throw std::invalid_argument("tautological clause on variable " + std::to_string(t->var));
  }
  return std::get<Clause>(std::move(r));
}

std::string to_string(const Clause& clause) {
  std::string out;
  for (Literal l : clause) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.to_dimacs());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) words.push_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

template <class T>
bool parse_uint(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

void validate(const VarName& name) {
  std::visit(overloaded{
                 [](const Root&) {},
                 [](const ChainPair& p) {
                   if (p.step < 2 || p.slot < 1 || p.slot > 2)
                     throw std::invalid_argument("chain pair needs step >= 2 and slot 1|2");
                 },
                 [](const TreeSlot& s) {
                   if (s.boundary < 1 || s.row < 1 || s.row > s.boundary)
                     throw std::invalid_argument("tree slot needs 1 <= row <= boundary");
                   if (s.boundary == 1 && s.tree == 0)
                     throw std::invalid_argument("boundary 1 of tree 0 is the root variable");
                 },
                 [](const BinarySlot& b) {
                   if (b.depth < 1 || b.depth >= 63 || b.index >= (std::uint64_t{1} << b.depth))
                     throw std::invalid_argument("binary slot index out of range");
                 },
                 [](const Fresh&) {},
             },
             name);
}

std::string display_name(const VarName& name) {
  return std::visit(
      overloaded{
          [](const Root&) { return std::string{"x1_1"}; },
          [](const ChainPair& p) {
            return "x" + std::to_string(p.step) + "_" + std::to_string(p.slot);
          },
          [](const TreeSlot& s) {
            std::string base = "x" + std::to_string(s.boundary) + "_" + std::to_string(s.row);
            return s.tree == 0 ? base : "t" + std::to_string(s.tree) + ":" + base;
          },
          [](const BinarySlot& b) {
            return "b" + std::to_string(b.depth) + "." + std::to_string(b.index);
          },
          [](const Fresh& f) { return "z" + std::to_string(f.tag); },
      },
      name);
}

std::string atlas_text(const VarName& name) {
  return std::visit(
      overloaded{
          [](const Root&) { return std::string{"root"}; },
          [](const ChainPair& p) {
            return "pair " + std::to_string(p.step) + " " + std::to_string(p.slot);
          },
          [](const TreeSlot& s) {
            return "slot " + std::to_string(s.tree) + " " + std::to_string(s.boundary) + " " +
                   std::to_string(s.row);
          },
          [](const BinarySlot& b) {
            return "bin " + std::to_string(b.depth) + " " + std::to_string(b.index);
          },
          [](const Fresh& f) { return "fresh " + std::to_string(f.tag); },
      },
      name);
}

std::optional<VarName> parse_atlas_text(std::string_view text) {
  auto w = split_words(text);
  if (w.empty()) return std::nullopt;
  std::optional<VarName> out;
  if (w[0] == "root" && w.size() == 1) {
    out = Root{};
  } else if (w[0] == "pair" && w.size() == 3) {
    ChainPair p;
    if (parse_uint(w[1], p.step) && parse_uint(w[2], p.slot)) out = p;
  } else if (w[0] == "slot" && w.size() == 4) {
    TreeSlot s;
    if (parse_uint(w[1], s.tree) && parse_uint(w[2], s.boundary) && parse_uint(w[3], s.row))
      out = s;
  } else if (w[0] == "bin" && w.size() == 3) {
    BinarySlot b;
    if (parse_uint(w[1], b.depth) && parse_uint(w[2], b.index)) out = b;
  } else if (w[0] == "fresh" && w.size() == 2) {
    Fresh f;
    if (parse_uint(w[1], f.tag)) out = f;
  }
  if (out) {
    try {
      validate(*out);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Variable Atlas::register_name(const VarName& name) {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  validate(name);
  by_id_.emplace_back(name);
  auto id = static_cast<Variable>(by_id_.size());
  by_name_.emplace(name, id);
  return id;
}

void Atlas::bind(Variable id, const VarName& name) {
  if (id == 0) throw std::invalid_argument("variable ids start at 1");
  validate(name);
  if (by_name_.count(name)) throw std::invalid_argument("name bound twice: " + display_name(name));
  if (by_id_.size() < id) by_id_.resize(id);
  if (by_id_[id - 1]) throw std::invalid_argument("id bound twice: " + std::to_string(id));
  by_id_[id - 1] = name;
  by_name_.emplace(name, id);
}

std::optional<Variable> Atlas::find(const VarName& name) const {
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  return std::nullopt;
}

const VarName* Atlas::name_of(Variable id) const {
  if (id == 0 || id > by_id_.size() || !by_id_[id - 1]) return nullptr;
  return &*by_id_[id - 1];
}

std::vector<std::pair<Variable, VarName>> Atlas::entries() const {
  std::vector<std::pair<Variable, VarName>> out;
  for (std::size_t i = 0; i < by_id_.size(); ++i) {
    if (by_id_[i]) out.emplace_back(static_cast<Variable>(i + 1), *by_id_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool CnfFormula::add_clause(const Clause& clause) {
  if (clause.max_var() > var_count_) {
    throw std::invalid_argument("clause references variable " + std::to_string(clause.max_var()) +
                                " above declared count " + std::to_string(var_count_));
  }
  auto [it, inserted] = index_.emplace(clause, clauses_.size());
  if (inserted) clauses_.push_back(clause);
  return inserted;
}

void CnfFormula::set_var_count(Variable count) {
  for (const Clause& c : clauses_) {
    if (c.max_var() > count) throw std::invalid_argument("variable count below used variables");
  }
  if (atlas_.max_id() > count) throw std::invalid_argument("variable count below atlas ids");
  var_count_ = count;
}

void CnfFormula::set_meta(const std::string& key, std::string value) {
  if (key.empty() || key.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("metadata keys must be single words");
  if (value.find('\n') != std::string::npos)
    throw std::invalid_argument("metadata values must fit on one line");
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(key, std::move(value));
}

std::optional<std::string> CnfFormula::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

bool CnfFormula::contains(const Clause& clause) const { return index_.count(clause) != 0; }

Variable CnfFormula::var(const VarName& name) const {
  if (auto id = atlas_.find(name)) return *id;
  throw std::out_of_range("variable not in atlas: " + display_name(name));
}

CnfFormula CnfFormula::with_clauses(std::span<const Clause> extra) const {
  CnfFormula copy = *this;
  for (const Clause& c : extra) copy.add_clause(c);
  return copy;
}

bool operator==(const CnfFormula& a, const CnfFormula& b) {
  return a.var_count_ == b.var_count_ && a.clauses_ == b.clauses_ && a.atlas_ == b.atlas_ &&
         a.metadata_ == b.metadata_;
}

}  // namespace ibdt
