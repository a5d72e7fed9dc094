#include "ibdt/dimacs.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

namespace ibdt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word &&
         (s.size() == word.size() || s[word.size()] == ' ' || s[word.size()] == '\t');
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula formula;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::size_t read_clauses = 0;
  std::size_t tautologies = 0;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  Metadata meta;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == 'c') {
      if (starts_with_word(line, "c")) {
        std::string_view rest = trim(line.substr(1));
        if (starts_with_word(rest, "meta")) {
          rest = trim(rest.substr(4));
          auto sp = rest.find_first_of(" \t");
          std::string key{rest.substr(0, sp)};
          std::string value{sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp))};
          if (key.empty()) throw ParseError(line_no, "metadata line without key");
          meta.emplace_back(std::move(key), std::move(value));
        } else if (starts_with_word(rest, "var")) {
          if (have_header) throw ParseError(line_no, "variable names must precede the header");
          rest = trim(rest.substr(3));
          auto sp = rest.find_first_of(" \t");
          Variable id = 0;
          if (sp == std::string_view::npos || !parse_number(rest.substr(0, sp), id) || id == 0)
            throw ParseError(line_no, "malformed variable line");
          auto name = parse_atlas_text(trim(rest.substr(sp)));
          if (!name) throw ParseError(line_no, "malformed variable name");
          try {
            formula.atlas().bind(id, *name);
          } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
          }
        }
      }
      continue;
    }
    if (line.front() == '%') break;
    if (line.front() == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      auto w = words(line);
      long long vars = 0;
      long long clauses = 0;
      if (w.size() != 4 || w[0] != "p" || w[1] != "cnf" || !parse_number(w[2], vars) ||
          !parse_number(w[3], clauses) || vars < 0 || clauses < 0 ||
          vars > std::numeric_limits<int>::max())
        throw ParseError(line_no, "malformed header, expected \"p cnf <vars> <clauses>\"");
      if (formula.atlas().max_id() > static_cast<Variable>(vars))
        throw ParseError(line_no, "variable comment above declared variable count");
      formula.set_var_count(static_cast<Variable>(vars));
      declared_clauses = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before header");
    for (std::string_view tok : words(line)) {
      int value = 0;
      if (!parse_number(tok, value)) throw ParseError(line_no, "not an integer: " + std::string{tok});
      if (value == 0) {
        ++read_clauses;
        if (read_clauses > declared_clauses)
          throw ParseError(line_no, "more clauses than declared in header");
        auto made = make_clause(std::move(pending));
        pending.clear();
        if (auto* c = std::get_if<Clause>(&made)) {
          formula.add_clause(*c);
        } else {
          ++tautologies;
        }
        continue;
      }
      auto lit = Literal::from_dimacs(value);
      if (lit.var() > formula.var_count())
        throw ParseError(line_no, "variable " + std::to_string(lit.var()) +
                                      " above declared count " +
                                      std::to_string(formula.var_count()));
      if (pending.empty()) pending_line = line_no;
      pending.push_back(lit);
    }
  }
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
  if (!have_header) throw ParseError(line_no, "missing header");
  if (read_clauses != declared_clauses)
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(read_clauses));
  for (auto& [k, v] : meta) formula.set_meta(k, std::move(v));
  if (tautologies > 0) formula.set_meta("tautologies_dropped", std::to_string(tautologies));
  return formula;
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  for (const auto& [k, v] : formula.metadata()) {
    out << "c meta " << k;
    if (!v.empty()) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [id, name] : formula.atlas().entries()) {
    out << "c var " << id << ' ' << atlas_text(name) << '\n';
  }
  out << "p cnf " << formula.var_count() << ' ' << formula.clause_count() << '\n';
  for (const Clause& c : formula.clauses()) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace ibdt
