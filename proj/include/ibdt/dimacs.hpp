#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ibdt/formula.hpp"

namespace ibdt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_{line} {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads DIMACS CNF. "c meta <key> <value>" lines become metadata and
/// "c var <id> <name>" lines rebuild the atlas; other comments are ignored.
/// Tautological input clauses are dropped (a "tautologies_dropped" metadata
/// entry is added when that happens); duplicate clauses count toward the
/// header but are stored once.
CnfFormula parse_dimacs(std::string_view text);

/// Deterministic: metadata, then atlas, then header, then clauses in stored order.
std::string write_dimacs(const CnfFormula& formula);

}  // namespace ibdt
