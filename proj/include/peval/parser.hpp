#pragma once

// Concrete syntax: a Prolog subset with `:- entry A.` and
// `:- eval Head : SC.` directives.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "peval/program.hpp"

namespace peval {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses and validates a program. Variables get program-unique ids
/// starting at 1.
Program parse_program(std::string_view text);

struct Query {
  std::vector<Atom> goals;
  // Named (non-anonymous) query variables in first-occurrence order.
  std::vector<std::pair<std::string, VarId>> names;
};

/// Parses a conjunction such as `qsort([3,1,2],R,[])`, with or without a
/// trailing period. Fresh variables come from `gen`.
Query parse_query(std::string_view text, VarGen& gen);
Term parse_term(std::string_view text, VarGen& gen);
Atom parse_atom(std::string_view text, VarGen& gen);

/// Variable names used by the renderer; unnamed variables print as `_G<id>`.
using VarNames = std::map<VarId, std::string>;

std::string render_term(const Term& t, const VarNames& names = {});
std::string render_atom(const Atom& a, const VarNames& names = {});
/// Variables are renamed A, B, ... by first occurrence.
std::string render_clause(const Clause& c);
/// Entry and eval directives first, then clauses in order.
std::string render_program(const Program& p);

}  // namespace peval
