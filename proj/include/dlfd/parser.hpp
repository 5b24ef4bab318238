// Recursive-descent parser for the `.dlfd` terminology format.
//
//   terminology := { axiom }
//   axiom       := concept "<=" rhs ";"
//   disj        := conj { "|" conj }
//   conj        := unary { "&" unary }
//   unary       := "~" unary | "all" FEATURE "." unary | atom
//   atom        := NAME | "Top" | "Bot" | "(" disj ")" | fd
//   fd          := "fd" "(" disj ":" path { "," path } "->" path ")"
//   path        := "id" | FEATURE { "." FEATURE }
//
// `fd(...)` is accepted syntactically anywhere an atom is, then rejected
// unless it sits on the right of `<=` under conjunctions only. `#` starts a
// comment running to end of line.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dlfd/ast.hpp"

namespace dlfd {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { lexical, syntax, pfd_position, empty_path_list };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The message without the "line:col" prefix.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

const char* to_string(ParseError::Kind kind);

Terminology parse_terminology(std::string_view text);
Axiom parse_axiom(std::string_view text);  // trailing ';' optional
Concept parse_concept(std::string_view text);
RhsConcept parse_rhs_concept(std::string_view text);

}  // namespace dlfd
