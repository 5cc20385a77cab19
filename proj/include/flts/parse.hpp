#ifndef FLTS_PARSE_HPP
#define FLTS_PARSE_HPP

#include <string_view>

#include "flts/syntax.hpp"

namespace flts {

// Concrete syntax. Formulas:
//   phi ::= phi' '->' phi | phi'          (right-associative, weakest)
//   phi' ::= psi ('|' psi)*
//   psi ::= chi ('&' chi)*
//   chi ::= 'D' chi | '<' prog '>' chi | '[' prog ']' chi | atom
//   atom ::= number | ident | '(' phi ')'
// Programs:
//   prog ::= seq ('+' seq)*
//   seq ::= post (';' post)*
//   post ::= patom '*'*
//   patom ::= chi '?' | ident | '(' prog ')'
// Numbers are decimal ("0.5") or fraction ("7/10") literals in [0,1]; 'D' is a
// reserved word; idents name props (in formulas) or actions (in programs), the
// two are told apart at evaluation time against a model's signature.
//
// Both functions throw ParseError with a 1-based line:column position.
FormulaPtr parse_formula(std::string_view text);
ProgramPtr parse_program(std::string_view text);

}  // namespace flts

#endif
