#pragma once

#include <string>

#include "nckdv/ncpoly.hpp"

namespace nckdv {

// Text grammar for polynomials:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := rational | (rational '*')? factor ('*' factor)*
//   factor := ident | 'inv(' ident ')' | 'D(' expr ')'
//           | '[' expr ',' expr ']' | '{' expr ',' expr '}' | '(' expr ')'
//   ident  := name ('_x'{1..4} | '_x' integer)?     e.g. Q, Q_x, Q_xx, Q_x5
// '[,]' is the commutator, '{,}' the anticommutator.
// Throws ParseError with the offending offset.
Poly parse_expr(const std::string& text);

// Canonical grammar rendering; parse(print(p)) == p.
std::string to_string(const Poly& p);
std::string to_string(const Word& w);

// Compact rendering used in operator subscripts: Q_x, Q^{-1}, juxtaposed.
std::string notation(const Poly& p);

}  // namespace nckdv
