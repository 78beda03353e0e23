#pragma once

#include <string>

#include "lgcalc/poly.hpp"

namespace lg {

/** Parse failure with 1-based source position. */
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/**
 * Parses a polynomial expression over the given ring.
 *
 * Grammar (whitespace insignificant, no implicit multiplication):
 *
 *   expr     := term (('+'|'-') term)*
 *   term     := factor ('*' factor)*
 *   factor   := '-' factor | atom ('^' NAT)?
 *   atom     := RATIONAL | VAR | '(' expr ')'
 *   RATIONAL := NAT ('/' POSNAT)?
 *
 * Unary minus binds looser than '^' ("-x^2" is -(x^2)) and supplies negative
 * literals ("-x", "-3/2*y").
 * Unknown variables, malformed tokens and trailing input raise ParseError
 * with line/column of the offending token.
 */
Poly parse_poly(const std::string& text, const RingPtr& ring);

}  // namespace lg
