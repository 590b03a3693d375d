#pragma once

#include <string>
#include <vector>

#include "gifode/formula.hpp"

namespace gifode {

struct ParseOptions {
  // Identifiers accepted besides x and y; they become Param nodes.
  std::vector<std::string> params;
  // Accept ln(...), exp(...) and int(expr, v, anchor, v).
  bool allow_transcendental = true;
};

/// Recursive-descent parser for
///   EXPR ::= number | x | y | name | EXPR (+|-|*|/) EXPR | EXPR ^ signed-int | ( EXPR )
/// plus the ln/exp/int forms. Numbers may carry a decimal point and are kept
/// exact. Errors are ParseError with the byte offset (shifted by `offset`).
Tree parse_expression(const std::string& text, const ParseOptions& opts = {}, long offset = 0);

}  // namespace gifode
