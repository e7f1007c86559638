// Text -> AST for the quality-formula syntax:
//
//   quality   := qterm (("&&" | "||" | "->") qterm)*
//   qterm     := "A_" ("min"|"max"|"avg") "(" IDENT ")" cmp NUMBER
//              | "C" "(" temporal ")" cmp NUMBER
//              | "!" qterm | "(" quality ")" | temporal
//   temporal  := tfactor (("&&" | "||" | "->" | ".") tfactor)*
//   tfactor   := "true" | "false" | "H^" INT ["!"] IDENT
//              | "[" temporal "]" [ "[" INT "," INT "]" ]
//              | "!" tfactor | "(" temporal ")"
//   cmp       := "!=" | "<" | ">" | "<=" | ">="
//
// Binary operators follow the ladder . over && over || over ->; "." and "->"
// associate to the right, "&&" and "||" to the left. A bracketed group with
// no trailing window is plain grouping. Temporal "a -> b" is rewritten to
// "!a || b" while parsing (the AST has no temporal implication node).
#pragma once

#include <string>

#include "qtwtl/ast.hpp"

namespace qtwtl {

// Throws SyntaxError (with position and expected-token set) or SemanticError
// (well-formed syntax, impossible meaning, e.g. a window with hi < lo).
QualityPtr parse(const std::string& text);

// Same grammar restricted to the temporal layer.
TemporalPtr parse_temporal(const std::string& text);

} // namespace qtwtl
